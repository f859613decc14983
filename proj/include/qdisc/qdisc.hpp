// Copyright 2026 The qdisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDISC_QDISC_HPP
#define QDISC_QDISC_HPP

#include "qdisc/classical_binary.hpp"
#include "qdisc/divergences.hpp"
#include "qdisc/error.hpp"
#include "qdisc/exact_oracles.hpp"
#include "qdisc/finite_bounds.hpp"
#include "qdisc/format.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/ns_mapping.hpp"
#include "qdisc/numeric.hpp"

#endif  // QDISC_QDISC_HPP
