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

#ifndef QDISC_ERROR_HPP
#define QDISC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdisc {

enum class ErrorCode {
  invalid_input,
  out_of_range,
  degenerate,
  resource_limit,
  no_convergence,
  contract_violation,
};

inline std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
      return "invalid_input";
    case ErrorCode::out_of_range:
      return "out_of_range";
    case ErrorCode::degenerate:
      return "degenerate";
    case ErrorCode::resource_limit:
      return "resource_limit";
    case ErrorCode::no_convergence:
      return "no_convergence";
    case ErrorCode::contract_violation:
      return "contract_violation";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qdisc

#endif  // QDISC_ERROR_HPP
