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
// Computes the divergence profile of two qubit states, then compares the
// finite-n Stein bounds with the exact optimal type-II error exponent.

#include <cmath>
#include <cstdio>
#include <vector>

#include "qdisc/qdisc.hpp"

int main() {
  using namespace qdisc;
  const DensityMatrix rho = DensityMatrix::diagonal(std::vector<double>{0.9, 0.1});
  const Complex plus[2] = {Complex(std::sqrt(0.5), 0.0), Complex(std::sqrt(0.5), 0.0)};
  const DensityMatrix pure = DensityMatrix::pure(plus);
  const DensityMatrix sigma = DensityMatrix::from_hermitian(
      HermitianMatrix::combination(0.7, pure.matrix(), 0.3, DensityMatrix::diagonal(std::vector<double>{0.5, 0.5}).matrix()));

  const PsiCurve c = PsiCurve::from_states(rho, sigma);
  std::printf("D(rho||sigma)   = %.12f nats\n", relative_entropy(c));
  std::printf("V(rho||sigma)   = %.12f\n", relative_entropy_variance(c));
  const ChernoffResult ch = chernoff_distance(c);
  std::printf("Chernoff C      = %.12f at t = %.6f\n", ch.value, ch.argmin_t);

  const double eps = 0.1;
  std::printf("\n%3s %14s %14s %14s\n", "n", "stein_lower", "exact", "stein_upper");
  for (std::size_t n = 1; n <= 10; ++n) {
    const double exact = std::log(beta_eps_exact(rho, sigma, n, eps)) / static_cast<double>(n);
    std::printf("%3zu %14.8f %14.8f %14.8f\n", n, stein_lower(c, n, eps).value, exact, stein_upper(c, n, eps).value);
  }
  return 0;
}
