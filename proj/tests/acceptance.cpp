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
// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qdisc/qdisc.hpp"
#include "support/oracles.hpp"

using namespace qdisc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct StatePair {
  oracle::CMatrix rho_raw;
  oracle::CMatrix sigma_raw;
  DensityMatrix rho;
  DensityMatrix sigma;
};

DensityMatrix as_state(const oracle::CMatrix& m) { return DensityMatrix::from_hermitian(oracle::from_eigen(m)); }

/// Ten full-rank qubit pairs from a fixed seed.
std::vector<StatePair> qubit_pairs() {
  std::mt19937_64 rng(20260601);
  std::vector<StatePair> out;
  while (out.size() < 10) {
    const oracle::CMatrix r = oracle::random_state(rng, 2);
    const oracle::CMatrix s = oracle::random_state(rng, 2);
    if (oracle::eigenvalues(r).minCoeff() < 1e-3 || oracle::eigenvalues(s).minCoeff() < 1e-3) continue;
    out.push_back({r, s, as_state(r), as_state(s)});
  }
  return out;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome criterion_1() {
  const BinaryPair bp = BinaryPair::make(0.001, 0.5);
  const auto rows = rate_curve(bp, 0.0, 300);
  int violations = 0;
  for (const auto& r : rows) {
    if (!(r.rate_lower <= r.rate_exact && r.rate_exact <= r.rate_upper)) ++violations;
    if (!(r.rate_exact > r.chernoff)) ++violations;
  }
  const double gap = rows.back().rate_exact - rows.back().chernoff;
  return {violations == 0 && gap < 0.05,
          fmt("%.0f violations over n=1..300, rate(300) - C = %.6f", violations, gap)};
}

Outcome criterion_2() {
  int violations = 0;
  int checks = 0;
  for (const auto& p : qubit_pairs()) {
    const PsiCurve c = PsiCurve::from_states(p.rho, p.sigma);
    for (std::size_t n = 1; n <= 8; ++n) {
      const TensorPowers tp(p.rho, p.sigma, n);
      for (double eps : {0.1, 0.3, 0.5}) {
        const double exact = std::log(beta_eps_exact(tp, eps)) / static_cast<double>(n);
        const double lo = stein_lower(c, n, eps, SteinVariant::as_derived).value;
        const double up = stein_upper(c, n, eps, SteinVariant::as_derived).value;
        ++checks;
        if (!(lo <= exact && exact <= up)) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f (pair, n, eps) cases", violations, checks)};
}

Outcome criterion_3() {
  int violations = 0;
  int checks = 0;
  double worst = -kInf;
  for (const auto& p : qubit_pairs()) {
    const PsiCurve c = PsiCurve::from_states(p.rho, p.sigma);
    const ClassicalPair pair = build_classical_pair(p.rho, p.sigma);
    const double lo = c.psi_prime(0.0);
    const double hi = c.psi_prime(1.0);
    for (std::size_t n = 1; n <= 8; ++n) {
      const TensorPowers tp(p.rho, p.sigma, n);
      for (int i = 1; i <= 11; ++i) {
        const double a = lo + (hi - lo) * i / 12.0;
        const double exact = quantum_mixed_error_exact(tp, a);
        const double lower = classical_exact_errors(pair, n, a).e / 2.0;
        const double upper = std::exp(-static_cast<double>(n) * phi(c, a));
        ++checks;
        worst = std::max({worst, lower - exact, exact - upper});
        if (lower > exact + 1e-9 || exact > upper + 1e-9) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f cases, largest excess %.3g", violations, checks, worst)};
}

Outcome criterion_4() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  int violations = 0;
  int checks = 0;
  for (int k = 0; k < 6; ++k) {
    const double p = u(rng);
    const double q = u(rng);
    if (std::abs(p - q) < 0.05) continue;
    const ClassicalPair pair = ClassicalPair::from_measures({p, 1 - p}, {q, 1 - q});
    const auto iv = hoeffding_interval(psi_curve(pair));
    for (double frac : {0.1, 0.5, 0.9}) {
      const double r = iv.lower + frac * (iv.upper - iv.lower);
      for (std::size_t n = 2; n <= 200; ++n) {
        const ClassicalLower lb = classical_lower(pair, n, r);
        if (!lb.alpha.valid || !lb.beta.valid) {
          ++violations;
          continue;
        }
        const auto e = classical_exact_errors(pair, n, lb.alpha.parameter("a_r"));
        const double nd = static_cast<double>(n);
        checks += 2;
        if (e.log_alpha / nd < lb.alpha.value) ++violations;
        if (e.log_beta / nd < lb.beta.value) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f bound evaluations", violations, checks)};
}

Outcome criterion_5() {
  std::mt19937_64 rng(5);
  int failures = 0;
  double psi_err = 0.0;
  double min_second = kInf;
  double limit_err = 0.0;
  double var_err = 0.0;
  for (int k = 0; k < 10; ++k) {
    const std::size_t dim = k < 6 ? 2 : 3;
    const oracle::CMatrix r = oracle::random_state(rng, dim);
    const oracle::CMatrix s = oracle::random_state(rng, dim);
    const DensityMatrix rho = as_state(r);
    const DensityMatrix sigma = as_state(s);
    const ClassicalPair pair = build_classical_pair(rho, sigma);
    const PsiCurve c = psi_curve(pair);
    for (int i = 0; i <= 30; ++i) {
      const double t = -1.0 + 0.1 * i;
      psi_err = std::max(psi_err, std::abs(c.psi(t) - oracle::psi(r, s, t)));
      min_second = std::min(min_second, c.psi_second(t));
    }
    double prev = renyi(c, 0.0);
    for (int i = 1; i <= 199; ++i) {
      const double t = i / 100.0;
      if (i == 100) continue;
      const double v = renyi(c, t);
      if (v < prev - 1e-12) ++failures;
      prev = v;
    }
    const double d = relative_entropy(c);
    const double h = 1e-4;
    limit_err = std::max(limit_err, std::abs(0.5 * (renyi(c, 1 - h) + renyi(c, 1 + h)) - d));
    double m2 = 0.0;
    for (std::size_t x = 0; x < pair.size(); ++x) m2 += pair.p[x] * std::pow(std::log(pair.p[x] / pair.q[x]), 2);
    var_err = std::max(var_err, std::abs(relative_entropy_variance(c) - (m2 - d * d)));
    const double le = std::log(eta(c));
    for (double cc : {1.0, 2.0}) {
      const double delta = std::min(0.5, cc / (2.0 * le));
      const double slope = 4.0 * std::cosh(cc) * le * le;
      for (int i = 1; i <= 50; ++i) {
        const double w = delta * i / 51.0;
        if (renyi(c, 1 - w) < d - slope * w - 1e-12) ++failures;
        if (renyi(c, 1 + w) > d + slope * w + 1e-12) ++failures;
      }
    }
  }
  const bool pass =
      failures == 0 && psi_err <= 1e-9 && min_second >= -1e-12 && limit_err <= 1e-6 && var_err <= 1e-9;
  return {pass, fmt("max |psi_pq - psi_rs| = %.2g, min psi'' = %.2g, limit err = %.2g", psi_err, min_second,
                    limit_err) +
                    fmt(", V err = %.2g, %.0f monotonicity/window failures", var_err, failures)};
}

Outcome criterion_6() {
  double cdf_err = 0.0;
  for (std::size_t n = 1; n <= 30; ++n) {
    for (std::size_t k0 = 0; k0 < n; ++k0) {
      for (int i = 1; i <= 9; ++i) {
        const double p = i / 10.0;
        cdf_err = std::max(cdf_err, std::abs(oracle::binomial_cdf(n, k0, p) - inc_beta_reg(1 - p, n - k0, k0 + 1.0)));
      }
    }
  }
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> zd(0.01, 0.99);
  std::uniform_real_distribution<double> nd(2.0, 60.0);
  int mono_fail = 0;
  for (int i = 0; i < 20; ++i) {
    if (!incbeta_monotonicity_check(zd(rng), nd(rng), 99)) ++mono_fail;
  }
  std::uniform_real_distribution<double> kd(1.0, 30.0);
  double quad_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double z = zd(rng);
    const double k = kd(rng);
    const double l = kd(rng);
    quad_err = std::max(quad_err, std::abs(inc_beta_reg(z, k, l) - oracle::inc_beta_quadrature(z, k, l)));
  }
  return {cdf_err <= 1e-11 && mono_fail == 0 && quad_err <= 1e-9,
          fmt("CDF identity err %.2g, monotonicity failures %.0f, quadrature err %.2g", cdf_err, mono_fail,
              quad_err)};
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  int violations = 0;
  int checks = 0;
  double margin = kInf;
  for (const auto& p : qubit_pairs()) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const oracle::CMatrix rn = oracle::power(p.rho_raw, n);
      const oracle::CMatrix sn = oracle::power(p.sigma_raw, n);
      const TensorPowers tp(p.rho, p.sigma, n);
      const double a = 0.0;
      const double best = quantum_mixed_error_exact(tp, a);
      for (int k = 0; k < 50; ++k) {
        const auto [alpha, beta] = oracle::test_errors(rn, sn, oracle::random_contraction(rng, rn.rows()));
        const double value = alpha + beta;
        ++checks;
        margin = std::min(margin, value - best);
        if (value < best - 1e-10) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%.0f violations in %.0f random tests, smallest margin %.3g", violations, checks,
                               margin)};
}

Outcome criterion_8() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ed(0.02, 0.9);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t letters = k % 2 == 0 ? 2 : 3;
    const std::size_t n = letters == 2 ? 1 + k / 2 : 1 + (k / 2) % 6;
    const auto p = oracle::random_simplex(rng, letters);
    const auto q = oracle::random_simplex(rng, letters);
    const double eps = ed(rng);
    const double quantum = beta_eps_exact(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q), n, eps);
    const double classical = classical_beta_eps_exact(ClassicalPair::from_measures(p, q), n, eps);
    worst = std::max(worst, std::abs(quantum - classical));
  }
  return {worst <= 1e-9, fmt("max |beta_quantum - beta_classical| = %.3g over 20 cases", worst)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
    double budget_s;
  };
  const Entry entries[] = {
      {1, "binary rate sandwich (p=0.001, q=0.5)", criterion_1, 5.0},
      {2, "Stein sandwich against beta_eps_exact", criterion_2, 60.0},
      {3, "mixed-error chain", criterion_3, 0.0},
      {4, "classical lower bounds", criterion_4, 0.0},
      {5, "divergence identities", criterion_5, 0.0},
      {6, "incomplete beta engine", criterion_6, 0.0},
      {7, "Neyman-Pearson optimality", criterion_7, 0.0},
      {8, "quantum/classical beta_eps agreement", criterion_8, 0.0},
  };
  int failed = 0;
  for (const auto& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    if (e.budget_s > 0.0 && secs >= e.budget_s) {
      pass = false;
      o.detail += fmt("; over the %.0f s budget", e.budget_s);
    }
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", e.id, e.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed;
}
