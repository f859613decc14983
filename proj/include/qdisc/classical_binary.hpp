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

// Two binary distributions (p, 1-p) and (q, 1-q) with equal priors: exact
// mixed error, its crossover point, regularized incomplete beta function and
// the floor-free envelope of the error rate.

#ifndef QDISC_CLASSICAL_BINARY_HPP
#define QDISC_CLASSICAL_BINARY_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qdisc/divergences.hpp"
#include "qdisc/error.hpp"
#include "qdisc/format.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

/// Canonical order p <= q. A pair with p > q is stored as (1-p, 1-q), which
/// relabels the two outcomes and leaves every error probability unchanged.
struct BinaryPair {
  double p;
  double q;
  bool relabelled;

  static BinaryPair make(double p, double q) {
    if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0)) {
      fail(ErrorCode::invalid_input, "binary pair: p and q must lie in (0, 1), got p = " + std::to_string(p) +
                                         ", q = " + std::to_string(q));
    }
    if (p > q) return {1.0 - p, 1.0 - q, true};
    return {p, q, false};
  }

  PsiCurve psi_curve() const {
    const double pp[2] = {p, 1.0 - p};
    const double qq[2] = {q, 1.0 - q};
    return PsiCurve::from_measures(pp, qq);
  }
};

/// log e_n(a), e_n(a) = (1/2) sum_k C(n,k) min(e^{-na} p^k (1-p)^{n-k}, q^k (1-q)^{n-k}).
inline double log_en_exact(const BinaryPair& bp, std::size_t n, double a) {
  if (n == 0) fail(ErrorCode::invalid_input, "en_exact: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double lp = std::log(bp.p);
  const double lp1 = std::log1p(-bp.p);
  const double lq = std::log(bp.q);
  const double lq1 = std::log1p(-bp.q);
  LogSumExp acc;
  for (std::size_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double first = -nd * a + kd * lp + (nd - kd) * lp1;
    const double second = kd * lq + (nd - kd) * lq1;
    acc.add(log_binomial(nd, kd) + std::min(first, second));
  }
  return acc.value() - std::numbers::ln2;
}

inline double en_exact(const BinaryPair& bp, std::size_t n, double a) {
  return std::exp(log_en_exact(bp, n, a));
}

/// s(a) = (log((1-p)/(1-q)) - a) / log(q(1-p) / (p(1-q))).
inline double crossover_s(const BinaryPair& bp, double a) {
  if (bp.p == bp.q) fail(ErrorCode::degenerate, "crossover_s: p = q has no crossover point");
  const double num = std::log1p(-bp.p) - std::log1p(-bp.q) - a;
  const double den = std::log(bp.q) + std::log1p(-bp.p) - std::log(bp.p) - std::log1p(-bp.q);
  return num / den;
}

namespace detail {

/// Continued fraction for I_z(k, l) (modified Lentz).
inline double inc_beta_cf(double z, double k, double l) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxTerms = 300;
  const double qab = k + l;
  const double qap = k + 1.0;
  const double qam = k - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * z / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double md = static_cast<double>(m);
    const double m2 = 2.0 * md;
    double aa = md * (l - md) * z / ((qam + m2) * (k + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(k + md) * (qab + md) * z / ((k + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  fail(ErrorCode::no_convergence, "incomplete beta continued fraction did not converge in 300 terms (z = " +
                                      std::to_string(z) + ", k = " + std::to_string(k) +
                                      ", l = " + std::to_string(l) + ")");
}

/// log of z^k (1-z)^l / (k B(k, l)) * cf, i.e. log I_z(k, l) on the direct branch.
inline double inc_beta_direct_log(double z, double k, double l) {
  const double log_beta = std::lgamma(k) + std::lgamma(l) - std::lgamma(k + l);
  return k * std::log(z) + l * std::log1p(-z) - log_beta - std::log(k) +
         std::log(inc_beta_cf(z, k, l));
}

inline void check_inc_beta_args(double z, double k, double l) {
  if (!(z >= 0.0 && z <= 1.0)) {
    fail(ErrorCode::out_of_range, "inc_beta_reg: z must lie in [0, 1], got " + std::to_string(z));
  }
  if (!(k > 0.0 && l > 0.0)) {
    fail(ErrorCode::out_of_range, "inc_beta_reg: k and l must be > 0, got k = " + std::to_string(k) +
                                      ", l = " + std::to_string(l));
  }
}

}  // namespace detail

/// log I_z(k, l).
inline double inc_beta_reg_log(double z, double k, double l) {
  detail::check_inc_beta_args(z, k, l);
  if (z == 0.0) return -kInf;
  if (z == 1.0) return 0.0;
  if (z < (k + 1.0) / (k + l + 2.0)) return detail::inc_beta_direct_log(z, k, l);
  return std::log1p(-std::exp(detail::inc_beta_direct_log(1.0 - z, l, k)));
}

/// Regularized incomplete beta function I_z(k, l).
inline double inc_beta_reg(double z, double k, double l) {
  detail::check_inc_beta_args(z, k, l);
  if (z == 0.0) return 0.0;
  if (z == 1.0) return 1.0;
  if (z < (k + 1.0) / (k + l + 2.0)) return std::exp(detail::inc_beta_direct_log(z, k, l));
  return 1.0 - std::exp(detail::inc_beta_direct_log(1.0 - z, l, k));
}

struct EnBounds {
  double lower;
  double upper;
  double log_lower;
  double log_upper;
  double s;
};

/// lower = (I_{1-q}(n(1-s)+1, ns) + e^{-na} I_p(ns+1, n(1-s))) / 2,
/// upper = (I_{1-q}(n(1-s), ns+1) + e^{-na} I_p(ns, n(1-s)+1)) / 2.
inline EnBounds en_bounds(const BinaryPair& bp, std::size_t n, double a) {
  if (n == 0) fail(ErrorCode::invalid_input, "en_bounds: n must be >= 1");
  const double s = crossover_s(bp, a);
  if (!(s > 0.0 && s < 1.0)) {
    fail(ErrorCode::out_of_range, "en_bounds: crossover s(a) = " + std::to_string(s) +
                                      " outside (0, 1); a is outside the admissible window");
  }
  const double nd = static_cast<double>(n);
  const double ns = nd * s;
  const double nt = nd * (1.0 - s);
  const double w = -nd * a;
  const double log_lower =
      log_add(inc_beta_reg_log(1.0 - bp.q, nt + 1.0, ns), w + inc_beta_reg_log(bp.p, ns + 1.0, nt)) -
      std::numbers::ln2;
  const double log_upper =
      log_add(inc_beta_reg_log(1.0 - bp.q, nt, ns + 1.0), w + inc_beta_reg_log(bp.p, ns, nt + 1.0)) -
      std::numbers::ln2;
  return {std::exp(log_lower), std::exp(log_upper), log_lower, log_upper, s};
}

/// Checks that x -> I_z(n - x, x) is nondecreasing on `grid` equispaced
/// interior points of (0, n), within 1e-12.
inline bool incbeta_monotonicity_check(double z, double n, int grid) {
  if (!(n > 0.0) || grid < 1) fail(ErrorCode::invalid_input, "incbeta_monotonicity_check: need n > 0, grid >= 1");
  double prev = -kInf;
  for (int i = 1; i <= grid; ++i) {
    const double x = n * static_cast<double>(i) / static_cast<double>(grid + 1);
    const double v = inc_beta_reg(z, n - x, x);
    if (v < prev - 1e-12) return false;
    prev = std::max(prev, v);
  }
  return true;
}

struct RateRow {
  std::size_t n;
  /// -log(e_n) / n
  double rate_exact;
  /// -log(upper envelope) / n
  double rate_lower;
  /// -log(lower envelope) / n
  double rate_upper;
  double chernoff;
};

inline std::vector<RateRow> rate_curve(const BinaryPair& bp, double a, std::size_t n_max) {
  if (n_max < 2) fail(ErrorCode::invalid_input, "rate_curve: n_max must be >= 2");
  const double chern = chernoff_distance(bp.psi_curve()).value;
  const bool envelope = bp.p != bp.q;
  std::vector<RateRow> rows;
  rows.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    RateRow row{n, -log_en_exact(bp, n, a) / nd, kNaN, kNaN, chern};
    if (envelope) {
      const double s = crossover_s(bp, a);
      if (s > 0.0 && s < 1.0) {
        const EnBounds b = en_bounds(bp, n, a);
        row.rate_lower = -b.log_upper / nd;
        row.rate_upper = -b.log_lower / nd;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string rate_curve_csv(const std::vector<RateRow>& rows) {
  std::string out = "n,rate_exact,rate_lower,rate_upper,chernoff\n";
  for (const RateRow& r : rows) {
    out += std::to_string(r.n);
    for (double v : {r.rate_exact, r.rate_lower, r.rate_upper, r.chernoff}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qdisc

#endif  // QDISC_CLASSICAL_BINARY_HPP
