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

// Closed-form finite-n bounds on per-copy log error rates (nats) in the
// Stein, Hoeffding and Chernoff regimes, the type-based classical and
// quantum lower bounds, and the second-order reference line.

#ifndef QDISC_FINITE_BOUNDS_HPP
#define QDISC_FINITE_BOUNDS_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdisc/divergences.hpp"
#include "qdisc/error.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/ns_mapping.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

enum class Quantity { stein_rate, hoeffding_rate, mixed_rate, alpha_rate, beta_rate };
enum class Side { upper, lower };

inline std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::stein_rate:
      return "stein_rate";
    case Quantity::hoeffding_rate:
      return "hoeffding_rate";
    case Quantity::mixed_rate:
      return "mixed_rate";
    case Quantity::alpha_rate:
      return "alpha_rate";
    case Quantity::beta_rate:
      return "beta_rate";
  }
  return "unknown";
}

inline std::string_view side_name(Side s) { return s == Side::upper ? "upper" : "lower"; }

/// One bound on (1/n) log(error) at a given n.
struct BoundReport {
  std::size_t n = 0;
  Quantity quantity = Quantity::stein_rate;
  Side side = Side::upper;
  double value = kNaN;
  std::string variant;
  std::vector<std::pair<std::string, double>> parameters;
  bool valid = true;
  std::string reason;

  void invalidate(std::string why) {
    if (valid) {
      valid = false;
      reason = std::move(why);
    } else {
      reason += "; " + why;
    }
  }

  double parameter(std::string_view name) const {
    for (const auto& [k, v] : parameters) {
      if (k == name) return v;
    }
    return kNaN;
  }
};

enum class SteinVariant {
  /// cosh c = 2: coefficient 4 sqrt(2) sqrt(log 1/eps) log(eta)
  as_derived,
  /// cosh c = 2 log(1/eps): coefficient 4 sqrt(2) log(1/eps) log(eta)
  as_printed,
};

inline std::string_view variant_name(SteinVariant v) {
  return v == SteinVariant::as_derived ? "as_derived" : "as_printed";
}

namespace detail {

inline void check_n(std::size_t n) {
  if (n == 0) fail(ErrorCode::invalid_input, "n must be >= 1");
}

inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    fail(ErrorCode::out_of_range, "eps must lie in the open interval (0, 1), got " + std::to_string(eps));
  }
}

/// Optimized sqrt(n) correction 2 sqrt(4 cosh(c) log(eta)^2 L) / sqrt(n) and
/// the window condition a*/sqrt(n) <= delta = min(1/2, c / (2 log eta)).
struct SteinCorrection {
  double term;
  double a_star;
  double delta;
  bool in_window;
};

inline SteinCorrection stein_correction(double log_inv, double log_eta, double cosh_c, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double term = 2.0 * std::sqrt(4.0 * cosh_c * log_eta * log_eta * log_inv) / sn;
  if (!(cosh_c >= 1.0) || !(log_eta > 0.0)) return {term, kNaN, kNaN, false};
  const double c = std::acosh(cosh_c);
  const double a_star = std::sqrt(log_inv / (4.0 * cosh_c * log_eta * log_eta));
  const double delta = std::min(0.5, c / (2.0 * log_eta));
  return {term, a_star, delta, a_star / sn <= delta};
}

inline void stein_parameters(BoundReport& r, double eps, double d, double eta_value, double cosh_c,
                             const SteinCorrection& corr) {
  r.parameters = {{"eps", eps},           {"relative_entropy", d}, {"eta", eta_value},
                  {"cosh_c", cosh_c},     {"a_star", corr.a_star}, {"delta", corr.delta},
                  {"correction", corr.term}};
  if (!std::isfinite(eta_value)) r.invalidate("supp rho is not contained in supp sigma (eta = +inf)");
  if (!(cosh_c >= 1.0)) r.invalidate("cosh c = " + std::to_string(cosh_c) + " < 1 has no real c");
  if (!corr.in_window && cosh_c >= 1.0 && std::isfinite(eta_value)) {
    r.invalidate("t = 1 -+ a*/sqrt(n) falls outside the Renyi-bound window of half-width delta");
  }
}

}  // namespace detail

/// (1/n) log beta_{n,eps} <= -D_t + (log(1/eps)/n) t/(1-t) - (1/n) h_2(t)/(1-t), t in [0,1).
inline double stein_upper_generic(const PsiCurve& c, std::size_t n, double eps, double t) {
  detail::check_n(n);
  detail::check_eps(eps);
  if (!(t >= 0.0 && t < 1.0 - 1e-9)) {
    fail(ErrorCode::out_of_range, "stein_upper_generic: t must lie in [0, 1 - 1e-9], got " + std::to_string(t));
  }
  const double nd = static_cast<double>(n);
  return -renyi(c, t) + std::log(1.0 / eps) / nd * t / (1.0 - t) - binary_entropy(t) / (nd * (1.0 - t));
}

/// -D + 2 sqrt(4 cosh(c) log(eta)^2 log(1/eps)) / sqrt(n) - 2 log 2 / n, for any c > 0.
inline BoundReport stein_upper_general_c(const PsiCurve& c, std::size_t n, double eps, double cosh_c) {
  detail::check_n(n);
  detail::check_eps(eps);
  BoundReport r;
  r.n = n;
  r.quantity = Quantity::stein_rate;
  r.side = Side::upper;
  r.variant = "general_c";
  const double d = relative_entropy(c);
  const double e = eta(c);
  const double log_inv = std::log(1.0 / eps);
  const auto corr = detail::stein_correction(log_inv, std::log(e), cosh_c, n);
  r.value = -d + corr.term - 2.0 * std::numbers::ln2 / static_cast<double>(n);
  detail::stein_parameters(r, eps, d, e, cosh_c, corr);
  return r;
}

inline BoundReport stein_upper(const PsiCurve& c, std::size_t n, double eps,
                               SteinVariant variant = SteinVariant::as_derived) {
  detail::check_eps(eps);
  const double cosh_c = variant == SteinVariant::as_derived ? 2.0 : 2.0 * std::log(1.0 / eps);
  BoundReport r = stein_upper_general_c(c, n, eps, cosh_c);
  r.variant = std::string(variant_name(variant));
  return r;
}

/// -D - 2 sqrt(4 cosh(c) log(eta)^2 log(1/(1-eps))) / sqrt(n).
inline BoundReport stein_lower_general_c(const PsiCurve& c, std::size_t n, double eps, double cosh_c) {
  detail::check_n(n);
  detail::check_eps(eps);
  BoundReport r;
  r.n = n;
  r.quantity = Quantity::stein_rate;
  r.side = Side::lower;
  r.variant = "general_c";
  const double d = relative_entropy(c);
  const double e = eta(c);
  const double log_inv = -std::log1p(-eps);
  const auto corr = detail::stein_correction(log_inv, std::log(e), cosh_c, n);
  r.value = -d - corr.term;
  detail::stein_parameters(r, eps, d, e, cosh_c, corr);
  return r;
}

inline BoundReport stein_lower(const PsiCurve& c, std::size_t n, double eps,
                               SteinVariant variant = SteinVariant::as_derived) {
  detail::check_eps(eps);
  const double cosh_c = variant == SteinVariant::as_derived ? 2.0 : -2.0 * std::log1p(-eps);
  BoundReport r = stein_lower_general_c(c, n, eps, cosh_c);
  r.variant = std::string(variant_name(variant));
  return r;
}

/// t_r and H_r, using the bisection root inside the Hoeffding interval.
struct HoeffdingPoint {
  double t_r;
  double h_r;
  HoeffdingRegime regime;
};

inline HoeffdingPoint hoeffding_point(const PsiCurve& c, double r) {
  if (!c.orthogonal_supports() && !c.is_flat()) {
    const HoeffdingInterval iv = hoeffding_interval(c);
    if (r > iv.lower && r < iv.upper) {
      const double t = solve_t_r(c, r);
      const auto m = c.moments(t);
      return {t, t * m.mean - m.psi, HoeffdingRegime::interior};
    }
  }
  const HoeffdingResult h = hoeffding(c, r);
  return {h.t_r, h.value, h.regime};
}

/// (1/n) log beta_{n, e^{-nr}} <= -H_r - (1/n) h_2(t_r) / (1 - t_r), r > -psi(1).
inline BoundReport hoeffding_upper(const PsiCurve& c, std::size_t n, double r) {
  detail::check_n(n);
  BoundReport rep;
  rep.n = n;
  rep.quantity = Quantity::hoeffding_rate;
  rep.side = Side::upper;
  if (c.orthogonal_supports()) {
    rep.value = -kInf;
    rep.parameters = {{"r", r}};
    rep.invalidate("orthogonal supports");
    return rep;
  }
  const double lower = -c.psi(1.0);
  if (!(r > lower)) {
    rep.parameters = {{"r", r}, {"r_min", lower}};
    rep.invalidate("r = " + std::to_string(r) + " must exceed -psi(1) = " + std::to_string(lower));
    return rep;
  }
  const HoeffdingPoint hp = hoeffding_point(c, r);
  rep.value = -hp.h_r - binary_entropy(hp.t_r) / (static_cast<double>(n) * (1.0 - hp.t_r));
  rep.parameters = {{"r", r}, {"t_r", hp.t_r}, {"hoeffding", hp.h_r}};
  if (!std::isfinite(rep.value)) rep.invalidate("t_r reached 1");
  return rep;
}

struct MixedUpper {
  BoundReport mixed;
  BoundReport alpha;
  BoundReport beta;
};

/// (1/n) log e_n(a) <= -phi(a); for the NP test, (1/n) log alpha <= -phi_hat(a)
/// and (1/n) log beta <= -phi(a).
inline MixedUpper mixed_upper(const PsiCurve& c, std::size_t n, double a) {
  detail::check_n(n);
  const Maximum m = phi_max(c, a);
  auto make = [&](Quantity q, double v) {
    BoundReport r;
    r.n = n;
    r.quantity = q;
    r.side = Side::upper;
    r.value = v;
    r.parameters = {{"a", a}, {"phi", m.value}, {"t_opt", m.argmax}};
    return r;
  };
  return {make(Quantity::mixed_rate, -m.value), make(Quantity::alpha_rate, -(m.value - a)),
          make(Quantity::beta_rate, -m.value)};
}

/// Stirling-term slack in the explicit constants c_n, d_n.
inline constexpr double kDefaultStirlingSlack = 1.3;

struct ClassicalLower {
  BoundReport alpha;
  BoundReport beta;
};

/// Lower bounds on (1/n) log alpha~_{n,r} and (1/n) log beta~_{n,r}, the
/// errors of the classical NP test at threshold a_r:
///   -r   - (3(|X|-1)/2) log n / n - c_n / n + 1/(n(12n+1)),
///   -H_r - (3(|X|-1)/2) log n / n - d_n / n + 1/(n(12n+1)),
/// with c_n = (|X|-1)(1 + log p_min^{-2}) + slack, d_n likewise with q_min.
inline ClassicalLower classical_lower(const ClassicalPair& pair, std::size_t n, double r,
                                      double stirling_slack = kDefaultStirlingSlack) {
  detail::check_n(n);
  const PsiCurve c = psi_curve(pair);
  const double k = static_cast<double>(pair.size());
  const double nd = static_cast<double>(n);
  const double cn = (k - 1.0) * (1.0 - 2.0 * std::log(pair.min_p())) + stirling_slack;
  const double dn = (k - 1.0) * (1.0 - 2.0 * std::log(pair.min_q())) + stirling_slack;
  const double common = -1.5 * (k - 1.0) * std::log(nd) / nd + 1.0 / (nd * (12.0 * nd + 1.0));

  ClassicalLower out;
  out.alpha.n = out.beta.n = n;
  out.alpha.quantity = Quantity::alpha_rate;
  out.beta.quantity = Quantity::beta_rate;
  out.alpha.side = out.beta.side = Side::lower;

  const HoeffdingInterval iv = hoeffding_interval(c);
  std::vector<std::string> problems;
  if (!(r > iv.lower && r < iv.upper)) {
    problems.push_back("r = " + std::to_string(r) + " outside (-psi(1), -psi(0)-psi'(0)) = (" +
                       std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + ")");
  }
  if (c.is_flat()) problems.push_back("psi is affine; t_r undefined");
  if (n < pair.size() * (pair.size() - 1)) {
    problems.push_back("n = " + std::to_string(n) + " below |X|(|X|-1) = " +
                       std::to_string(pair.size() * (pair.size() - 1)));
  }
  double h = kNaN;
  double t = kNaN;
  double ar = kNaN;
  if (problems.empty() || (r > iv.lower && r < iv.upper && !c.is_flat())) {
    t = solve_t_r(c, r);
    const auto m = c.moments(t);
    h = t * m.mean - m.psi;
    ar = m.mean;
  }
  out.alpha.value = -r + common - cn / nd;
  out.beta.value = -h + common - dn / nd;
  out.alpha.parameters = {{"r", r}, {"a_r", ar}, {"t_r", t}, {"c_n", cn}, {"alphabet", k}};
  out.beta.parameters = {{"r", r}, {"a_r", ar}, {"t_r", t}, {"d_n", dn}, {"hoeffding", h}, {"alphabet", k}};
  for (const auto& p : problems) {
    out.alpha.invalidate(p);
    out.beta.invalidate(p);
  }
  return out;
}

/// Rank of the span of supp rho and supp sigma.
inline std::size_t joint_support_dimension(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto ev = eigenvalues(rho.matrix() + sigma.matrix());
  const double cut = kSupportCutoff * std::max(1.0, ev.front());
  std::size_t d = 0;
  for (double x : ev) {
    if (x > cut) ++d;
  }
  return d;
}

namespace detail {

inline BoundReport quantum_lower_common(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                                        double exponent, double stirling_slack, double& constant,
                                        double& d_out) {
  const ClassicalPair pair = build_classical_pair(rho, sigma);
  const double d = static_cast<double>(joint_support_dimension(rho, sigma));
  const double d2 = d * d;
  const double nd = static_cast<double>(n);
  constant = (d2 - 1.0) * (1.0 - 2.0 * std::log(std::min(pair.min_p(), pair.min_q()))) + stirling_slack;
  d_out = d;
  BoundReport rep;
  rep.n = n;
  rep.quantity = Quantity::mixed_rate;
  rep.side = Side::lower;
  rep.value = -exponent - 1.5 * (d2 - 1.0) * std::log(nd) / nd - constant / nd + 1.0 / (nd * (12.0 * nd + 1.0));
  if (nd < d2 * (d2 - 1.0)) {
    rep.invalidate("n = " + std::to_string(n) + " below d^2(d^2-1) = " + std::to_string(d2 * (d2 - 1.0)));
  }
  return rep;
}

}  // namespace detail

/// (1/n) log e_n(a_r) >= -H_r - (3(d^2-1)/2) log n / n - c/n + 1/(n(12n+1)),
/// c = (d^2-1)(1 - 2 log min(p_min, q_min)) + slack over the NS pair.
inline BoundReport quantum_mixed_lower(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                                       double r, double stirling_slack = kDefaultStirlingSlack) {
  detail::check_n(n);
  const PsiCurve c = PsiCurve::from_states(rho, sigma);
  if (c.orthogonal_supports()) fail(ErrorCode::degenerate, "quantum_mixed_lower: orthogonal supports");
  const HoeffdingInterval iv = hoeffding_interval(c);
  const bool inside = r > iv.lower && r < iv.upper && !c.is_flat();
  double h = kNaN;
  double ar = kNaN;
  double t = kNaN;
  if (inside) {
    t = solve_t_r(c, r);
    const auto m = c.moments(t);
    h = t * m.mean - m.psi;
    ar = m.mean;
  }
  double constant = 0.0;
  double d = 0.0;
  BoundReport rep = detail::quantum_lower_common(rho, sigma, n, h, stirling_slack, constant, d);
  rep.variant = "hoeffding";
  rep.parameters = {{"r", r}, {"a_r", ar}, {"t_r", t}, {"hoeffding", h}, {"c", constant}, {"d", d}};
  if (!inside) {
    rep.invalidate("r = " + std::to_string(r) + " outside (-psi(1), -psi(0)-psi'(0)) = (" +
                   std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + ")");
  }
  return rep;
}

/// Chernoff specialization: (1/n) log e_n(0) >= -C - ..., available when
/// psi' has a root in (0, 1).
inline BoundReport quantum_chernoff_lower(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                                          double stirling_slack = kDefaultStirlingSlack) {
  detail::check_n(n);
  const PsiCurve c = PsiCurve::from_states(rho, sigma);
  if (c.orthogonal_supports()) fail(ErrorCode::degenerate, "quantum_chernoff_lower: orthogonal supports");
  const bool has_root = c.psi_prime(0.0) < 0.0 && c.psi_prime(1.0) > 0.0;
  double t = kNaN;
  double chern = kNaN;
  if (has_root) {
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (c.psi_prime(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    t = 0.5 * (lo + hi);
    chern = -c.psi(t);
  }
  double constant = 0.0;
  double d = 0.0;
  BoundReport rep = detail::quantum_lower_common(rho, sigma, n, chern, stirling_slack, constant, d);
  rep.variant = "chernoff";
  rep.parameters = {{"t_root", t}, {"chernoff", chern}, {"c", constant}, {"d", d}};
  if (!has_root) rep.invalidate("psi' has no root in (0, 1)");
  return rep;
}

/// Asymptotic reference -D + sqrt(V) Phi^{-1}(eps) / sqrt(n); not a bound.
inline BoundReport second_order_reference(const PsiCurve& c, std::size_t n, double eps) {
  detail::check_n(n);
  detail::check_eps(eps);
  BoundReport rep;
  rep.n = n;
  rep.quantity = Quantity::stein_rate;
  rep.side = Side::lower;
  rep.variant = "asymptotic_reference";
  if (c.orthogonal_supports() || !c.support_contained()) {
    rep.value = -kInf;
    rep.invalidate("supp rho is not contained in supp sigma");
    return rep;
  }
  const double d = relative_entropy(c);
  const double v = relative_entropy_variance(c);
  rep.value = -d + std::sqrt(std::max(0.0, v)) * normal_quantile(eps) / std::sqrt(static_cast<double>(n));
  rep.parameters = {{"eps", eps}, {"relative_entropy", d}, {"variance", v}};
  return rep;
}

}  // namespace qdisc

#endif  // QDISC_FINITE_BOUNDS_HPP
