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

// Divergence-type quantities of a pair of positive semidefinite operators,
// all expressed through psi(t) = log Tr A^t B^{1-t}. Natural logarithms.

#ifndef QDISC_DIVERGENCES_HPP
#define QDISC_DIVERGENCES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdisc/error.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

/// Overlaps Tr P_i Q_j at or below this are treated as zero.
inline constexpr double kOverlapCutoff = 1e-12;

/// One element (i, j) of the joint support with a_i, b_j and w = Tr P_i Q_j.
struct OverlapTerm {
  std::size_t i;
  std::size_t j;
  double a;
  double b;
  double weight;
};

struct OverlapTable {
  std::vector<OverlapTerm> terms;
  /// supp A <= supp B
  bool support_contained = true;
  double trace_a = 0.0;
  double trace_b = 0.0;
};

namespace detail {

/// Indices of strictly positive eigenvalues (above the support cutoff).
inline std::vector<std::size_t> positive_indices(const SpectralDecomposition& d, const char* name) {
  const double top = d.max_eigenvalue();
  if (d.min_eigenvalue() < -kSupportCutoff * std::max(1.0, top)) {
    fail(ErrorCode::invalid_input, std::string(name) + " has negative eigenvalue " +
                                       std::to_string(d.min_eigenvalue()) +
                                       "; a positive semidefinite operator is required");
  }
  std::vector<std::size_t> idx;
  if (top <= 0.0) return idx;
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
    if (d.eigenvalues[k] > kSupportCutoff * top) idx.push_back(k);
  }
  return idx;
}

}  // namespace detail

/// All pairs (i, j) with Tr P_i Q_j above kOverlapCutoff, i and j ranging
/// over the strictly positive eigenvalues of A and B.
inline OverlapTable overlap_table(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  if (a.dim != b.dim) {
    fail(ErrorCode::invalid_input, "operators have different dimensions: " +
                                       std::to_string(a.dim) + " vs " + std::to_string(b.dim));
  }
  const auto ia = detail::positive_indices(a, "first operator");
  const auto ib = detail::positive_indices(b, "second operator");
  OverlapTable table;
  CompensatedSum ta;
  CompensatedSum tb;
  for (std::size_t j : ib) tb.add(b.eigenvalues[j] * b.projectors[j].trace());
  for (std::size_t i : ia) {
    ta.add(a.eigenvalues[i] * a.projectors[i].trace());
    CompensatedSum covered;
    for (std::size_t j : ib) {
      const double w = trace_product(a.projectors[i], b.projectors[j]);
      if (w > kOverlapCutoff) {
        table.terms.push_back({i, j, a.eigenvalues[i], b.eigenvalues[j], w});
        covered.add(w);
      }
    }
    if (covered.value() < a.projectors[i].trace() - 1e-9) table.support_contained = false;
  }
  table.trace_a = ta.value();
  table.trace_b = tb.value();
  return table;
}

/// psi(t) = log sum_k exp(t log p_k + (1-t) log q_k) over the joint support,
/// with derivatives given by the moments of f = log p - log q under the
/// tilted measure mu^t.
class PsiCurve {
 public:
  struct Moments {
    double psi;
    double mean;
    double variance;
  };

  static PsiCurve from_table(const OverlapTable& table) {
    PsiCurve c;
    c.support_contained_ = table.support_contained;
    c.trace_a_ = table.trace_a;
    c.trace_b_ = table.trace_b;
    for (const auto& t : table.terms) {
      c.log_p_.push_back(std::log(t.a) + std::log(t.weight));
      c.log_q_.push_back(std::log(t.b) + std::log(t.weight));
      c.log_ratio_.push_back(std::log(t.a) - std::log(t.b));
    }
    return c;
  }

  static PsiCurve from_decompositions(const SpectralDecomposition& a, const SpectralDecomposition& b) {
    return from_table(overlap_table(a, b));
  }

  static PsiCurve from_states(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return from_decompositions(eigh(rho.matrix()), eigh(sigma.matrix()));
  }

  /// Two nonnegative measures on a common finite set. Points where only p
  /// vanishes carry no weight; points where only q vanishes break support
  /// containment.
  static PsiCurve from_measures(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) {
      fail(ErrorCode::invalid_input, "measures must be nonempty and of equal length");
    }
    PsiCurve c;
    CompensatedSum ta;
    CompensatedSum tb;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!(p[k] >= 0.0) || !(q[k] >= 0.0) || !std::isfinite(p[k]) || !std::isfinite(q[k])) {
        fail(ErrorCode::invalid_input, "measure entries must be finite and nonnegative");
      }
      ta.add(p[k]);
      tb.add(q[k]);
      if (p[k] > 0.0 && q[k] == 0.0) c.support_contained_ = false;
      if (p[k] > 0.0 && q[k] > 0.0) {
        c.log_p_.push_back(std::log(p[k]));
        c.log_q_.push_back(std::log(q[k]));
        c.log_ratio_.push_back(std::log(p[k]) - std::log(q[k]));
      }
    }
    c.trace_a_ = ta.value();
    c.trace_b_ = tb.value();
    return c;
  }

  std::size_t size() const { return log_p_.size(); }
  bool orthogonal_supports() const { return log_p_.empty(); }
  bool support_contained() const { return support_contained_; }
  double trace_a() const { return trace_a_; }
  double trace_b() const { return trace_b_; }
  std::span<const double> log_p() const { return log_p_; }
  std::span<const double> log_q() const { return log_q_; }
  std::span<const double> log_ratio() const { return log_ratio_; }

  /// psi is affine (f constant on the joint support).
  bool is_flat() const {
    if (log_ratio_.empty()) return true;
    const auto [lo, hi] = std::minmax_element(log_ratio_.begin(), log_ratio_.end());
    return *hi - *lo <= 1e-14 * std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
  }

  double psi(double t) const {
    LogSumExp acc;
    for (std::size_t k = 0; k < log_p_.size(); ++k) acc.add(log_q_[k] + t * log_ratio_[k]);
    return acc.value();
  }

  Moments moments(double t) const {
    require_support("psi derivatives");
    const double z = psi(t);
    CompensatedSum mean;
    for (std::size_t k = 0; k < log_p_.size(); ++k) {
      mean.add(std::exp(log_q_[k] + t * log_ratio_[k] - z) * log_ratio_[k]);
    }
    const double m = mean.value();
    CompensatedSum var;
    for (std::size_t k = 0; k < log_p_.size(); ++k) {
      const double d = log_ratio_[k] - m;
      var.add(std::exp(log_q_[k] + t * log_ratio_[k] - z) * d * d);
    }
    return {z, m, var.value()};
  }

  double psi_prime(double t) const { return moments(t).mean; }
  double psi_second(double t) const { return moments(t).variance; }

 private:
  void require_support(const char* what) const {
    if (orthogonal_supports()) {
      fail(ErrorCode::degenerate, std::string(what) + ": orthogonal supports (empty joint support)");
    }
  }

  std::vector<double> log_p_;
  std::vector<double> log_q_;
  std::vector<double> log_ratio_;
  bool support_contained_ = true;
  double trace_a_ = 0.0;
  double trace_b_ = 0.0;
};

/// D_t = psi(t) / (t - 1), t >= 0, t != 1.
inline double renyi(const PsiCurve& c, double t) {
  if (t == 1.0) {
    fail(ErrorCode::contract_violation, "renyi: t = 1 is the relative entropy; use relative_entropy");
  }
  if (!(t >= 0.0)) fail(ErrorCode::out_of_range, "renyi: t must be >= 0, got " + std::to_string(t));
  if (c.orthogonal_supports()) return kInf;
  if (t > 1.0 && !c.support_contained()) return kInf;
  return c.psi(t) / (t - 1.0);
}

/// D(A||B) = sum_k p_k (log p_k - log q_k); +inf unless supp A <= supp B.
inline double relative_entropy(const PsiCurve& c) {
  if (c.orthogonal_supports() || !c.support_contained()) return kInf;
  CompensatedSum s;
  const auto lp = c.log_p();
  const auto f = c.log_ratio();
  for (std::size_t k = 0; k < lp.size(); ++k) s.add(std::exp(lp[k]) * f[k]);
  return s.value();
}

inline double relative_entropy(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  return relative_entropy(PsiCurve::from_decompositions(a, b));
}

struct ChernoffResult {
  double value;
  double argmin_t;
};

/// C = -min_{t in [0,1]} psi(t); leftmost minimizer on flat stretches.
inline ChernoffResult chernoff_distance(const PsiCurve& c) {
  if (c.orthogonal_supports()) return {kInf, kNaN};
  const Maximum m = grid_golden_max([&](double t) { return -c.psi(t); }, 0.0, 1.0);
  return {m.value + 0.0, m.argmax};
}

enum class HoeffdingRegime {
  /// t_r in (0, 1)
  interior,
  /// r >= -psi(0) - psi'(0): t_r = 0, H_r = -psi(0)
  endpoint,
  /// r = -psi(1): supremum approached as t -> 1
  limit,
  /// r < -psi(1)
  infinite,
};

struct HoeffdingResult {
  double value;
  double t_r;
  HoeffdingRegime regime;
};

/// H_r = sup_{0 <= t < 1} (-t r - psi(t)) / (1 - t), maximized in s = t/(1-t)
/// where the objective -s r - (1+s) psi(s/(1+s)) is concave.
inline HoeffdingResult hoeffding(const PsiCurve& c, double r) {
  if (!(r >= 0.0)) fail(ErrorCode::out_of_range, "hoeffding: r must be >= 0, got " + std::to_string(r));
  if (c.orthogonal_supports()) return {kInf, kNaN, HoeffdingRegime::infinite};
  const auto m0 = c.moments(0.0);
  if (r >= -m0.psi - m0.mean) return {-m0.psi, 0.0, HoeffdingRegime::endpoint};
  const auto m1 = c.moments(1.0);
  const double r_min = -m1.psi;
  const double tie = 1e-14 * std::max(1.0, std::abs(r_min));
  if (r < r_min - tie) return {kInf, 1.0, HoeffdingRegime::infinite};
  if (r <= r_min + tie) return {r + m1.mean, 1.0, HoeffdingRegime::limit};

  auto objective = [&](double s) { return -s * r - (1.0 + s) * c.psi(s / (1.0 + s)); };
  double s_hi = 1.0;
  double prev = objective(0.5);
  for (int it = 0;; ++it) {
    const double cur = objective(s_hi);
    if (cur < prev) break;
    if (it >= 60) break;  // t = s/(1+s) no longer resolvable from 1
    prev = cur;
    s_hi *= 2.0;
  }
  const Maximum m = grid_golden_max(objective, 0.0, s_hi, 201, 1e-12 * std::max(1.0, s_hi));
  const double t = m.argmax / (1.0 + m.argmax);
  return {m.value, t, t > 0.0 ? HoeffdingRegime::interior : HoeffdingRegime::endpoint};
}

inline double hoeffding_distance(const PsiCurve& c, double r) { return hoeffding(c, r).value; }

/// phi(a) = max_{t in [0,1]} (a t - psi(t)).
inline Maximum phi_max(const PsiCurve& c, double a) {
  if (c.orthogonal_supports()) return {kNaN, kInf};
  return grid_golden_max([&](double t) { return a * t - c.psi(t); }, 0.0, 1.0);
}

inline double phi(const PsiCurve& c, double a) { return phi_max(c, a).value; }

/// phi_hat(a) = max_{t in [0,1]} ((t - 1) a - psi(t)) = phi(a) - a.
inline double phi_hat(const PsiCurve& c, double a) { return phi(c, a) - a; }

struct HoeffdingInterval {
  double lower;  // -psi(1)
  double upper;  // -psi(0) - psi'(0)
};

inline HoeffdingInterval hoeffding_interval(const PsiCurve& c) {
  const auto m0 = c.moments(0.0);
  return {-c.psi(1.0), -m0.psi - m0.mean};
}

/// Unique t_r in (0,1) with r = (t-1) psi'(t) - psi(t), for r strictly
/// inside (-psi(1), -psi(0) - psi'(0)). Bisection to width 1e-12.
inline double solve_t_r(const PsiCurve& c, double r) {
  if (c.orthogonal_supports()) fail(ErrorCode::degenerate, "solve_t_r: orthogonal supports");
  if (c.is_flat()) {
    fail(ErrorCode::degenerate, "solve_t_r: psi is affine (q proportional to p), t_r is undefined");
  }
  const HoeffdingInterval iv = hoeffding_interval(c);
  if (!(r > iv.lower && r < iv.upper)) {
    fail(ErrorCode::out_of_range, "solve_t_r: r = " + std::to_string(r) +
                                      " outside the open interval (-psi(1), -psi(0)-psi'(0)) = (" +
                                      std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + ")");
  }
  auto g = [&](double t) {
    const auto m = c.moments(t);
    return (t - 1.0) * m.mean - m.psi;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// a_r = H_r - r; equals psi'(t_r) inside the Hoeffding interval.
inline double a_r(const PsiCurve& c, double r) {
  const HoeffdingInterval iv = hoeffding_interval(c);
  if (r > iv.lower && r < iv.upper && !c.is_flat()) return c.psi_prime(solve_t_r(c, r));
  return hoeffding_distance(c, r) - r;
}

/// eta = 1 + exp(D_{3/2} / 2) + exp(-D_{1/2} / 2); +inf without support containment.
inline double eta(const PsiCurve& c) {
  if (c.orthogonal_supports() || !c.support_contained()) return kInf;
  return 1.0 + std::exp(0.5 * renyi(c, 1.5)) + std::exp(-0.5 * renyi(c, 0.5));
}

/// V = psi''(1), the variance of log p - log q under p / p(X).
inline double relative_entropy_variance(const PsiCurve& c) {
  if (c.orthogonal_supports() || !c.support_contained()) {
    fail(ErrorCode::invalid_input,
         "relative entropy variance requires supp A <= supp B");
  }
  return c.psi_second(1.0);
}

/// S(A) = -Tr A log A.
inline double von_neumann_entropy(const HermitianMatrix& a) {
  CompensatedSum s;
  for (double x : eigenvalues(a)) {
    if (x > 0.0) s.add(-x * std::log(x));
  }
  return s.value();
}

struct EntropyContinuity {
  double bound;
  double entropy_gap;
};

/// Fannes-Audenaert bound (1/2)||A-B||_1 log(d-1) + h_2(||A-B||_1/2) on
/// |S(A) - S(B)|; fails if the inequality is observed to be violated.
inline EntropyContinuity entropy_difference_bound(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::invalid_input, "entropy_difference_bound: dimension mismatch");
  const double gap = std::abs(von_neumann_entropy(a.matrix()) - von_neumann_entropy(b.matrix()));
  const std::size_t d = a.dim();
  if (d == 1) return {0.0, gap};
  const double half = std::min(1.0, 0.5 * trace_norm(a.matrix() - b.matrix()));
  const double bound = half * std::log(static_cast<double>(d - 1)) + binary_entropy(half);
  if (gap > bound + 1e-12) {
    fail(ErrorCode::contract_violation, "entropy continuity bound violated: |S(A)-S(B)| = " +
                                            std::to_string(gap) + " > " + std::to_string(bound));
  }
  return {bound, gap};
}

struct DivergenceProfile {
  double relative_entropy;
  double chernoff;
  double chernoff_argmin_t;
  double eta;
  double variance;
};

inline DivergenceProfile divergence_profile(const PsiCurve& c) {
  const ChernoffResult ch = chernoff_distance(c);
  const bool finite = !c.orthogonal_supports() && c.support_contained();
  return {relative_entropy(c), ch.value, ch.argmin_t, eta(c),
          finite ? relative_entropy_variance(c) : kInf};
}

}  // namespace qdisc

#endif  // QDISC_DIVERGENCES_HPP
