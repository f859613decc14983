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

// Nussbaum-Szkola reduction of a pair of operators to a pair of classical
// measures, and the method of types on finite alphabets.

#ifndef QDISC_NS_MAPPING_HPP
#define QDISC_NS_MAPPING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/divergences.hpp"
#include "qdisc/error.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

inline constexpr double kDefaultTypeCap = 2e6;

/// Classical measures p(i,j) = a_i Tr P_i Q_j, q(i,j) = b_j Tr P_i Q_j on
/// the joint support.
struct ClassicalPair {
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  std::vector<double> p;
  std::vector<double> q;

  std::size_t size() const { return p.size(); }

  /// A pair given directly by two strictly positive measures.
  static ClassicalPair from_measures(std::vector<double> p, std::vector<double> q) {
    if (p.size() != q.size() || p.empty()) {
      fail(ErrorCode::invalid_input, "classical pair: p and q must be nonempty and of equal length");
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!(p[k] > 0.0) || !(q[k] > 0.0) || !std::isfinite(p[k]) || !std::isfinite(q[k])) {
        fail(ErrorCode::invalid_input, "classical pair: entries must be finite and strictly positive");
      }
    }
    ClassicalPair pair;
    pair.p = std::move(p);
    pair.q = std::move(q);
    for (std::size_t k = 0; k < pair.p.size(); ++k) pair.labels.emplace_back(k, k);
    return pair;
  }

  double min_p() const { return *std::min_element(p.begin(), p.end()); }
  double min_q() const { return *std::min_element(q.begin(), q.end()); }
};

inline ClassicalPair build_classical_pair(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  const OverlapTable table = overlap_table(a, b);
  if (table.terms.empty()) {
    fail(ErrorCode::degenerate, "orthogonal supports: the joint alphabet is empty");
  }
  ClassicalPair pair;
  for (const auto& t : table.terms) {
    pair.labels.emplace_back(t.i, t.j);
    pair.p.push_back(t.a * t.weight);
    pair.q.push_back(t.b * t.weight);
  }
  return pair;
}

inline ClassicalPair build_classical_pair(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return build_classical_pair(eigh(rho.matrix()), eigh(sigma.matrix()));
}

inline PsiCurve psi_curve(const ClassicalPair& pair) { return PsiCurve::from_measures(pair.p, pair.q); }

/// Empirical distribution of a length-n sequence, as counts.
struct TypeVector {
  std::vector<std::size_t> counts;
  std::size_t n = 0;

  static TypeVector from_counts(std::vector<std::size_t> counts) {
    TypeVector t;
    t.n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (t.n == 0) fail(ErrorCode::invalid_input, "type: n must be >= 1");
    t.counts = std::move(counts);
    return t;
  }

  std::size_t support_size() const {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                  [](std::size_t c) { return c > 0; }));
  }

  double frequency(std::size_t x) const {
    return static_cast<double>(counts[x]) / static_cast<double>(n);
  }

  /// sum_x T(x) v(x)
  double dot(std::span<const double> v) const {
    CompensatedSum s;
    for (std::size_t x = 0; x < counts.size(); ++x) {
      if (counts[x] > 0) s.add(frequency(x) * v[x]);
    }
    return s.value();
  }

  double l1_distance(std::span<const double> mu) const {
    double d = 0.0;
    for (std::size_t x = 0; x < counts.size(); ++x) d += std::abs(frequency(x) - mu[x]);
    return d;
  }
};

inline TypeVector sequence_type(std::span<const std::size_t> sequence, std::size_t alphabet_size) {
  std::vector<std::size_t> counts(alphabet_size, 0);
  for (std::size_t x : sequence) {
    if (x >= alphabet_size) {
      fail(ErrorCode::invalid_input, "sequence symbol " + std::to_string(x) + " outside alphabet of size " +
                                         std::to_string(alphabet_size));
    }
    ++counts[x];
  }
  return TypeVector::from_counts(std::move(counts));
}

/// log of the number of sequences with the given counts.
inline double log_multinomial(std::span<const std::size_t> counts) {
  std::size_t n = 0;
  double s = 0.0;
  for (std::size_t c : counts) {
    n += c;
    s -= log_factorial(static_cast<double>(c));
  }
  return s + log_factorial(static_cast<double>(n));
}

struct TypeClassProbability {
  /// log T^{(x)n}(type class of T)
  double exact_log;
  /// exact_log / n
  double rate;
  /// Stirling lower bound on the rate
  double rate_lower_bound;
  std::size_t support;
};

inline TypeClassProbability type_class_log_probability(const TypeVector& t) {
  if (t.n == 0) fail(ErrorCode::invalid_input, "type: n must be >= 1");
  const double n = static_cast<double>(t.n);
  double exact = log_multinomial(t.counts);
  for (std::size_t c : t.counts) {
    if (c > 0) exact += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
  }
  const std::size_t support = t.support_size();
  const double r = static_cast<double>(support);
  const double bound = -(r - 1.0) / 2.0 * std::log(n) / n +
                       r / n * (std::log(std::sqrt(r / (2.0 * std::numbers::pi))) - 1.0 / 12.0) +
                       1.0 / (n * (12.0 * n + 1.0));
  return {exact, exact / n, bound, support};
}

/// log mu^{(x)n}(x) for any sequence x of type T (-inf if T charges a zero of mu).
inline double log_sequence_probability(const TypeVector& t, std::span<const double> mu) {
  double s = 0.0;
  for (std::size_t x = 0; x < t.counts.size(); ++x) {
    if (t.counts[x] == 0) continue;
    if (mu[x] <= 0.0) return -kInf;
    s += static_cast<double>(t.counts[x]) * std::log(mu[x]);
  }
  return s;
}

/// Number of types of length-n sequences over k letters, C(n+k-1, k-1).
inline double type_count(std::size_t k, std::size_t n) {
  return std::round(std::exp(log_binomial(static_cast<double>(n + k - 1), static_cast<double>(k - 1))));
}

/// Calls f(counts) for every composition of n into k parts, in
/// lexicographic order (first coordinate largest first).
template <class F>
void for_each_type(std::size_t k, std::size_t n, F&& f, double cap = kDefaultTypeCap) {
  if (k == 0) fail(ErrorCode::invalid_input, "type enumeration: empty alphabet");
  const double count = type_count(k, n);
  if (count > cap) {
    fail(ErrorCode::resource_limit, "type enumeration: " + std::to_string(count) +
                                        " types exceed cap " + std::to_string(cap));
  }
  std::vector<std::size_t> c(k, 0);
  c[0] = n;
  for (;;) {
    f(std::span<const std::size_t>(c));
    if (k == 1) return;
    // next composition: find the rightmost nonzero among the first k-1
    std::size_t j = k - 1;
    while (j > 0 && c[j - 1] == 0) --j;
    if (j == 0) return;
    --c[j - 1];
    const std::size_t tail = c[k - 1] + 1;
    c[k - 1] = 0;
    c[j] = tail;
  }
}

/// Two types on either strict side of {f : sum f v = c}, both close to mu.
struct HalfspaceApproximation {
  TypeVector below;
  TypeVector above;
};

namespace detail {

inline bool halfspace_side_ok(const TypeVector& t, std::span<const double> v, double c, int side) {
  const double s = t.dot(v);
  return side < 0 ? s < c : s > c;
}

/// Floor rounding of n*mu, remainder to the extreme-v letters on the
/// requested side, then unit shifts from the opposite extreme.
inline std::vector<std::size_t> greedy_halfspace(std::span<const double> mu, std::span<const double> v,
                                                 double c, std::size_t n, int side) {
  const std::size_t k = mu.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  // order[0] is the letter pushing hardest toward the requested side
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return side < 0 ? v[a] < v[b] : v[a] > v[b];
  });
  std::vector<std::size_t> counts(k);
  std::size_t used = 0;
  for (std::size_t x = 0; x < k; ++x) {
    counts[x] = static_cast<std::size_t>(std::floor(static_cast<double>(n) * mu[x] + 1e-12));
    used += counts[x];
  }
  while (used > n) {
    for (std::size_t i = k; i-- > 0 && used > n;) {
      if (counts[order[i]] > 0) {
        --counts[order[i]];
        --used;
      }
    }
  }
  // remainder goes to supported letters in pushing order, one each
  for (std::size_t i = 0; used < n; i = (i + 1) % k) {
    if (mu[order[i]] > 0.0 || i == 0) {
      ++counts[order[i]];
      ++used;
    }
  }
  auto good = [&] {
    CompensatedSum s;
    for (std::size_t x = 0; x < k; ++x) s.add(static_cast<double>(counts[x]) * v[x]);
    const double dot = s.value() / static_cast<double>(n);
    return side < 0 ? dot < c : dot > c;
  };
  for (std::size_t guard = 0; !good() && guard < n; ++guard) {
    std::size_t from = k;
    for (std::size_t i = k; i-- > 0;) {
      if (counts[order[i]] > 0) {
        from = order[i];
        break;
      }
    }
    if (from == k || from == order[0]) break;
    --counts[from];
    ++counts[order[0]];
  }
  return counts;
}

}  // namespace detail

/// Constructive version of the half-space type approximation: for mu on the
/// hyperplane sum mu v = c, returns types mu_1 (sum < c) and mu_2 (sum > c)
/// with ||mu - mu_i||_1 <= 2(r-1)/n, r = |supp mu|, n >= r(r-1). A greedy
/// rounding is tried first; if it misses the distance budget, all types in a
/// +-(r-1) count window around n*mu are searched.
inline HalfspaceApproximation halfspace_type_approximation(std::span<const double> mu,
                                                           std::span<const double> v, double c,
                                                           std::size_t n) {
  const std::size_t k = mu.size();
  if (k == 0 || v.size() != k) fail(ErrorCode::invalid_input, "halfspace approximation: size mismatch");
  double total = 0.0;
  double dot = 0.0;
  std::size_t r = 0;
  for (std::size_t x = 0; x < k; ++x) {
    if (!(mu[x] >= 0.0)) fail(ErrorCode::invalid_input, "halfspace approximation: mu must be nonnegative");
    total += mu[x];
    dot += mu[x] * v[x];
    if (mu[x] > 0.0) ++r;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    fail(ErrorCode::invalid_input, "halfspace approximation: mu must sum to 1, got " + std::to_string(total));
  }
  if (std::abs(dot - c) > 1e-9) {
    fail(ErrorCode::invalid_input, "halfspace approximation: mu is off the hyperplane (sum mu v - c = " +
                                       std::to_string(dot - c) + ")");
  }
  const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
  if (!(*vmin < c && *vmax > c)) {
    fail(ErrorCode::invalid_input,
         "halfspace approximation: both open half-spaces must meet the simplex (need min v < c < max v)");
  }
  if (n < r * (r - 1) || n == 0) {
    fail(ErrorCode::invalid_input, "halfspace approximation: n = " + std::to_string(n) +
                                       " below r(r-1) = " + std::to_string(r * (r - 1)));
  }
  const double budget = 2.0 * static_cast<double>(r - 1) / static_cast<double>(n) + 1e-12;

  auto solve = [&](int side) -> TypeVector {
    TypeVector t = TypeVector::from_counts(detail::greedy_halfspace(mu, v, c, n, side));
    if (detail::halfspace_side_ok(t, v, c, side) && t.l1_distance(mu) <= budget) return t;
    // window search
    std::vector<std::size_t> lo(k);
    std::vector<std::size_t> hi(k);
    double combos = 1.0;
    for (std::size_t x = 0; x < k; ++x) {
      const double center = static_cast<double>(n) * mu[x];
      const double w = static_cast<double>(r);
      lo[x] = static_cast<std::size_t>(std::max(0.0, std::floor(center - w)));
      hi[x] = static_cast<std::size_t>(std::min(static_cast<double>(n), std::ceil(center + w)));
      combos *= static_cast<double>(hi[x] - lo[x] + 1);
    }
    if (combos > 2e7) {
      fail(ErrorCode::resource_limit, "halfspace approximation: window search too large");
    }
    std::vector<std::size_t> cur(lo);
    bool found = false;
    TypeVector best;
    double best_dist = kInf;
    for (;;) {
      if (std::accumulate(cur.begin(), cur.end(), std::size_t{0}) == n) {
        TypeVector cand = TypeVector::from_counts(cur);
        const double d = cand.l1_distance(mu);
        if (detail::halfspace_side_ok(cand, v, c, side) && d < best_dist) {
          best = cand;
          best_dist = d;
          found = true;
        }
      }
      std::size_t x = 0;
      while (x < k && cur[x] == hi[x]) {
        cur[x] = lo[x];
        ++x;
      }
      if (x == k) break;
      ++cur[x];
    }
    if (!found || best_dist > budget) {
      fail(ErrorCode::no_convergence, std::string("halfspace approximation: no type strictly ") +
                                          (side < 0 ? "below" : "above") +
                                          " the hyperplane within l1 distance 2(r-1)/n");
    }
    return best;
  };
  return {solve(-1), solve(+1)};
}

/// Exact classical Neyman-Pearson errors for N_{n,a} = {x : (1/n) log
/// p^n(x)/q^n(x) >= a}: alpha = p^n(complement), beta = q^n(N),
/// e = e^{-na} alpha + beta.
struct ClassicalErrors {
  double alpha;
  double beta;
  double e;
  double log_alpha;
  double log_beta;
  double log_e;
};

namespace detail {

/// Tie-aware membership test for N_{n,a}: statistic sum_x k_x f_x >= n a.
inline bool in_np_region(double statistic, double n, double a, double scale) {
  return statistic >= n * a - 1e-12 * n * std::max({1.0, std::abs(a), scale});
}

}  // namespace detail

inline ClassicalErrors classical_exact_errors(const ClassicalPair& pair, std::size_t n, double a,
                                              double cap = kDefaultTypeCap) {
  if (n == 0) fail(ErrorCode::invalid_input, "classical_exact_errors: n must be >= 1");
  const std::size_t k = pair.size();
  std::vector<double> lp(k);
  std::vector<double> lq(k);
  std::vector<double> f(k);
  double scale = 0.0;
  for (std::size_t x = 0; x < k; ++x) {
    lp[x] = std::log(pair.p[x]);
    lq[x] = std::log(pair.q[x]);
    f[x] = lp[x] - lq[x];
    scale = std::max(scale, std::abs(f[x]));
  }
  const double nd = static_cast<double>(n);
  LogSumExp alpha;
  LogSumExp beta;
  for_each_type(
      k, n,
      [&](std::span<const std::size_t> counts) {
        const double lm = log_multinomial(counts);
        double sp = lm;
        double sq = lm;
        double stat = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          if (counts[x] == 0) continue;
          const double cx = static_cast<double>(counts[x]);
          sp += cx * lp[x];
          sq += cx * lq[x];
          stat += cx * f[x];
        }
        if (detail::in_np_region(stat, nd, a, scale)) {
          beta.add(sq);
        } else {
          alpha.add(sp);
        }
      },
      cap);
  ClassicalErrors out;
  out.log_alpha = alpha.value();
  out.log_beta = beta.value();
  out.log_e = log_add(-nd * a + out.log_alpha, out.log_beta);
  out.alpha = std::exp(out.log_alpha);
  out.beta = std::exp(out.log_beta);
  out.e = std::exp(out.log_e);
  return out;
}

}  // namespace qdisc

#endif  // QDISC_NS_MAPPING_HPP
