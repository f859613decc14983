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

// Exact finite-n error probabilities: Holevo-Helstrom mixed error,
// Neyman-Pearson test errors, the optimal type-II error beta_{n,eps} from
// its dual variational formula, and the classical randomized NP optimum.

#ifndef QDISC_EXACT_ORACLES_HPP
#define QDISC_EXACT_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qdisc/error.hpp"
#include "qdisc/linalg.hpp"
#include "qdisc/ns_mapping.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

/// rho^{(x)n} and sigma^{(x)n} restricted to one invariant block. Both
/// operators act as block (x) I on a subspace of dimension
/// block dim * multiplicity.
struct TensorBlock {
  HermitianMatrix rho;
  HermitianMatrix sigma;
  double multiplicity;
};

namespace detail {

/// X^{(x)m} on the symmetric subspace of (C^2)^{(x)m}, in the orthonormal
/// Dicke basis |D_i>, i = number of factors in the second basis vector.
/// <D_i|X^{(x)m}|D_j> = sqrt(C(m,j)/C(m,i)) [t^i] (x00 + x10 t)^{m-j} (x01 + x11 t)^j.
inline HermitianMatrix symmetric_power(const HermitianMatrix& x, std::size_t m) {
  const std::size_t dim = m + 1;
  const auto md = static_cast<double>(m);
  std::vector<Complex> entries(dim * dim);
  for (std::size_t j = 0; j <= m; ++j) {
    std::vector<Complex> poly{Complex(1.0)};
    const auto multiply = [&poly](Complex c0, Complex c1) {
      std::vector<Complex> next(poly.size() + 1);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += c0 * poly[i];
        next[i + 1] += c1 * poly[i];
      }
      poly = std::move(next);
    };
    for (std::size_t r = 0; r < m - j; ++r) multiply(x(0, 0), x(1, 0));
    for (std::size_t r = 0; r < j; ++r) multiply(x(0, 1), x(1, 1));
    for (std::size_t i = 0; i <= m; ++i) {
      const double scale =
          std::exp(0.5 * (log_binomial(md, static_cast<double>(j)) - log_binomial(md, static_cast<double>(i))));
      entries[i * dim + j] = scale * poly[i];
    }
  }
  return HermitianMatrix(dim, std::move(entries));
}

/// For qubits, (C^2)^{(x)n} splits into blocks k = 0..n/2 on which X^{(x)n}
/// acts as det(X)^k Sym^{n-2k}(X) with multiplicity C(n,k) - C(n,k-1).
/// Other dimensions give a single block holding the full tensor powers.
inline std::vector<TensorBlock> tensor_blocks(const DensityMatrix& rho, const DensityMatrix& sigma,
                                              std::size_t n, std::size_t dim_cap) {
  if (rho.dim() != sigma.dim()) {
    fail(ErrorCode::invalid_input, "states have different dimensions: " + std::to_string(rho.dim()) +
                                       " vs " + std::to_string(sigma.dim()));
  }
  check_tensor_dim(rho.dim(), n, dim_cap);
  if (rho.dim() != 2) {
    return {{tensor_power(rho.matrix(), n, dim_cap), tensor_power(sigma.matrix(), n, dim_cap), 1.0}};
  }
  const auto det = [](const HermitianMatrix& x) { return (x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0)).real(); };
  const double det_rho = det(rho.matrix());
  const double det_sigma = det(sigma.matrix());
  const auto nd = static_cast<double>(n);
  std::vector<TensorBlock> blocks;
  for (std::size_t k = 0; 2 * k <= n; ++k) {
    const auto kd = static_cast<double>(k);
    double multiplicity = std::round(std::exp(log_binomial(nd, kd)));
    if (k > 0) multiplicity -= std::round(std::exp(log_binomial(nd, kd - 1.0)));
    const HermitianMatrix r = symmetric_power(rho.matrix(), n - 2 * k);
    const HermitianMatrix s = symmetric_power(sigma.matrix(), n - 2 * k);
    blocks.push_back({HermitianMatrix::combination(std::pow(det_rho, kd), r, 0.0, r),
                      HermitianMatrix::combination(std::pow(det_sigma, kd), s, 0.0, s), multiplicity});
  }
  return blocks;
}

}  // namespace detail

/// rho^{(x)n} and sigma^{(x)n} in block form, built once and reused across a
/// sweep. dim_cap bounds the full dimension d^n.
struct TensorPowers {
  std::size_t n;
  std::vector<TensorBlock> blocks;

  TensorPowers(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t copies,
               std::size_t dim_cap = kDefaultDimCap)
      : n(copies), blocks(detail::tensor_blocks(rho, sigma, copies, dim_cap)) {}

  /// Tr f(lambda rho_n - sigma_n) for f applied to eigenvalues and summed.
  template <class F>
  double spectral_sum(double lambda, F f) const {
    CompensatedSum s;
    for (const TensorBlock& b : blocks) {
      CompensatedSum block;
      for (double x : eigenvalues(HermitianMatrix::combination(lambda, b.rho, -1.0, b.sigma))) block.add(f(x));
      s.add(b.multiplicity * block.value());
    }
    return s.value();
  }
};

/// e_n(a) = (1 + e^{-na})/2 - (1/2) ||e^{-na} rho_n - sigma_n||_1.
inline double quantum_mixed_error_exact(const TensorPowers& tp, double a) {
  const double kappa = std::exp(-static_cast<double>(tp.n) * a);
  const double norm = tp.spectral_sum(kappa, [](double x) { return std::abs(x); });
  return std::max(0.0, 0.5 * (1.0 + kappa) - 0.5 * norm);
}

inline double quantum_mixed_error_exact(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        std::size_t n, double a, std::size_t dim_cap = kDefaultDimCap) {
  return quantum_mixed_error_exact(TensorPowers(rho, sigma, n, dim_cap), a);
}

struct NPTestErrors {
  double alpha;
  double beta;
  /// e^{-na} alpha + beta
  double mixed;
  /// some eigenvalue of e^{-na} rho_n - sigma_n lies within the kernel tolerance of 0
  bool degenerate_kernel;
};

namespace detail {

struct ProjectorErrors {
  double alpha;
  double beta;
  bool degenerate;
};

/// Errors of T = spectral projector onto {eigenvalue > tol} of lambda*rho_n - sigma_n.
inline ProjectorErrors projector_errors(const TensorPowers& tp, double lambda, double tol) {
  CompensatedSum alpha;
  CompensatedSum beta;
  bool degenerate = false;
  for (const TensorBlock& b : tp.blocks) {
    const EigenSystem sys = eigensystem(HermitianMatrix::combination(lambda, b.rho, -1.0, b.sigma), true);
    const std::vector<double> er = diagonal_expectations(sys, b.rho);
    const std::vector<double> es = diagonal_expectations(sys, b.sigma);
    CompensatedSum block_alpha;
    CompensatedSum block_beta;
    for (std::size_t k = 0; k < sys.dim; ++k) {
      if (std::abs(sys.values[k]) <= tol) degenerate = true;
      if (sys.values[k] > tol) {
        block_beta.add(std::max(0.0, es[k]));
      } else {
        block_alpha.add(std::max(0.0, er[k]));
      }
    }
    alpha.add(b.multiplicity * block_alpha.value());
    beta.add(b.multiplicity * block_beta.value());
  }
  return {alpha.value(), beta.value(), degenerate};
}

}  // namespace detail

/// Errors of the strict Holevo-Helstrom test {e^{-na} rho_n - sigma_n > 0}.
inline NPTestErrors np_test_errors(const TensorPowers& tp, double a) {
  const double kappa = std::exp(-static_cast<double>(tp.n) * a);
  const auto pe = detail::projector_errors(tp, kappa, 1e-12 * std::max(1.0, kappa));
  return {pe.alpha, pe.beta, kappa * pe.alpha + pe.beta, pe.degenerate};
}

inline NPTestErrors np_test_errors(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n,
                                   double a, std::size_t dim_cap = kDefaultDimCap) {
  return np_test_errors(TensorPowers(rho, sigma, n, dim_cap), a);
}

struct BetaEpsResult {
  double beta;
  /// maximizer of the dual objective
  double lambda;
  /// max_lambda (1-eps) lambda - Tr(lambda rho_n - sigma_n)_+
  double dual_value;
  /// type-II error of the randomized NP test with type-I error exactly eps
  double primal_value;
};

/// beta_{n,eps} = sup_{lambda >= 0} (1-eps) lambda - Tr(lambda rho_n - sigma_n)_+.
/// The concave dual is maximized by golden-section on a doubling bracket;
/// the NP tests at the final bracket ends are then mixed to type-I error
/// exactly eps, which pins the value where the dual is piecewise linear.
inline BetaEpsResult beta_eps_exact_report(const TensorPowers& tp, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    fail(ErrorCode::out_of_range, "beta_eps_exact: eps must lie in (0, 1), got " + std::to_string(eps));
  }
  auto g = [&](double lambda) {
    return (1.0 - eps) * lambda -
           tp.spectral_sum(lambda, [](double x) { return x > 0.0 ? x : 0.0; });
  };
  double hi = 1.0;
  double g_hi = g(hi);
  for (int it = 0;; ++it) {
    if (it >= 200) {
      fail(ErrorCode::no_convergence, "beta_eps_exact: lambda bracket did not close after 200 doublings");
    }
    const double g_next = g(2.0 * hi);
    if (!std::isfinite(g_next)) fail(ErrorCode::no_convergence, "beta_eps_exact: non-finite objective");
    hi *= 2.0;
    if (g_next < g_hi) break;
    g_hi = g_next;
  }

  constexpr double kInvPhi = 0.6180339887498948482;
  double lo = 0.0;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  const double width = 1e-10 * hi;
  for (int it = 0; it < 400 && hi - lo > width; ++it) {
    if (gc >= gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - kInvPhi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + kInvPhi * (hi - lo);
      gd = g(d);
    }
  }
  const double best_lambda = gc >= gd ? c : d;
  const double dual = std::max({gc, gd, g(lo), g(hi), 0.0});

  const double tol_lo = 1e-12 * std::max(1.0, lo);
  const double tol_hi = 1e-12 * std::max(1.0, hi);
  const auto at_lo = detail::projector_errors(tp, lo, tol_lo);
  const auto at_hi = detail::projector_errors(tp, hi, tol_hi);
  double primal = kNaN;
  if (at_lo.alpha >= eps && eps >= at_hi.alpha && at_lo.alpha > at_hi.alpha) {
    const double theta = (eps - at_hi.alpha) / (at_lo.alpha - at_hi.alpha);
    primal = at_hi.beta + theta * (at_lo.beta - at_hi.beta);
  }
  double beta = dual;
  // the primal value of a feasible test can only exceed the dual optimum;
  // accept it when it closes the gap left by the finite bracket
  if (std::isfinite(primal) && primal >= dual - 1e-12 && primal - dual <= 1e-7) beta = primal;
  return {std::clamp(beta, 0.0, 1.0), best_lambda, dual, primal};
}

inline double beta_eps_exact(const TensorPowers& tp, double eps) {
  return beta_eps_exact_report(tp, eps).beta;
}

inline double beta_eps_exact(const DensityMatrix& rho, const DensityMatrix& sigma, std::size_t n, double eps,
                             std::size_t dim_cap = kDefaultDimCap) {
  return beta_eps_exact(TensorPowers(rho, sigma, n, dim_cap), eps);
}

/// Classical randomized Neyman-Pearson optimum: types are accepted (decide p)
/// in decreasing order of likelihood ratio until their p-mass reaches 1-eps,
/// the boundary type being accepted with the fraction that makes the type-I
/// error exactly eps. p and q must be probability vectors.
inline double classical_beta_eps_exact(const ClassicalPair& pair, std::size_t n, double eps,
                                       double cap = kDefaultTypeCap) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    fail(ErrorCode::out_of_range, "classical_beta_eps_exact: eps must lie in [0, 1), got " + std::to_string(eps));
  }
  if (n == 0) fail(ErrorCode::invalid_input, "classical_beta_eps_exact: n must be >= 1");
  const double sp = compensated_sum(pair.p);
  const double sq = compensated_sum(pair.q);
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
    fail(ErrorCode::invalid_input, "classical_beta_eps_exact: p and q must be probability vectors");
  }
  const std::size_t k = pair.size();
  std::vector<double> lp(k);
  std::vector<double> lq(k);
  for (std::size_t x = 0; x < k; ++x) {
    lp[x] = std::log(pair.p[x]);
    lq[x] = std::log(pair.q[x]);
  }
  struct Entry {
    double log_ratio;
    double p_mass;
    double q_mass;
  };
  std::vector<Entry> entries;
  for_each_type(
      k, n,
      [&](std::span<const std::size_t> counts) {
        const double lm = log_multinomial(counts);
        double a = lm;
        double b = lm;
        for (std::size_t x = 0; x < k; ++x) {
          const double cx = static_cast<double>(counts[x]);
          a += cx * lp[x];
          b += cx * lq[x];
        }
        entries.push_back({a - b, std::exp(a), std::exp(b)});
      },
      cap);
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& u, const Entry& v) { return u.log_ratio > v.log_ratio; });
  const double target = 1.0 - eps;
  CompensatedSum accepted;
  CompensatedSum beta;
  for (const Entry& e : entries) {
    const double have = accepted.value();
    if (have >= target) break;
    if (have + e.p_mass <= target) {
      accepted.add(e.p_mass);
      beta.add(e.q_mass);
    } else {
      const double theta = (target - have) / e.p_mass;
      beta.add(theta * e.q_mass);
      break;
    }
  }
  return std::clamp(beta.value(), 0.0, 1.0);
}

}  // namespace qdisc

#endif  // QDISC_EXACT_ORACLES_HPP
