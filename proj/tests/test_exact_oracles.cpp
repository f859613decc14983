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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qdisc/divergences.hpp"
#include "qdisc/exact_oracles.hpp"
#include "support/oracles.hpp"

namespace qdisc {
namespace {

DensityMatrix as_state(const oracle::CMatrix& m) { return DensityMatrix::from_hermitian(oracle::from_eigen(m)); }

DensityMatrix ket(double x, double y) {
  const Complex v[2] = {Complex(x, 0), Complex(y, 0)};
  return DensityMatrix::pure(v);
}

const double kPurePairError = 1.0 - std::sqrt(2.0) / 2.0;

struct QubitPair {
  oracle::CMatrix rho;
  oracle::CMatrix sigma;
};

std::vector<QubitPair> qubit_pairs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<QubitPair> out;
  for (int i = 0; i < count; ++i) {
    auto r = oracle::random_state(rng, 2);
    auto s = oracle::random_state(rng, 2);
    out.push_back({r, s});
  }
  return out;
}

TEST(TensorPowers, QubitBlocksReproduceFullSpectrum) {
  std::mt19937_64 rng(17);
  for (const auto& p : qubit_pairs(17, 4)) {
    for (std::size_t n : {1u, 2u, 5u, 7u}) {
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      double dim = 0.0;
      for (const TensorBlock& b : tp.blocks) dim += b.multiplicity * static_cast<double>(b.rho.dim());
      EXPECT_EQ(dim, std::pow(2.0, static_cast<double>(n)));
      const double lambda = std::uniform_real_distribution<double>(0.2, 3.0)(rng);
      const oracle::CMatrix full =
          lambda * oracle::power(p.rho, n) - oracle::power(p.sigma, n);
      Eigen::VectorXd ev = oracle::eigenvalues(full);
      std::vector<double> expected(ev.data(), ev.data() + ev.size());
      std::vector<double> got;
      for (const TensorBlock& b : tp.blocks) {
        for (double x : eigenvalues(HermitianMatrix::combination(lambda, b.rho, -1.0, b.sigma))) {
          got.insert(got.end(), static_cast<std::size_t>(b.multiplicity), x);
        }
      }
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      ASSERT_EQ(got.size(), expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-13) << "n=" << n;
      EXPECT_NEAR(tp.spectral_sum(0.0, [](double x) { return -x; }), 1.0, 1e-13);
    }
  }
}

TEST(TensorPowers, RespectsDimensionCap) {
  const DensityMatrix mixed = DensityMatrix::diagonal(std::vector<double>{0.5, 0.5});
  try {
    const TensorPowers tp(mixed, mixed, 13, 4096);
    FAIL() << "expected resource_limit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::resource_limit);
  }
}

TEST(MixedError, Examples) {
  const DensityMatrix mixed = DensityMatrix::diagonal(std::vector<double>{0.5, 0.5});
  for (std::size_t n : {1u, 3u}) EXPECT_NEAR(quantum_mixed_error_exact(mixed, mixed, n, 0.0), 1.0, 1e-14);
  EXPECT_NEAR(quantum_mixed_error_exact(ket(1, 0), ket(0, 1), 1, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(quantum_mixed_error_exact(ket(1, 0), ket(1, 1), 1, 0.0), kPurePairError, 1e-14);
}

TEST(MixedError, MatchesEigenOracle) {
  for (const auto& p : qubit_pairs(41, 6)) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      for (double a : {-0.5, 0.0, 0.3}) {
        EXPECT_NEAR(quantum_mixed_error_exact(tp, a), oracle::mixed_error(p.rho, p.sigma, n, a), 1e-11);
      }
    }
  }
}

TEST(MixedError, DimensionCap) {
  try {
    quantum_mixed_error_exact(ket(1, 0), ket(1, 1), 13, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::resource_limit);
  }
}

TEST(NPTest, Examples) {
  const auto orth = np_test_errors(ket(1, 0), ket(0, 1), 1, 0.0);
  EXPECT_NEAR(orth.alpha, 0.0, 1e-15);
  EXPECT_NEAR(orth.beta, 0.0, 1e-15);
  const auto pure = np_test_errors(ket(1, 0), ket(1, 1), 1, 0.0);
  EXPECT_NEAR(pure.alpha + pure.beta, kPurePairError, 1e-14);
  EXPECT_NEAR(pure.alpha, kPurePairError / 2.0, 1e-14);
  EXPECT_NEAR(pure.beta, kPurePairError / 2.0, 1e-14);
  EXPECT_FALSE(pure.degenerate_kernel);
}

TEST(NPTest, MixedErrorAgreesWithTraceNorm) {
  for (const auto& p : qubit_pairs(43, 6)) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      for (double a : {-0.4, -0.1, 0.0, 0.25}) {
        const auto np = np_test_errors(tp, a);
        if (np.degenerate_kernel) continue;
        EXPECT_NEAR(np.mixed, quantum_mixed_error_exact(tp, a), 1e-9);
      }
    }
  }
}

TEST(NPTest, RespectsExponentialUpperBounds) {
  for (const auto& p : qubit_pairs(47, 6)) {
    const PsiCurve c = PsiCurve::from_states(as_state(p.rho), as_state(p.sigma));
    for (std::size_t n = 1; n <= 8; ++n) {
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      for (double a : {-0.3, 0.0, 0.2}) {
        const auto np = np_test_errors(tp, a);
        const double nd = static_cast<double>(n);
        EXPECT_LE(np.alpha, std::exp(-nd * phi_hat(c, a)) + 1e-12);
        EXPECT_LE(np.beta, std::exp(-nd * phi(c, a)) + 1e-12);
      }
    }
  }
}

TEST(NPTest, TradeOffIsMonotoneInA) {
  for (const auto& p : qubit_pairs(53, 4)) {
    const TensorPowers tp(as_state(p.rho), as_state(p.sigma), 4);
    double prev_alpha = -1.0;
    double prev_beta = 2.0;
    for (int i = 0; i <= 40; ++i) {
      const double a = -1.0 + 0.05 * i;
      const auto np = np_test_errors(tp, a);
      EXPECT_GE(np.alpha, prev_alpha - 1e-12);
      EXPECT_LE(np.beta, prev_beta + 1e-12);
      prev_alpha = np.alpha;
      prev_beta = np.beta;
    }
  }
}

TEST(NPTest, NoRandomTestBeatsIt) {
  std::mt19937_64 rng(59);
  for (const auto& p : qubit_pairs(61, 4)) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const oracle::CMatrix rn = oracle::power(p.rho, n);
      const oracle::CMatrix sn = oracle::power(p.sigma, n);
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      for (double a : {-0.2, 0.0, 0.3}) {
        const double best = quantum_mixed_error_exact(tp, a);
        for (int k = 0; k < 20; ++k) {
          const auto [alpha, beta] = oracle::test_errors(rn, sn, oracle::random_contraction(rng, rn.rows()));
          EXPECT_GE(std::exp(-static_cast<double>(n) * a) * alpha + beta, best - 1e-10);
        }
      }
    }
  }
}

TEST(BetaEps, IdenticalStates) {
  const DensityMatrix mixed = DensityMatrix::diagonal(std::vector<double>{0.3, 0.7});
  for (double eps : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(beta_eps_exact(mixed, mixed, 2, eps), 1.0 - eps, 1e-9);
    EXPECT_NEAR(beta_eps_exact(ket(1, 1), ket(1, 1), 1, eps), 1.0 - eps, 1e-9);
  }
}

TEST(BetaEps, OrthogonalStates) { EXPECT_NEAR(beta_eps_exact(ket(1, 0), ket(0, 1), 2, 0.1), 0.0, 1e-12); }

TEST(BetaEps, EpsilonOutOfRange) {
  for (double eps : {0.0, 1.0, -0.1}) {
    try {
      beta_eps_exact(ket(1, 0), ket(1, 1), 1, eps);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::out_of_range);
    }
  }
}

struct NPPoint {
  double positive_part;
  double alpha;
  double beta;
};

NPPoint np_point(const oracle::CMatrix& rn, const oracle::CMatrix& sn, double lambda) {
  Eigen::SelfAdjointEigenSolver<oracle::CMatrix> es(lambda * rn - sn);
  NPPoint out{0.0, 0.0, 0.0};
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const auto v = es.eigenvectors().col(k);
    if (es.eigenvalues()(k) > 0.0) {
      out.positive_part += es.eigenvalues()(k);
      out.beta += (v.adjoint() * sn * v)(0, 0).real();
    } else {
      out.alpha += (v.adjoint() * rn * v)(0, 0).real();
    }
  }
  return out;
}

// Dual lower bound on a log-lambda grid (coarse, then refined around the
// best point) and a feasible mixture of two grid NP tests as upper bound.
std::pair<double, double> beta_eps_bracket(const oracle::CMatrix& rn, const oracle::CMatrix& sn, double eps) {
  double dual = 0.0;
  double primal = 1.0;
  auto scan = [&](double lo, double hi, int points) {
    double best_x = lo;
    double best = -1.0;
    NPPoint prev{};
    for (int i = 0; i < points; ++i) {
      const double x = lo + (hi - lo) * i / (points - 1);
      const double lambda = std::exp(x);
      const NPPoint pt = np_point(rn, sn, lambda);
      const double g = (1.0 - eps) * lambda - pt.positive_part;
      if (g > best) {
        best = g;
        best_x = x;
      }
      if (i > 0 && prev.alpha >= eps && eps >= pt.alpha && prev.alpha > pt.alpha) {
        const double th = (eps - pt.alpha) / (prev.alpha - pt.alpha);
        primal = std::min(primal, pt.beta + th * (prev.beta - pt.beta));
      }
      prev = pt;
    }
    dual = std::max(dual, best);
    return best_x;
  };
  const double step = 0.05;
  const double x = scan(-20.0, 20.0, 801);
  scan(x - step, x + step, 2001);
  return {dual, primal};
}

TEST(BetaEps, SandwichedByIndependentGrid) {
  for (const auto& p : qubit_pairs(67, 4)) {
    for (std::size_t n : {1u, 3u, 4u}) {
      const TensorPowers tp(as_state(p.rho), as_state(p.sigma), n);
      for (double eps : {0.1, 0.3, 0.5}) {
        const double ours = beta_eps_exact(tp, eps);
        const auto [lo, hi] = beta_eps_bracket(oracle::power(p.rho, n), oracle::power(p.sigma, n), eps);
        EXPECT_GE(ours, lo - 1e-9);
        EXPECT_LE(ours, hi + 1e-9);
        EXPECT_LT(hi - lo, 1e-5);
      }
    }
  }
}

TEST(BetaEps, NonincreasingAndConvexInEps) {
  for (const auto& p : qubit_pairs(71, 3)) {
    const TensorPowers tp(as_state(p.rho), as_state(p.sigma), 3);
    std::vector<double> v;
    for (int i = 1; i <= 19; ++i) v.push_back(beta_eps_exact(tp, i / 20.0));
    for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(v[i], v[i - 1] + 1e-10);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) EXPECT_LE(v[i], 0.5 * (v[i - 1] + v[i + 1]) + 1e-9);
  }
}

TEST(ClassicalBetaEps, Examples) {
  const ClassicalPair pair = ClassicalPair::from_measures({0.25, 0.75}, {0.75, 0.25});
  EXPECT_NEAR(classical_beta_eps_exact(pair, 1, 0.25), 0.25, 1e-15);
  EXPECT_NEAR(classical_beta_eps_exact(pair, 3, 0.0), 1.0, 1e-14);
  EXPECT_THROW(classical_beta_eps_exact(pair, 1, 1.0), Error);
  const ClassicalPair unnormalized = ClassicalPair::from_measures({0.5, 0.6}, {0.5, 0.5});
  EXPECT_THROW(classical_beta_eps_exact(unnormalized, 1, 0.1), Error);
}

TEST(ClassicalBetaEps, MatchesSequenceEnumeration) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_simplex(rng, 3);
    const auto q = oracle::random_simplex(rng, 3);
    const std::size_t n = 1 + i % 7;
    for (double eps : {0.05, 0.3, 0.6}) {
      EXPECT_NEAR(classical_beta_eps_exact(ClassicalPair::from_measures(p, q), n, eps),
                  oracle::classical_beta_eps_sequences(p, q, n, eps), 1e-12);
    }
  }
}

TEST(ClassicalBetaEps, AgreesWithQuantumOnDiagonalStates) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 8; ++i) {
    const auto p = oracle::random_simplex(rng, 2);
    const auto q = oracle::random_simplex(rng, 2);
    const std::size_t n = 1 + i;
    const TensorPowers tp(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q), n);
    for (double eps : {0.1, 0.4}) {
      EXPECT_NEAR(beta_eps_exact(tp, eps), classical_beta_eps_exact(ClassicalPair::from_measures(p, q), n, eps),
                  1e-9);
    }
  }
}

}  // namespace
}  // namespace qdisc
