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

// Dense Hermitian linear algebra: spectral decompositions with grouped
// eigenvalues, operator powers on supports, Kronecker/tensor powers and
// trace-norm type functionals.

#ifndef QDISC_LINALG_HPP
#define QDISC_LINALG_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/error.hpp"
#include "qdisc/numeric.hpp"

namespace qdisc {

using Complex = std::complex<double>;

inline constexpr double kDefaultGroupTol = 1e-8;
inline constexpr double kSupportCutoff = 1e-12;
inline constexpr std::size_t kDefaultDimCap = 4096;
/// Matrices up to this dimension are diagonalized by cyclic Jacobi; larger
/// ones by Householder tridiagonalization (Eigen).
inline constexpr std::size_t kJacobiMaxDim = 32;
inline constexpr int kJacobiMaxSweeps = 100;

/// Dense d x d complex Hermitian operator, row-major.
class HermitianMatrix {
 public:
  /// Zero matrix.
  explicit HermitianMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) fail(ErrorCode::invalid_input, "matrix dimension must be >= 1");
  }

  /// Takes arbitrary row-major entries and keeps the Hermitian part
  /// (M + M^H) / 2.
  HermitianMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) fail(ErrorCode::invalid_input, "matrix dimension must be >= 1");
    if (data_.size() != dim * dim) {
      fail(ErrorCode::invalid_input,
           "expected " + std::to_string(dim * dim) + " entries, got " +
               std::to_string(data_.size()));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      data_[j * dim + j] = Complex(data_[j * dim + j].real(), 0.0);
      for (std::size_t k = j + 1; k < dim; ++k) {
        const Complex h = 0.5 * (data_[j * dim + k] + std::conj(data_[k * dim + j]));
        data_[j * dim + k] = h;
        data_[k * dim + j] = std::conj(h);
      }
    }
  }

  static HermitianMatrix identity(std::size_t dim) {
    HermitianMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j) m.data_[j * dim + j] = 1.0;
    return m;
  }

  static HermitianMatrix diagonal(std::span<const double> values) {
    HermitianMatrix m(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      m.data_[j * values.size() + j] = values[j];
    }
    return m;
  }

  /// |v><v| (not normalized).
  static HermitianMatrix outer(std::span<const Complex> v) {
    const std::size_t d = v.size();
    HermitianMatrix m(d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) m.data_[j * d + k] = v[j] * std::conj(v[k]);
    }
    return m;
  }

  /// Largest |M_jk - conj(M_kj)| of raw row-major entries.
  static double hermiticity_defect(std::size_t dim, std::span<const Complex> raw) {
    double defect = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = j; k < dim; ++k) {
        defect = std::max(defect, std::abs(raw[j * dim + k] - std::conj(raw[k * dim + j])));
      }
    }
    return defect;
  }

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t j, std::size_t k) const { return data_[j * dim_ + k]; }
  std::span<const Complex> data() const { return data_; }

  double trace() const {
    CompensatedSum s;
    for (std::size_t j = 0; j < dim_; ++j) s.add(data_[j * dim_ + j].real());
    return s.value();
  }

  double max_abs_entry() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_diagonal() const {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        if (j != k && data_[j * dim_ + k] != Complex(0.0, 0.0)) return false;
      }
    }
    return true;
  }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    HermitianMatrix r(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same_dim(a, b);
    HermitianMatrix r(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a) { return -1.0 * a; }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    HermitianMatrix r(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
    return r;
  }

  /// a*A - b*B without temporaries.
  static HermitianMatrix combination(double a, const HermitianMatrix& x, double b,
                                     const HermitianMatrix& y) {
    check_same_dim(x, y);
    HermitianMatrix r(x.dim_);
    for (std::size_t i = 0; i < x.data_.size(); ++i) {
      r.data_[i] = a * x.data_[i] + b * y.data_[i];
    }
    return r;
  }

 private:
  static void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim_ != b.dim_) {
      fail(ErrorCode::invalid_input, "dimension mismatch: " + std::to_string(a.dim_) +
                                         " vs " + std::to_string(b.dim_));
    }
  }

  friend HermitianMatrix kron(const HermitianMatrix&, const HermitianMatrix&, std::size_t);

  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Re Tr(AB) = sum_jk A_jk conj(B_jk) for Hermitian A, B.
inline double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::invalid_input, "trace_product: dimension mismatch");
  CompensatedSum s;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.add(x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
  }
  return s.value();
}

/// Raw eigenpairs, eigenvalues descending. Vector k occupies
/// vectors[k*dim, (k+1)*dim).
struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<Complex> vectors;
  /// For diagonal input: basis index carrying eigenvalue k.
  std::vector<std::size_t> basis_index;

  std::span<const Complex> vector(std::size_t k) const {
    return std::span<const Complex>(vectors).subspan(k * dim, dim);
  }
};

namespace detail {

inline EigenSystem sorted_system(std::size_t dim, std::vector<double> values,
                                 std::vector<Complex> columns_as_rows_k,
                                 bool have_vectors) {
  // columns_as_rows_k holds eigenvector k contiguously at [k*dim, (k+1)*dim)
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  EigenSystem sys;
  sys.dim = dim;
  sys.values.resize(dim);
  if (have_vectors) sys.vectors.resize(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    sys.values[k] = values[order[k]];
    if (have_vectors) {
      std::copy_n(columns_as_rows_k.begin() + static_cast<std::ptrdiff_t>(order[k] * dim), dim,
                  sys.vectors.begin() + static_cast<std::ptrdiff_t>(k * dim));
    }
  }
  return sys;
}

inline EigenSystem diagonal_system(const HermitianMatrix& h, bool want_vectors) {
  const std::size_t n = h.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h(a, a).real() > h(b, b).real();
  });
  EigenSystem sys;
  sys.dim = n;
  sys.values.resize(n);
  sys.basis_index = order;
  if (want_vectors) sys.vectors.assign(n * n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    sys.values[k] = h(order[k], order[k]).real();
    if (want_vectors) sys.vectors[k * n + order[k]] = 1.0;
  }
  return sys;
}

}  // namespace detail

/// Cyclic Jacobi diagonalization; sweeps until the off-diagonal Frobenius
/// mass drops below 1e-14 * ||H||_F.
inline EigenSystem jacobi_eigensystem(const HermitianMatrix& h, bool want_vectors = true) {
  const std::size_t n = h.dim();
  std::vector<Complex> a(h.data().begin(), h.data().end());
  std::vector<Complex> v;
  if (want_vectors) {
    v.assign(n * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  const double target = 1e-14 * h.frobenius_norm();
  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) s += 2.0 * std::norm(a[j * n + k]);
    }
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_mass() > target) {
    if (++sweep > kJacobiMaxSweeps) {
      fail(ErrorCode::no_convergence,
           "Jacobi eigensolver did not converge after " + std::to_string(kJacobiMaxSweeps) +
               " sweeps (dim " + std::to_string(n) + ", off-diagonal mass " +
               std::to_string(off_mass()) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase_conj = std::conj(apq) / r;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, q): diag(1, e^{-i phi}) * [[c, s], [-s, c]]
        const Complex u00 = c;
        const Complex u01 = s;
        const Complex u10 = -s * phase_conj;
        const Complex u11 = c * phase_conj;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = akp * u00 + akq * u10;
          a[k * n + q] = akp * u01 + akq * u11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = std::conj(u00) * apk + std::conj(u10) * aqk;
          a[q * n + k] = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v[k * n + p];
            const Complex vkq = v[k * n + q];
            v[k * n + p] = vkp * u00 + vkq * u10;
            v[k * n + q] = vkp * u01 + vkq * u11;
          }
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[i * n + i].real();
  std::vector<Complex> vecs;
  if (want_vectors) {
    vecs.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) vecs[k * n + i] = v[i * n + k];
    }
  }
  return detail::sorted_system(n, std::move(values), std::move(vecs), want_vectors);
}

/// Householder tridiagonalization + implicit QR, used above kJacobiMaxDim.
inline EigenSystem householder_eigensystem(const HermitianMatrix& h, bool want_vectors = true) {
  const std::size_t n = h.dim();
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> m(h.data().data(), static_cast<Eigen::Index>(n),
                                     static_cast<Eigen::Index>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(m), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::no_convergence,
         "tridiagonal QR eigensolver did not converge (dim " + std::to_string(n) + ")");
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  std::vector<Complex> vecs;
  if (want_vectors) {
    vecs.resize(n * n);
    const auto& ev = solver.eigenvectors();
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        vecs[k * n + i] = ev(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      }
    }
  }
  return detail::sorted_system(n, std::move(values), std::move(vecs), want_vectors);
}

inline EigenSystem eigensystem(const HermitianMatrix& h, bool want_vectors = true) {
  for (const Complex& z : h.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorCode::invalid_input, "eigensystem: matrix has a non-finite entry");
    }
  }
  if (h.is_diagonal()) return detail::diagonal_system(h, want_vectors);
  if (h.dim() <= kJacobiMaxDim) return jacobi_eigensystem(h, want_vectors);
  return householder_eigensystem(h, want_vectors);
}

/// Eigenvalues, descending.
inline std::vector<double> eigenvalues(const HermitianMatrix& h) {
  return eigensystem(h, false).values;
}

/// <v_k| M |v_k> for every eigenvector of `sys`.
inline std::vector<double> diagonal_expectations(const EigenSystem& sys, const HermitianMatrix& m) {
  const std::size_t n = sys.dim;
  std::vector<double> out(n);
  if (!sys.basis_index.empty()) {
    for (std::size_t k = 0; k < n; ++k) out[k] = m(sys.basis_index[k], sys.basis_index[k]).real();
    return out;
  }
  if (sys.vectors.empty()) fail(ErrorCode::contract_violation, "eigensystem has no vectors");
  const auto md = m.data();
  std::vector<Complex> mv(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = sys.vector(k);
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += md[i * n + j] * v[j];
      mv[i] = s;
    }
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += (std::conj(v[i]) * mv[i]).real();
    out[k] = e;
  }
  return out;
}

/// A = sum_j eigenvalues[j] * projectors[j], distinct eigenvalues descending.
struct SpectralDecomposition {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;
  std::vector<HermitianMatrix> projectors;

  double max_eigenvalue() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
  double min_eigenvalue() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }

  double spectral_norm() const {
    return std::max(std::abs(max_eigenvalue()), std::abs(min_eigenvalue()));
  }

  std::size_t rank(std::size_t j) const {
    return static_cast<std::size_t>(std::lround(projectors[j].trace()));
  }

  HermitianMatrix reconstruct() const {
    HermitianMatrix r(dim);
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      r = HermitianMatrix::combination(1.0, r, eigenvalues[j], projectors[j]);
    }
    return r;
  }
};

/// Groups raw eigenvalues whose consecutive gap is <= group_tol * max(1, ||H||)
/// into one distinct eigenvalue (their mean) with the summed projector.
inline SpectralDecomposition eigh(const HermitianMatrix& h, double group_tol = kDefaultGroupTol) {
  const EigenSystem sys = eigensystem(h, true);
  const std::size_t n = sys.dim;
  const double norm = std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));
  const double gap = group_tol * std::max(1.0, norm);

  SpectralDecomposition out;
  out.dim = n;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && sys.values[end - 1] - sys.values[end] <= gap) ++end;
    double mean = 0.0;
    std::vector<Complex> proj(n * n, Complex(0.0, 0.0));
    for (std::size_t k = start; k < end; ++k) {
      mean += sys.values[k];
      const auto v = sys.vector(k);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) proj[i * n + j] += v[i] * std::conj(v[j]);
      }
    }
    out.eigenvalues.push_back(mean / static_cast<double>(end - start));
    out.projectors.emplace_back(n, std::move(proj));
    start = end;
  }
  return out;
}

/// X^t := sum_{x > 0} x^t P_x, with eigenvalues below 1e-12 * lambda_max
/// treated as zero; t = 0 gives the support projection.
inline HermitianMatrix matrix_power_support(const SpectralDecomposition& d, double t) {
  const double top = d.max_eigenvalue();
  const double floor = -kSupportCutoff * std::max(1.0, top);
  if (d.min_eigenvalue() < floor) {
    fail(ErrorCode::invalid_input, "matrix_power_support: negative eigenvalue " +
                                       std::to_string(d.min_eigenvalue()) +
                                       " on a matrix required to be positive semidefinite");
  }
  HermitianMatrix r(d.dim);
  if (top <= 0.0) return r;
  const double cutoff = kSupportCutoff * top;
  for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
    const double x = d.eigenvalues[j];
    if (x > cutoff) r = HermitianMatrix::combination(1.0, r, std::pow(x, t), d.projectors[j]);
  }
  return r;
}

inline HermitianMatrix support_projection(const SpectralDecomposition& d) {
  return matrix_power_support(d, 0.0);
}

/// Kronecker product with index (i_A * dimB + i_B).
inline HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b,
                            std::size_t dim_cap = kDefaultDimCap) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > dim_cap) {
    fail(ErrorCode::resource_limit, "kron: product dimension " + std::to_string(da * db) +
                                        " exceeds cap " + std::to_string(dim_cap));
  }
  const std::size_t d = da * db;
  HermitianMatrix r(d);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
          r.data_[(i * db + k) * d + (j * db + l)] = aij * b(k, l);
        }
      }
    }
  }
  return r;
}

/// Fails with resource_limit when dim^n exceeds dim_cap.
inline void check_tensor_dim(std::size_t dim, std::size_t n, std::size_t dim_cap) {
  if (n == 0) fail(ErrorCode::invalid_input, "tensor_power: n must be >= 1");
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(dim);
  if (total > static_cast<double>(dim_cap)) {
    fail(ErrorCode::resource_limit, "tensor_power: dimension " + std::to_string(dim) + "^" +
                                        std::to_string(n) + " exceeds cap " +
                                        std::to_string(dim_cap));
  }
}

/// A^{(x) n}.
inline HermitianMatrix tensor_power(const HermitianMatrix& a, std::size_t n,
                                    std::size_t dim_cap = kDefaultDimCap) {
  // check before allocating anything large
  check_tensor_dim(a.dim(), n, dim_cap);
  HermitianMatrix r = a;
  for (std::size_t i = 1; i < n; ++i) r = kron(r, a, dim_cap);
  return r;
}

/// ||H||_1 = sum of |eigenvalues|.
inline double trace_norm(const HermitianMatrix& h) {
  CompensatedSum s;
  for (double x : eigenvalues(h)) s.add(std::abs(x));
  return s.value();
}

/// Tr H_+ = sum of positive eigenvalues.
inline double positive_part_trace(const HermitianMatrix& h) {
  CompensatedSum s;
  for (double x : eigenvalues(h)) {
    if (x > 0.0) s.add(x);
  }
  return s.value();
}

/// Positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  /// Eigenvalues in [-psd_tol, 0) are clamped to zero; anything lower, or a
  /// trace off by more than trace_tol, is rejected.
  static DensityMatrix from_hermitian(const HermitianMatrix& h, double psd_tol = 1e-12,
                                     double trace_tol = 1e-10) {
    const EigenSystem sys = eigensystem(h, true);
    const double lowest = sys.values.back();
    if (lowest < -psd_tol) {
      fail(ErrorCode::invalid_input,
           "state has negative eigenvalue " + std::to_string(lowest) + " (tolerance " +
               std::to_string(psd_tol) + ")");
    }
    const double tr = h.trace();
    if (std::abs(tr - 1.0) > trace_tol) {
      fail(ErrorCode::invalid_input, "state trace " + std::to_string(tr) + " differs from 1 by more than " +
                                         std::to_string(trace_tol));
    }
    if (lowest >= 0.0) return DensityMatrix(h);
    const std::size_t n = sys.dim;
    std::vector<Complex> rebuilt(n * n, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const double lam = std::max(sys.values[k], 0.0);
      if (lam == 0.0) continue;
      const auto v = sys.vector(k);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rebuilt[i * n + j] += lam * v[i] * std::conj(v[j]);
      }
    }
    return DensityMatrix(HermitianMatrix(n, std::move(rebuilt)));
  }

  static DensityMatrix diagonal(std::span<const double> probabilities) {
    return from_hermitian(HermitianMatrix::diagonal(probabilities));
  }

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(std::span<const Complex> psi) {
    double norm2 = 0.0;
    for (const Complex& z : psi) norm2 += std::norm(z);
    if (norm2 == 0.0) fail(ErrorCode::invalid_input, "pure state vector is zero");
    return DensityMatrix((1.0 / norm2) * HermitianMatrix::outer(psi));
  }

  const HermitianMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  explicit DensityMatrix(HermitianMatrix m) : matrix_(std::move(m)) {}
  HermitianMatrix matrix_;
};

}  // namespace qdisc

#endif  // QDISC_LINALG_HPP
