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

// Scalar numerics shared by every module: compensated and log-domain
// accumulation, one-dimensional maximization, binary entropy and the
// standard normal quantile.

#ifndef QDISC_NUMERIC_HPP
#define QDISC_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "qdisc/error.hpp"

namespace qdisc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// Streaming log(sum(exp(x_i))). Starts at log(0) = -inf.
class LogSumExp {
 public:
  void add(double log_x) {
    if (log_x == -kInf) return;
    if (log_x > max_) {
      // rescale what has been accumulated so far
      if (max_ != -kInf) {
        const double scale = std::exp(max_ - log_x);
        sum_ = sum_ * scale;
        carry_ = carry_ * scale;
      }
      max_ = log_x;
    }
    add_scaled(std::exp(log_x - max_));
  }
  double value() const {
    if (max_ == -kInf) return -kInf;
    return max_ + std::log(sum_ + carry_);
  }

 private:
  void add_scaled(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double max_ = -kInf;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  LogSumExp acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// log(exp(a) + exp(b))
inline double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// h_2(x) = -x log x - (1-x) log(1-x), natural log, with 0 log 0 = 0.
inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_binomial(double n, double k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

struct Maximum {
  double argmax;
  double value;
};

/// Golden-section search for the maximum of a unimodal function on
/// [lo, hi]; stops once the bracket is narrower than `width`.
template <class F>
Maximum golden_section_max(F&& f, double lo, double hi, double width,
                           int max_iterations = 400) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > width; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    if (!(c < d)) break;  // bracket exhausted at machine precision
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

/// Maximum of a concave (or unimodal) function on [lo, hi]: a coarse grid
/// locates the bracket, golden-section refines it. Flat maxima resolve to
/// the leftmost grid point.
template <class F>
Maximum grid_golden_max(F&& f, double lo, double hi, int grid_points = 201,
                        double width = 1e-10) {
  std::vector<double> values(static_cast<std::size_t>(grid_points));
  const double step = (hi - lo) / (grid_points - 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = i + 1 == values.size() ? hi : lo + step * i;
    values[i] = f(x);
    if (values[i] > values[best]) best = i;
  }
  Maximum result{best + 1 == values.size() ? hi : lo + step * best,
                 values[best]};
  const double left = best == 0 ? lo : lo + step * (best - 1);
  const double right =
      best + 1 >= values.size() ? hi : lo + step * (best + 1);
  if (right > left) {
    const Maximum refined = golden_section_max(f, left, right, width);
    if (refined.value > result.value) result = refined;
  }
  return result;
}

/// Standard normal CDF.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// Standard normal quantile: Acklam's rational approximation followed by
/// one Halley step against erfc.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;
    fail(ErrorCode::out_of_range, "normal_quantile: p must lie in [0, 1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

}  // namespace qdisc

#endif  // QDISC_NUMERIC_HPP
