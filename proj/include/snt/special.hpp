// Copyright 2026 The snt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Series evaluations behind the distribution catalogue: the Mittag-Leffler
// function on the negative half-line (positive Linnik tails) and the theta
// sums of the S2 law.

#pragma once

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "snt/errors.hpp"

namespace snt::special {

// Largest argument z accepted by mittag_leffler_neg.
inline constexpr double kMittagLefflerCap = 30.0;

// Absolute rounding-error budget of the alternating series; beyond it the
// evaluation is reported as a breakdown instead of returning noise.
inline constexpr double kMittagLefflerErrorBudget = 1e-10;

struct SeriesValue {
  double value = 0.0;
  int terms = 0;
  double max_term = 0.0;
};

// E_index(-z) = sum_k (-z)^k / Gamma(1 + index k) for index in (0, 1], z >= 0.
// Neumaier-compensated summation in extended precision; stops once a
// decreasing term falls below 1e-16 of the partial sum.
inline SeriesValue mittag_leffler_neg_series(double index, double z) {
  detail::require(index > 0.0 && index <= 1.0, "Mittag-Leffler index must lie in (0, 1]");
  detail::require(z >= 0.0, "Mittag-Leffler argument must be non-negative");
  if (z > kMittagLefflerCap) {
    throw numerical_error("Mittag-Leffler series breakdown: argument " + std::to_string(z) +
                          " exceeds cap " + std::to_string(kMittagLefflerCap));
  }
  SeriesValue out;
  if (z == 0.0) {
    out.value = 1.0;
    out.terms = 1;
    out.max_term = 1.0;
    return out;
  }
  const long double lz = std::log(static_cast<long double>(z));
  const long double a = index;
  long double sum = 0.0L;
  long double comp = 0.0L;
  long double prev = 0.0L;
  long double max_term = 0.0L;
  int k = 0;
  for (; k < 100000; ++k) {
    const long double mag =
        k == 0 ? 1.0L : std::exp(static_cast<long double>(k) * lz - std::lgamma(1.0L + a * k));
    const long double term = (k % 2 == 0) ? mag : -mag;
    const long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    if (mag > max_term) max_term = mag;
    if (k > 0 && mag < prev && mag < 1e-16L * std::fabs(sum + comp)) break;
    prev = mag;
  }
  out.value = static_cast<double>(sum + comp);
  out.terms = k + 1;
  out.max_term = static_cast<double>(max_term);
  const double rounding = out.max_term * static_cast<double>(LDBL_EPSILON) * 8.0;
  if (rounding > kMittagLefflerErrorBudget) {
    throw numerical_error("Mittag-Leffler series breakdown: cancellation error ~" +
                          std::to_string(rounding) + " at argument " + std::to_string(z));
  }
  return out;
}

inline double mittag_leffler_neg(double index, double z) {
  if (index == 1.0) return std::exp(-z);
  return mittag_leffler_neg_series(index, z).value;
}

// Theta sums of the S2 law with scale delta. With a = pi^2 / delta the CDF is
//   F(x) = sum_{n in Z} (1 - 2 a n^2 x) exp(-a n^2 x),
// which converges fast for x / delta large. For small x the Poisson-summation
// dual
//   F(x) = 4 (delta / x)^{3/2} / sqrt(pi) * sum_{k>=1} k^2 exp(-delta k^2 / x)
// is used instead; it has no cancellation near the origin.
inline constexpr double kThetaSwitch = 0.35;

namespace detail {

inline double s2_tail_direct(double delta, double x) {
  const double a = std::numbers::pi * std::numbers::pi / delta;
  double sum = 0.0;
  for (int n = 1; n < 10000; ++n) {
    const double q = a * n * n * x;
    const double term = 2.0 * (2.0 * q - 1.0) * std::exp(-q);
    sum += term;
    const double qn = a * (n + 1.0) * (n + 1.0) * x;
    const double next = 2.0 * (2.0 * qn - 1.0) * std::exp(-qn);
    if (std::abs(next) < 1e-15 * std::abs(sum)) break;
  }
  return sum;
}

inline double s2_cdf_dual(double delta, double x) {
  const double r = delta / x;
  double sum = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double term = static_cast<double>(k) * k * std::exp(-r * k * k);
    sum += term;
    const double kn = k + 1.0;
    if (kn * kn * std::exp(-r * kn * kn) < 1e-15 * sum) break;
  }
  return 4.0 * r * std::sqrt(r) / std::sqrt(std::numbers::pi) * sum;
}

}  // namespace detail

inline double s2_cdf(double delta, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x / delta < kThetaSwitch) return detail::s2_cdf_dual(delta, x);
  return 1.0 - detail::s2_tail_direct(delta, x);
}

inline double s2_tail(double delta, double x) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x / delta < kThetaSwitch) return 1.0 - detail::s2_cdf_dual(delta, x);
  return detail::s2_tail_direct(delta, x);
}

// k(x) = 2 sum_{n>=1} exp(-pi^2 n^2 x / delta); the S2 Levy density is k(x)/x.
inline double s2_levy_k(double delta, double x) {
  const double a = std::numbers::pi * std::numbers::pi / delta;
  if (x / delta >= kThetaSwitch) {
    double sum = 0.0;
    for (int n = 1; n < 10000; ++n) {
      const double term = std::exp(-a * n * n * x);
      sum += term;
      if (std::exp(-a * (n + 1.0) * (n + 1.0) * x) < 1e-16 * sum) break;
    }
    return 2.0 * sum;
  }
  // sum_{n in Z} exp(-a n^2 x) = sqrt(delta / (pi x)) sum_{k in Z} exp(-delta k^2 / x)
  const double r = delta / x;
  double sum = 1.0;
  for (int k = 1; k < 10000; ++k) {
    const double term = 2.0 * std::exp(-r * k * k);
    sum += term;
    if (2.0 * std::exp(-r * (k + 1.0) * (k + 1.0)) < 1e-16 * sum) break;
  }
  return std::sqrt(r / std::numbers::pi) * sum - 1.0;
}

// log(sinh(t) / t) for t >= 0, accurate near zero.
inline double log_sinhc(double t) {
  if (t < 0.5) {
    // sinh(t)/t - 1 = sum_{k>=1} t^{2k} / (2k+1)!
    const double t2 = t * t;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= t2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::log1p(sum);
  }
  return t - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * t)) - std::log(t);
}

}  // namespace snt::special
