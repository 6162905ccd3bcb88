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

// Kolmogorov-Smirnov tests with asymptotic critical values, and Monte Carlo
// estimates of Laplace transforms and exponential moments.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "snt/errors.hpp"
#include "snt/sample.hpp"

namespace snt {

inline constexpr std::size_t kKsMinimumSize = 100;

struct KsReport {
  std::string test;
  double statistic = 0.0;
  double critical = 0.0;
  std::size_t n = 0;
  std::size_t n2 = 0;
  double alpha = 0.01;
  bool pass = false;
  std::uint64_t seed = 0;
};

// c(alpha) with P(sqrt(n) D > c) ~ alpha: 1.628 at 0.01, 1.358 at 0.05.
inline double ks_coefficient(double alpha) {
  detail::require(alpha > 0.0 && alpha < 1.0, "significance level must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

template <class Cdf>
KsReport ks_one_sample(const EmpiricalSample& sample, Cdf&& cdf, double alpha = 0.01) {
  const std::size_t n = sample.size();
  detail::require(n >= kKsMinimumSize, "KS test needs at least 100 observations");
  const auto& v = sample.values();
  const double dn = static_cast<double>(n);
  double d = 0.0;
  double prev_f = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && v[j] == v[i]) ++j;
    const double f = cdf(v[i]);
    if (!(f >= 0.0 && f <= 1.0) || f < prev_f) {
      throw domain_error("reference CDF is not a non-decreasing map into [0, 1]");
    }
    prev_f = f;
    d = std::max(d, std::max(static_cast<double>(j) / dn - f, f - static_cast<double>(i) / dn));
    i = j;
  }
  KsReport rep;
  rep.test = "ks-one-sample";
  rep.statistic = d;
  rep.n = n;
  rep.alpha = alpha;
  rep.critical = ks_coefficient(alpha) / std::sqrt(dn);
  rep.pass = d < rep.critical;
  rep.seed = sample.seed();
  return rep;
}

inline KsReport ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b, double alpha = 0.01) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  detail::require(n1 >= kKsMinimumSize && n2 >= kKsMinimumSize, "KS test needs at least 100 observations per sample");
  const auto& x = a.values();
  const auto& y = b.values();
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < n1 && j < n2) {
    const double t = std::min(x[i], y[j]);
    while (i < n1 && x[i] == t) ++i;
    while (j < n2 && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  KsReport rep;
  rep.test = "ks-two-sample";
  rep.statistic = d;
  rep.n = n1;
  rep.n2 = n2;
  rep.alpha = alpha;
  rep.critical = ks_coefficient(alpha) * std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * n2));
  rep.pass = d < rep.critical;
  rep.seed = a.seed();
  return rep;
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  bool overflow = false;
};

namespace detail {

template <class F>
Estimate sample_average(const EmpiricalSample& sample, F&& f) {
  detail::require(!sample.empty(), "estimate needs a non-empty sample");
  const double n = static_cast<double>(sample.size());
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : sample.values()) {
    const double v = f(x);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  Estimate e;
  e.value = mean;
  e.std_error = sample.size() > 1 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
  return e;
}

}  // namespace detail

// Mean of exp(-s X) with its standard error.
inline Estimate empirical_lst(const EmpiricalSample& sample, double s) {
  detail::require(s >= 0.0, "LST argument must be non-negative");
  if (s == 0.0) return {1.0, 0.0, false};
  return detail::sample_average(sample, [s](double x) { return std::exp(-s * x); });
}

// Mean of exp(theta X); flags overflow when a term exceeds 1e300.
inline Estimate empirical_mgf(const EmpiricalSample& sample, double theta) {
  detail::require(theta > 0.0, "MGF argument must be > 0");
  const double limit = std::log(1e300);
  if (!sample.empty() && theta * sample.values().back() > limit) {
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), true};
  }
  return detail::sample_average(sample, [theta](double x) { return std::exp(theta * x); });
}

}  // namespace snt
