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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "snt/errors.hpp"

namespace snt {

// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson).
// Node slopes use the three-point formula for non-uniform spacing and are
// then limited so that monotone data give a monotone interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    detail::require(n >= 2 && y_.size() == n, "interpolation needs at least two matching nodes");
    for (std::size_t i = 1; i < n; ++i) {
      detail::require(x_[i] > x_[i - 1], "interpolation nodes must be strictly increasing");
    }
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      d_[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
    }
    d_[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
    d_[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * delta[n - 2] - h[n - 2] * delta[n - 3]) /
                (h[n - 2] + h[n - 3]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        d_[i] = 0.0;
        d_[i + 1] = 0.0;
        continue;
      }
      if (d_[i] * delta[i] < 0.0) d_[i] = 0.0;
      if (d_[i + 1] * delta[i] < 0.0) d_[i + 1] = 0.0;
      const double a = d_[i] / delta[i];
      const double b = d_[i + 1] / delta[i];
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double t = 3.0 / std::sqrt(r);
        d_[i] = t * a * delta[i];
        d_[i + 1] = t * b * delta[i];
      }
    }
  }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

  // Clamped to the end values outside [front, back].
  double operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h * d_[i] + (-2 * t3 + 3 * t2) * y_[i + 1] +
           (t3 - t2) * h * d_[i + 1];
  }

  double slope_front() const { return d_.front(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace snt
