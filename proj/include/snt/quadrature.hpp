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

// Adaptive quadrature used by every numerical path in the library.
//
// The workhorse is a globally adaptive 15-point Gauss-Kronrod rule: the
// interval with the largest error estimate is bisected until the summed
// estimate meets max(abs_tol, rel_tol * |I|). Integrable algebraic endpoint
// singularities are removed before refinement by a power substitution
// x = a + (c - a) t^p (default p = 2, i.e. x = w^2), and half-lines are
// mapped onto [0, 1) with x = a + L t / (1 - t).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace snt::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_subdivisions = 1'000'000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    evaluations += o.evaluations;
    return *this;
  }
};

// Substitution powers applied at the two ends of a finite interval.
// A power of 1 leaves that end untouched.
struct Endpoints {
  double lower_power = 2.0;
  double upper_power = 2.0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) {
    err = std::max(eps * 50 * resabs, err);
  }
  if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
  return {a, b, resk * half, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (a == b) return out;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<detail::Segment> heap;
  heap.push_back(detail::kronrod15(f, a, b));
  out.evaluations = 15;
  double total = heap.front().value;
  double total_err = heap.front().error;
  std::size_t subdivisions = 0;
  const double min_width = 64 * std::numeric_limits<double>::epsilon();

  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (subdivisions >= opt.max_subdivisions) {
      out.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const detail::Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a <= min_width * std::max(1.0, std::abs(mid)) ||
        !std::isfinite(worst.error)) {
      // Cannot refine further; keep the segment but stop.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      out.converged = std::isfinite(total) && std::isfinite(worst.error) &&
                      total_err <= 1e3 * std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
      break;
    }
    const detail::Segment left = detail::kronrod15(f, worst.a, mid);
    const detail::Segment right = detail::kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    // Re-sum periodically to shed accumulated cancellation in the running totals.
    if (subdivisions % 256 == 0) {
      total = 0.0;
      total_err = 0.0;
      for (const auto& s : heap) {
        total += s.value;
        total_err += s.error;
      }
    }
  }
  total = 0.0;
  total_err = 0.0;
  for (const auto& s : heap) {
    total += s.value;
    total_err += s.error;
  }
  out.value = sign * total;
  out.error = total_err;
  if (!std::isfinite(out.value)) out.converged = false;
  return out;
}

// Integrates f over [a, b] after removing algebraic endpoint singularities.
// The interval is split at its midpoint c; on [a, c] the map
// x = a + (c - a) t^p_lo is applied, on [c, b] x = b - (b - c) t^p_hi.
// On the upper half the integrand is evaluated as f_from_upper(b - x), so a
// caller whose singular factor is a power of (b - x) can evaluate it from the
// exact distance instead of a rounded x.
template <class F, class FU>
Result integrate_endpoints(F&& f, FU&& f_from_upper, double a, double b, Endpoints ends,
                           const Options& opt) {
  if (a == b) return {};
  const double c = 0.5 * (a + b);
  const double pl = ends.lower_power;
  const double pu = ends.upper_power;
  auto lower = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double tp = std::pow(t, pl - 1.0);
    const double x = a + (c - a) * tp * t;
    if (x <= a) return 0.0;
    return f(x) * (c - a) * pl * tp;
  };
  auto upper = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double tp = std::pow(t, pu - 1.0);
    const double d = (b - c) * tp * t;
    if (d <= 0.0) return 0.0;
    return f_from_upper(d) * (b - c) * pu * tp;
  };
  Result r = integrate(lower, 0.0, 1.0, opt);
  r += integrate(upper, 0.0, 1.0, opt);
  return r;
}

template <class F>
Result integrate_endpoints(F&& f, double a, double b, Endpoints ends = {},
                           const Options& opt = {}) {
  auto from_upper = [&](double d) {
    const double x = b - d;
    return x >= b ? 0.0 : f(x);
  };
  return integrate_endpoints(f, from_upper, a, b, ends, opt);
}

// Integrates f over [a, infinity) via x = a + scale * t / (1 - t).
template <class F>
Result integrate_to_infinity(F&& f, double a, double scale = 1.0, const Options& opt = {}) {
  auto mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    const double x = a + scale * t / one_minus;
    if (!std::isfinite(x)) return 0.0;
    return f(x) * scale / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

// Bisection for a sign change of a monotone predicate: returns the boundary
// between lo (where pred is true) and hi (where pred is false).
template <class Pred>
std::pair<double, double> bisect(Pred&& pred, double lo, double hi, double abs_tol,
                                 int max_iter = 200) {
  for (int i = 0; i < max_iter && (hi - lo) > abs_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace snt::quad
