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

// Constructing fixed points: the transform iteration
//
//   phi_0(s) = exp(-m s),  phi_n(s) = exp{-lambda integral (1 - phi_{n-1}(s h(u))) du},
//
// on a log-spaced grid, the dual perpetuity X =d eta + A X, and the atom
// equation exp(-b (1 - z)) = z.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snt/distributions.hpp"
#include "snt/engine.hpp"
#include "snt/errors.hpp"
#include "snt/interp.hpp"
#include "snt/mixing.hpp"
#include "snt/quadrature.hpp"
#include "snt/sample.hpp"

namespace snt {

struct LstGrid {
  std::vector<double> s;
  std::vector<double> phi;
  double mean = 0.0;
  int iteration = 0;
};

struct TraceRecord {
  int iteration = 0;
  double m_metric = 0.0;
  double mean_estimate = 0.0;
  bool monotone_ok = true;
};

struct ConvergenceTrace {
  std::vector<TraceRecord> records;
  bool converged = false;
};

inline constexpr std::size_t kGridPoints = 64;
inline constexpr double kGridMin = 1e-4;
inline constexpr double kGridMax = 50.0;
inline constexpr double kStopMetric = 1e-10;
inline constexpr double kMonotoneSlack = 1e-12;

inline std::vector<double> default_s_grid() { return logspace(kGridMin, kGridMax, kGridPoints); }

// sup_s |phi_a(s) - phi_b(s)| / s.
inline double m_metric(const LstGrid& a, const LstGrid& b) {
  if (a.s != b.s) throw domain_error("grids have different s values");
  double m = 0.0;
  for (std::size_t i = 0; i < a.s.size(); ++i) m = std::max(m, std::abs(a.phi[i] - b.phi[i]) / a.s[i]);
  return m;
}

// -phi'(0+) from the two smallest grid points, extrapolated linearly in s.
inline double mean_estimate(const LstGrid& grid) {
  detail::require(grid.s.size() >= 2, "mean estimate needs two grid points");
  const double s1 = grid.s[0];
  const double s2 = grid.s[1];
  const double g1 = -std::expm1(std::log(grid.phi[0])) / s1;
  const double g2 = -std::expm1(std::log(grid.phi[1])) / s2;
  return (g1 * s2 - g2 * s1) / (s2 - s1);
}

inline LstGrid grid_from(const std::function<double(double)>& phi, double mean, std::vector<double> s = {}) {
  LstGrid g;
  g.s = s.empty() ? default_s_grid() : std::move(s);
  g.phi.resize(g.s.size());
  for (std::size_t i = 0; i < g.s.size(); ++i) g.phi[i] = phi(g.s[i]);
  g.mean = mean;
  return g;
}

// Interpolates psi = -ln phi of a grid: monotone cubic in (ln s, ln psi), and
// below the grid psi(s) = m s (1 - kappa s) matched at the first node.
class GridLst {
 public:
  explicit GridLst(const LstGrid& g) : mean_(g.mean), s0_(g.s.front()) {
    std::vector<double> t(g.s.size());
    std::vector<double> l(g.s.size());
    for (std::size_t i = 0; i < g.s.size(); ++i) {
      const double psi = -std::log(g.phi[i]);
      if (!(psi > 0.0) || !std::isfinite(psi)) {
        throw numerical_error("iteration grid left (0, 1) at s = " + detail::short_number(g.s[i]));
      }
      t[i] = std::log(g.s[i]);
      l[i] = std::log(psi);
      if (i > 0 && !(l[i] >= l[i - 1])) {
        throw numerical_error("iteration grid is not monotone at s = " + detail::short_number(g.s[i]));
      }
    }
    psi0_ = std::exp(l.front());
    kappa_ = (1.0 - psi0_ / (mean_ * s0_)) / s0_;
    interp_ = MonotoneCubic(std::move(t), std::move(l));
  }

  double psi(double s) const {
    if (s <= 0.0) return 0.0;
    if (s < s0_) return mean_ * s * (1.0 - kappa_ * s);
    return std::exp(interp_(std::log(s)));
  }

  // 1 - phi(s)
  double complement(double s) const { return -std::expm1(-psi(s)); }

 private:
  double mean_;
  double s0_;
  double psi0_ = 0.0;
  double kappa_ = 0.0;
  MonotoneCubic interp_;
};

struct IterationResult {
  LstGrid grid;
  ConvergenceTrace trace;
};

// Applies the transform `steps` times starting from `start` (default exp(-m s)).
// The first step integrates the exact starting transform; later steps the
// interpolated grid.
inline IterationResult iterate(const SntConfig& cfg, double m, int steps,
                               std::function<double(double)> start_complement = {}) {
  cfg.validate();
  detail::require(m > 0.0 && std::isfinite(m), "target mean must be > 0");
  detail::require(steps >= 0, "step count must be >= 0");
  const ValidationReport rep = validate(cfg.response, cfg.lambda);
  if (rep.regime != Regime::Critical) {
    throw validation_error("iteration needs lambda * integral h = 1 (got " +
                           detail::short_number(rep.lambda_integral) + ")");
  }
  IterationResult out;
  if (start_complement) {
    out.grid = grid_from([&](double s) { return 1.0 - start_complement(s); }, m);
  } else {
    start_complement = [m](double s) { return -std::expm1(-m * s); };
    out.grid = grid_from([m](double s) { return std::exp(-m * s); }, m);
  }

  std::function<double(double)> complement = start_complement;
  std::optional<GridLst> interp;
  for (int n = 1; n <= steps; ++n) {
    LstGrid next = out.grid;
    next.iteration = n;
    std::vector<double> values(next.s.size());
    parallel_for(next.s.size(), [&](std::size_t i) {
      const double s = next.s[i];
      const auto r = shot_integral(cfg.response, cfg.lambda, [&](double y) { return complement(s * y); });
      if (!r.converged) throw numerical_error("iteration quadrature failed at s = " + detail::short_number(s));
      values[i] = std::exp(-r.value);
    });
    next.phi = values;
    TraceRecord rec;
    rec.iteration = n;
    rec.m_metric = m_metric(next, out.grid);
    rec.mean_estimate = mean_estimate(next);
    for (std::size_t i = 0; i < next.s.size(); ++i) {
      if (next.phi[i] < out.grid.phi[i] - kMonotoneSlack) rec.monotone_ok = false;
    }
    out.trace.records.push_back(rec);
    out.grid = std::move(next);
    if (rec.m_metric < kStopMetric) {
      out.trace.converged = true;
      break;
    }
    interp.emplace(out.grid);
    complement = [&interp](double s) { return interp->complement(s); };
  }
  return out;
}

// ---------------------------------------------------------------------------
// Perpetuity

// n chains X <- eta + A X from X_0 = E eta, eta ~ base and A ~ nu fresh at each step.
inline EmpiricalSample perpetuity_sample(const MixingMeasure& nu, const DistSpec& base, int steps, std::size_t n,
                                         std::uint64_t seed) {
  if (nu.is_unit_atom()) throw validation_error("nu = delta_1 is excluded: the perpetuity has no solution");
  detail::require(steps >= 1, "perpetuity needs at least one step");
  detail::require(n >= 1, "sample size must be >= 1");
  const double m = mean(base);
  if (std::isinf(m)) throw validation_error("perpetuity needs a finite-mean base law");
  auto values = chunked_draws(n, seed, [&](Engine& rng) {
    double x = m;
    for (int k = 0; k < steps; ++k) {
      const double eta = draw(base, rng);
      const double a = nu.draw(rng);
      x = eta + a * x;
    }
    return x;
  });
  return EmpiricalSample(std::move(values), seed,
                         {{"nu", nu.name()}, {"base", base.key()}, {"steps", std::to_string(steps)},
                          {"n", std::to_string(n)}});
}

// ---------------------------------------------------------------------------
// Atom equation

struct AtomResult {
  bool interior = false;
  double root = 1.0;
  int iterations = 0;
};

// Root of exp(-b (1 - z)) = z inside (0, 1); z = 1 is always a root and an
// interior one exists iff b > 1.
inline AtomResult atom_solver(double b) {
  detail::require(b > 0.0 && std::isfinite(b), "atom parameter b must be > 0");
  AtomResult r;
  if (b <= 1.0) return r;
  auto f = [b](double z) { return std::exp(-b * (1.0 - z)) - z; };
  // f > 0 at 0, f < 0 at the minimum 1 - ln(b) / b
  double lo = 0.0;
  double hi = 1.0 - std::log(b) / b;
  for (; r.iterations < 200; ++r.iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.interior = true;
  r.root = 0.5 * (lo + hi);
  return r;
}

// ---------------------------------------------------------------------------
// CSV exports

inline std::string trace_csv(const ConvergenceTrace& trace) {
  std::string out = "iteration,m_metric,mean_estimate,monotone_ok\n";
  for (const auto& r : trace.records) {
    out += std::to_string(r.iteration) + "," + format_double(r.m_metric) + "," + format_double(r.mean_estimate) +
           "," + (r.monotone_ok ? "true" : "false") + "\n";
  }
  return out;
}

inline std::string grid_csv(const LstGrid& grid) {
  std::string out = "s,phi\n";
  for (std::size_t i = 0; i < grid.s.size(); ++i) {
    out += format_double(grid.s[i]) + "," + format_double(grid.phi[i]) + "\n";
  }
  return out;
}

}  // namespace snt
