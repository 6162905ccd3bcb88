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

// The Poisson shot-noise transform X = sum_i xi_i h(tau_i), by simulation and
// through its Laplace transform
//
//   phi_X(s) = exp{-lambda integral_0^inf (1 - phi_xi(s h(u))) du},
//
// plus the Levy-measure identities every shot-noise law satisfies.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "snt/distributions.hpp"
#include "snt/errors.hpp"
#include "snt/interp.hpp"
#include "snt/mixing.hpp"
#include "snt/quadrature.hpp"
#include "snt/response.hpp"
#include "snt/rng.hpp"
#include "snt/sample.hpp"

namespace snt {

struct SntConfig {
  ResponseFunction response = ResponseFunction::exponential();
  double lambda = 1.0;
  double trunc_eps = 1e-8;
  std::optional<double> horizon_override;

  void validate() const {
    detail::require(lambda > 0.0 && std::isfinite(lambda), "intensity lambda must be > 0");
    detail::require(trunc_eps > 0.0 && trunc_eps <= 1e-3, "trunc_eps must lie in (0, 1e-3]");
    if (horizon_override) {
      detail::require(*horizon_override > 0.0 && std::isfinite(*horizon_override), "horizon must be > 0");
    }
  }
};

// Largest expected number of shots per realization the simulator accepts
// when it chooses the horizon itself.
inline constexpr double kMaxExpectedShots = 1e6;

// T with lambda integral_T^inf h <= trunc_eps * lambda integral h, or the override.
inline double truncation_horizon(const SntConfig& cfg) {
  cfg.validate();
  if (cfg.horizon_override) return *cfg.horizon_override;
  return cfg.response.horizon(cfg.trunc_eps);
}

inline std::string join_messages(const std::vector<std::string>& m) {
  std::string out;
  for (const auto& s : m) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

// h on [0, T]: pointwise when cheap, otherwise a monotone cubic table of
// log h built from the inverse on a log-spaced level grid.
class ResponseEvaluator {
 public:
  ResponseEvaluator(const ResponseFunction& h, double horizon) : h_(&h) {
    if (h.has_closed_form()) return;
    const double floor = h.eval(horizon);
    if (!(floor > 0.0)) return;
    const double top = h.h0();
    constexpr int nodes = 20001;
    const double span = std::log(top / floor) * (1.0 + 1e-9) + 1e-9;
    std::vector<double> u;
    std::vector<double> log_h;
    u.reserve(nodes);
    log_h.reserve(nodes);
    for (int k = 0; k < nodes; ++k) {
      const double level = std::log(top) - span * k / (nodes - 1);
      const double uk = k == 0 ? 0.0 : h.inverse(std::exp(level));
      if (!u.empty() && !(uk > u.back())) continue;
      u.push_back(uk);
      log_h.push_back(level);
    }
    if (u.size() >= 2) table_ = MonotoneCubic(std::move(u), std::move(log_h));
  }

  double operator()(double u) const {
    if (!table_ || u > table_->back()) return h_->eval(u);
    return std::exp((*table_)(u));
  }

 private:
  const ResponseFunction* h_;
  std::optional<MonotoneCubic> table_;
};

namespace detail {

template <class Mark>
EmpiricalSample simulate_shot_noise(const SntConfig& cfg, std::size_t n, std::uint64_t seed, Mark&& mark,
                                    EmpiricalSample::Provenance prov) {
  const double horizon = truncation_horizon(cfg);
  const double expected = cfg.lambda * horizon;
  if (!cfg.horizon_override && expected > kMaxExpectedShots) {
    throw validation_error("truncation horizon " + short_number(horizon) + " needs ~" + short_number(expected) +
                           " shots per draw; pass an explicit horizon");
  }
  const ResponseEvaluator h(cfg.response, horizon);
  auto values = chunked_draws(n, seed, [&](Engine& rng) {
    std::poisson_distribution<long long> count(expected);
    const long long k = count(rng);
    double sum = 0.0;
    for (long long i = 0; i < k; ++i) {
      const double tau = horizon * uniform_open(rng);
      const double xi = mark(rng);
      if (xi != 0.0) sum += xi * h(tau);
    }
    return sum;
  });
  prov["response"] = cfg.response.name();
  prov["lambda"] = short_number(cfg.lambda);
  prov["trunc_eps"] = short_number(cfg.trunc_eps);
  prov["horizon"] = short_number(horizon);
  prov["n"] = std::to_string(n);
  return EmpiricalSample(std::move(values), seed, std::move(prov));
}

inline void check_simulation_input(const SntConfig& cfg) {
  cfg.validate();
  const ValidationReport rep = validate(cfg.response, cfg.lambda);
  if (!rep.admissible()) throw validation_error(join_messages(rep.messages));
}

}  // namespace detail

// n realizations of the shot noise with marks drawn from spec.
inline EmpiricalSample sample_snt(const DistSpec& spec, const SntConfig& cfg, std::size_t n, std::uint64_t seed) {
  detail::require(n >= 1, "sample size must be >= 1");
  detail::check_simulation_input(cfg);
  if (std::isinf(mean(spec)) && !cfg.horizon_override) {
    throw validation_error("input " + spec.key() + " has infinite mean; an explicit horizon is required");
  }
  return detail::simulate_shot_noise(cfg, n, seed, [&](Engine& rng) { return draw(spec, rng); },
                                     {{"input", spec.key()}});
}

// Marks resampled with replacement from an empirical sample.
inline EmpiricalSample sample_snt(const EmpiricalSample& input, const SntConfig& cfg, std::size_t n,
                                  std::uint64_t seed) {
  detail::require(n >= 1, "sample size must be >= 1");
  detail::require(!input.empty(), "input sample is empty");
  detail::check_simulation_input(cfg);
  const auto& v = input.values();
  return detail::simulate_shot_noise(
      cfg, n, seed,
      [&](Engine& rng) {
        std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
        return v[pick(rng)];
      },
      {{"input", "empirical"}});
}

// ---------------------------------------------------------------------------
// Transform residuals

struct ResidualPoint {
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  bool converged = true;
};

inline std::vector<double> logspace(double lo, double hi, std::size_t count) {
  detail::require(lo > 0.0 && hi >= lo && count >= 1, "logspace needs 0 < lo <= hi and count >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

inline constexpr quad::Options kResidualQuadrature{1e-10, 1e-14, 1'000'000};

// lambda integral_0^inf G(h(u)) du for G(0) = 0.
template <class G>
quad::Result shot_integral(const ResponseFunction& h, double lambda, G&& g,
                           const quad::Options& opt = kResidualQuadrature) {
  quad::Result r;
  if (h.has_image()) {
    r = h.image().integrate(g, opt);
  } else {
    auto body = [&](double u) { return g(h.eval(u)); };
    r = quad::integrate_to_infinity(body, 0.0, 1.0, opt);
  }
  r.value *= lambda;
  return r;
}

// |phi(s) - exp{-lambda integral (1 - phi(s h(u))) du}| at each s.
inline std::vector<ResidualPoint> lst_residual(const DistSpec& spec, const SntConfig& cfg,
                                               const std::vector<double>& s_grid) {
  cfg.validate();
  std::vector<ResidualPoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    detail::require(s >= 0.0, "transform arguments must be non-negative");
    ResidualPoint p;
    p.s = s;
    p.lhs = lst(spec, s);
    if (s == 0.0) {
      p.rhs = 1.0;
    } else {
      const auto r = shot_integral(cfg.response, cfg.lambda,
                                   [&](double y) { return lst_complement(spec, s * y); });
      p.rhs = std::exp(-r.value);
      p.converged = r.converged;
    }
    p.residual = std::abs(p.lhs - p.rhs);
    out.push_back(p);
  }
  return out;
}

inline double max_residual(const std::vector<ResidualPoint>& pts) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, p.residual);
  return m;
}

// ---------------------------------------------------------------------------
// Levy measure

// M(x, inf) = lambda integral_0^inf mu(x / h(u), inf) du.
inline double levy_tail(const DistSpec& spec, const SntConfig& cfg, double x) {
  cfg.validate();
  detail::require(x > 0.0, "Levy tail argument must be > 0");
  auto g = [&](double y) { return y > 0.0 ? tail(spec, x / y) : 0.0; };
  const auto r = shot_integral(cfg.response, cfg.lambda, g, {1e-12, 1e-16, 1'000'000});
  if (!r.converged) throw numerical_error("Levy tail quadrature did not converge at x = " + detail::short_number(x));
  return r.value;
}

struct LevyTail {
  std::function<double(double)> eval;
  std::string source;

  double operator()(double x) const { return eval(x); }
};

inline LevyTail make_levy_tail(const DistSpec& spec, const SntConfig& cfg) {
  return {[spec, cfg](double x) { return levy_tail(spec, cfg, x); },
          spec.key() + " | " + cfg.response.name() + " | lambda=" + detail::short_number(cfg.lambda)};
}

struct GridCheck {
  double step = 0.0;
  double x_max = 0.0;
  double max_residual = 0.0;
  double at = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

// K_j = integral_0^{x_j} v M(dv) = integral_0^{x_j} T - x_j T(x_j) on x_j = j step.
inline std::vector<double> levy_first_moment(const LevyTail& levy, double step, std::size_t cells) {
  std::vector<double> t(cells + 1);
  for (std::size_t j = 1; j <= cells; ++j) t[j] = levy(step * static_cast<double>(j));
  std::vector<double> k(cells + 1, 0.0);
  const auto first = quad::integrate_endpoints(levy.eval, 0.0, step, {4.0, 1.0}, {1e-10, 1e-16, 100000});
  double integral = first.value;
  k[1] = integral - step * t[1];
  for (std::size_t j = 2; j <= cells; ++j) {
    integral += 0.5 * step * (t[j - 1] + t[j]);
    k[j] = integral - step * static_cast<double>(j) * t[j];
  }
  return k;
}

inline GridCheck grid_header(double step, double x_max) {
  detail::require(step > 0.0 && x_max > step, "grid needs 0 < step < x_max");
  GridCheck g;
  g.step = step;
  g.x_max = x_max;
  g.tolerance = 5.0 * step;
  return g;
}

}  // namespace detail

// omega[0, x] = integral_0^x mu[0, x - y] y M(dy) on a uniform grid.
inline GridCheck steutel_check(const DistSpec& spec, const LevyTail& levy, double step, double x_max) {
  if (std::isinf(mean(spec))) throw validation_error("Steutel check needs a finite-mean law");
  GridCheck g = detail::grid_header(step, x_max);
  const auto cells = static_cast<std::size_t>(std::llround(x_max / step));
  const auto k = detail::levy_first_moment(levy, step, cells);
  std::vector<double> f(cells + 1);
  std::vector<double> f_mid(cells);
  for (std::size_t j = 0; j <= cells; ++j) f[j] = cdf(spec, step * static_cast<double>(j));
  for (std::size_t j = 0; j < cells; ++j) f_mid[j] = cdf(spec, step * (static_cast<double>(j) + 0.5));
  double integral_f = 0.0;
  for (std::size_t j = 1; j <= cells; ++j) {
    integral_f += 0.5 * step * (f[j - 1] + f[j]);
    const double x = step * static_cast<double>(j);
    const double lhs = x * f[j] - integral_f;
    double rhs = 0.0;
    for (std::size_t c = 0; c < j; ++c) rhs += f_mid[j - 1 - c] * (k[c + 1] - k[c]);
    const double res = std::abs(lhs - rhs);
    if (res > g.max_residual) {
      g.max_residual = res;
      g.at = x;
    }
  }
  g.pass = g.max_residual <= g.tolerance;
  return g;
}

// integral_0^x y M(dy) = integral omega[0, x / y] nu(dy) on the same grid.
inline GridCheck feature_check(const DistSpec& spec, const LevyTail& levy, const MixingMeasure& nu, double step,
                               double x_max) {
  if (std::isinf(mean(spec))) throw validation_error("feature check needs a finite-mean law");
  GridCheck g = detail::grid_header(step, x_max);
  const auto cells = static_cast<std::size_t>(std::llround(x_max / step));
  const auto k = detail::levy_first_moment(levy, step, cells);
  for (std::size_t j = 1; j <= cells; ++j) {
    const double x = step * static_cast<double>(j);
    const double rhs = nu.expect([&](double y) { return partial_mean(spec, x / y); }, {1e-10, 1e-15, 100000});
    const double res = std::abs(k[j] - rhs);
    if (res > g.max_residual) {
      g.max_residual = res;
      g.at = x;
    }
  }
  g.pass = g.max_residual <= g.tolerance;
  return g;
}

}  // namespace snt
