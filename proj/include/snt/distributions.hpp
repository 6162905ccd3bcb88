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

// Catalogue of the non-negative laws that appear as shot-noise fixed points:
// gamma, positive and generalized positive Linnik, S2 and its stable-time
// variant, stable subordination of any catalogue law, and point masses.
//
// Each family exposes its Laplace-Stieltjes transform (and 1 - LST computed
// without cancellation), a tail / CDF where a closed form or convergent series
// exists, its mean, and a seeded sampler.

#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "snt/errors.hpp"
#include "snt/parallel.hpp"
#include "snt/quadrature.hpp"
#include "snt/rng.hpp"
#include "snt/sample.hpp"
#include "snt/special.hpp"

namespace snt {

class DistSpec;

struct GammaLaw {
  double shape;
  double scale;
};
struct PositiveLinnikLaw {
  double index;
  double scale;
};
struct GeneralizedLinnikLaw {
  double shape;
  double scale;
  double index;
};
struct S2Law {
  double delta;
};
struct S2RhoLaw {
  double delta;
  double rho;
};
struct StableSubordinatedLaw {
  std::shared_ptr<const DistSpec> base;
  double alpha;
};
struct PointMassLaw {
  double location;
};

// A member of the catalogue with validated parameters. Gamma uses the
// (shape, scale) convention: density scale^-shape / Gamma(shape) x^(shape-1) e^(-x/scale).
class DistSpec {
 public:
  using Family = std::variant<GammaLaw, PositiveLinnikLaw, GeneralizedLinnikLaw, S2Law, S2RhoLaw,
                              StableSubordinatedLaw, PointMassLaw>;

  static DistSpec gamma(double shape, double scale) {
    detail::require(shape > 0.0 && std::isfinite(shape), "gamma shape must be > 0");
    detail::require(scale > 0.0 && std::isfinite(scale), "gamma scale must be > 0");
    return DistSpec(GammaLaw{shape, scale});
  }
  static DistSpec positive_linnik(double index, double scale) {
    detail::require(index > 0.0 && index <= 1.0, "positive Linnik index must lie in (0, 1]");
    detail::require(scale > 0.0 && std::isfinite(scale), "positive Linnik scale must be > 0");
    return DistSpec(PositiveLinnikLaw{index, scale});
  }
  static DistSpec generalized_linnik(double shape, double scale, double index) {
    detail::require(shape > 0.0 && std::isfinite(shape), "generalized Linnik shape must be > 0");
    detail::require(scale > 0.0 && std::isfinite(scale), "generalized Linnik scale must be > 0");
    detail::require(index > 0.0 && index <= 1.0, "generalized Linnik index must lie in (0, 1]");
    return DistSpec(GeneralizedLinnikLaw{shape, scale, index});
  }
  static DistSpec s2(double delta) {
    detail::require(delta > 0.0 && std::isfinite(delta), "S2 delta must be > 0");
    return DistSpec(S2Law{delta});
  }
  static DistSpec s2_rho(double delta, double rho) {
    detail::require(delta > 0.0 && std::isfinite(delta), "S2 delta must be > 0");
    detail::require(rho > 0.0 && rho < 1.0, "S2 rho must lie in (0, 1)");
    return DistSpec(S2RhoLaw{delta, rho});
  }
  static DistSpec stable_subordinated(const DistSpec& base, double alpha) {
    detail::require(alpha > 0.0 && alpha < 1.0, "stable subordination index must lie in (0, 1)");
    return DistSpec(StableSubordinatedLaw{std::make_shared<const DistSpec>(base), alpha});
  }
  static DistSpec point_mass(double location) {
    detail::require(location >= 0.0 && std::isfinite(location), "point mass location must be >= 0");
    return DistSpec(PointMassLaw{location});
  }

  const Family& family() const { return family_; }

  template <class Law>
  const Law* as() const {
    return std::get_if<Law>(&family_);
  }

  // Canonical CLI key, e.g. "gamma:0.5,0.5" or "stable-sub:s2:2,0.5".
  std::string key() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&](const auto& law) {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, GammaLaw>) {
            os << "gamma:" << law.shape << ',' << law.scale;
          } else if constexpr (std::is_same_v<T, PositiveLinnikLaw>) {
            os << "linnik:" << law.index << ',' << law.scale;
          } else if constexpr (std::is_same_v<T, GeneralizedLinnikLaw>) {
            os << "glinnik:" << law.shape << ',' << law.scale << ',' << law.index;
          } else if constexpr (std::is_same_v<T, S2Law>) {
            os << "s2:" << law.delta;
          } else if constexpr (std::is_same_v<T, S2RhoLaw>) {
            os << "s2rho:" << law.delta << ',' << law.rho;
          } else if constexpr (std::is_same_v<T, StableSubordinatedLaw>) {
            os << "stable-sub:" << law.base->key() << ',' << law.alpha;
          } else {
            os << "point:" << law.location;
          }
        },
        family_);
    return os.str();
  }

 private:
  explicit DistSpec(Family f) : family_(std::move(f)) {}
  Family family_;
};

// ---------------------------------------------------------------------------
// Laplace-Stieltjes transforms

namespace detail {

// -log of the LST; every catalogue LST is exp(-psi(s)).
inline double lst_exponent(const DistSpec& spec, double s) {
  return std::visit(
      [s](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GammaLaw>) {
          return law.shape * std::log1p(law.scale * s);
        } else if constexpr (std::is_same_v<T, PositiveLinnikLaw>) {
          return std::log1p(law.scale * std::pow(s, law.index));
        } else if constexpr (std::is_same_v<T, GeneralizedLinnikLaw>) {
          return law.shape * std::log1p(law.scale * std::pow(s, law.index));
        } else if constexpr (std::is_same_v<T, S2Law>) {
          return 2.0 * special::log_sinhc(std::sqrt(law.delta * s));
        } else if constexpr (std::is_same_v<T, S2RhoLaw>) {
          return 2.0 * special::log_sinhc(std::sqrt(law.delta * std::pow(s, law.rho)));
        } else if constexpr (std::is_same_v<T, StableSubordinatedLaw>) {
          return lst_exponent(*law.base, std::pow(s, law.alpha));
        } else {
          return law.location * s;
        }
      },
      spec.family());
}

}  // namespace detail

// phi(s) = E exp(-s X).
inline double lst(const DistSpec& spec, double s) {
  detail::require(s >= 0.0, "LST argument must be non-negative");
  if (s == 0.0) return 1.0;
  return std::exp(-detail::lst_exponent(spec, s));
}

// 1 - phi(s), without cancellation for small s.
inline double lst_complement(const DistSpec& spec, double s) {
  detail::require(s >= 0.0, "LST argument must be non-negative");
  if (s == 0.0) return 0.0;
  return -std::expm1(-detail::lst_exponent(spec, s));
}

// ---------------------------------------------------------------------------
// Tails, CDFs, means

// True when tail/cdf have a closed-form or series evaluation.
inline bool has_tail(const DistSpec& spec) {
  if (spec.as<GammaLaw>() || spec.as<PositiveLinnikLaw>() || spec.as<S2Law>() ||
      spec.as<PointMassLaw>()) {
    return true;
  }
  if (const auto* g = spec.as<GeneralizedLinnikLaw>()) return g->index == 1.0;
  return false;
}

// mu(x, infinity).
inline double tail(const DistSpec& spec, double x) {
  detail::require(x >= 0.0, "tail argument must be non-negative");
  if (std::isinf(x)) return 0.0;
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GammaLaw>) {
          return boost::math::gamma_q(law.shape, x / law.scale);
        } else if constexpr (std::is_same_v<T, PositiveLinnikLaw>) {
          if (law.index == 1.0) return std::exp(-x / law.scale);
          return special::mittag_leffler_neg(law.index, std::pow(x, law.index) / law.scale);
        } else if constexpr (std::is_same_v<T, GeneralizedLinnikLaw>) {
          if (law.index == 1.0) return boost::math::gamma_q(law.shape, x / law.scale);
          throw unsupported_error("tail of " + spec.key() + " is sampler-only");
        } else if constexpr (std::is_same_v<T, S2Law>) {
          return special::s2_tail(law.delta, x);
        } else if constexpr (std::is_same_v<T, PointMassLaw>) {
          return x < law.location ? 1.0 : 0.0;
        } else {
          throw unsupported_error("tail of " + spec.key() + " is sampler-only");
        }
      },
      spec.family());
}

// mu[0, x], right-continuous.
inline double cdf(const DistSpec& spec, double x) {
  detail::require(x >= 0.0, "CDF argument must be non-negative");
  if (std::isinf(x)) return 1.0;
  if (const auto* g = spec.as<GammaLaw>()) return boost::math::gamma_p(g->shape, x / g->scale);
  if (const auto* g = spec.as<GeneralizedLinnikLaw>(); g && g->index == 1.0) {
    return boost::math::gamma_p(g->shape, x / g->scale);
  }
  if (const auto* s = spec.as<S2Law>()) return special::s2_cdf(s->delta, x);
  if (const auto* p = spec.as<PositiveLinnikLaw>(); p && p->index == 1.0) {
    return -std::expm1(-x / p->scale);
  }
  return 1.0 - tail(spec, x);
}

inline double mean(const DistSpec& spec) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GammaLaw>) {
          return law.shape * law.scale;
        } else if constexpr (std::is_same_v<T, PositiveLinnikLaw>) {
          return law.index == 1.0 ? law.scale : inf;
        } else if constexpr (std::is_same_v<T, GeneralizedLinnikLaw>) {
          return law.index == 1.0 ? law.shape * law.scale : inf;
        } else if constexpr (std::is_same_v<T, S2Law>) {
          return law.delta / 3.0;
        } else if constexpr (std::is_same_v<T, PointMassLaw>) {
          return law.location;
        } else {
          return inf;
        }
      },
      spec.family());
}

// omega[0, t] = integral_0^t y mu(dy).
inline double partial_mean(const DistSpec& spec, double t) {
  detail::require(t >= 0.0, "partial mean argument must be non-negative");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return mean(spec);
  auto gamma_partial = [t](double shape, double scale) {
    return shape * scale * boost::math::gamma_p(shape + 1.0, t / scale);
  };
  if (const auto* g = spec.as<GammaLaw>()) return gamma_partial(g->shape, g->scale);
  if (const auto* g = spec.as<GeneralizedLinnikLaw>(); g && g->index == 1.0) {
    return gamma_partial(g->shape, g->scale);
  }
  if (const auto* p = spec.as<PositiveLinnikLaw>(); p && p->index == 1.0) {
    return gamma_partial(1.0, p->scale);
  }
  if (const auto* p = spec.as<PointMassLaw>()) return p->location <= t ? p->location : 0.0;
  // integral_0^t (mu(y, inf) - mu(t, inf)) dy
  const double tail_t = tail(spec, t);
  auto body = [&](double y) { return tail(spec, y) - tail_t; };
  const auto r = quad::integrate_endpoints(body, 0.0, t, {2.0, 1.0}, {1e-11, 1e-15, 100000});
  if (!r.converged) throw numerical_error("partial mean quadrature did not converge");
  return r.value;
}

// ---------------------------------------------------------------------------
// Samplers

// Positive strictly alpha-stable variate with LST exp(-s^alpha), alpha in (0, 1],
// by the uniform-exponential ratio (Kanter) construction.
inline double stable_draw(double alpha, Engine& rng) {
  if (alpha == 1.0) return 1.0;
  const double u = std::numbers::pi * uniform_open(rng);
  const double e = standard_exponential(rng);
  const double log_s = std::log(std::sin(alpha * u)) - std::log(std::sin(u)) / alpha +
                       (1.0 - alpha) / alpha * (std::log(std::sin((1.0 - alpha) * u)) - std::log(e));
  return std::exp(log_s);
}

namespace detail {

inline double s2_inverse_cdf(double delta, double u) {
  // Mass beyond 50 delta is below 1e-200.
  auto below = [&](double x) { return special::s2_cdf(delta, x) < u; };
  auto [lo, hi] = quad::bisect(below, 0.0, 50.0 * delta, 1e-10);
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline double draw(const DistSpec& spec, Engine& rng) {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, GammaLaw>) {
          return std::gamma_distribution<double>(law.shape, law.scale)(rng);
        } else if constexpr (std::is_same_v<T, PositiveLinnikLaw>) {
          const double e = standard_exponential(rng);
          return std::pow(law.scale * e, 1.0 / law.index) * stable_draw(law.index, rng);
        } else if constexpr (std::is_same_v<T, GeneralizedLinnikLaw>) {
          const double g = std::gamma_distribution<double>(law.shape, 1.0)(rng);
          return std::pow(law.scale * g, 1.0 / law.index) * stable_draw(law.index, rng);
        } else if constexpr (std::is_same_v<T, S2Law>) {
          return detail::s2_inverse_cdf(law.delta, uniform_open(rng));
        } else if constexpr (std::is_same_v<T, S2RhoLaw>) {
          const double v = detail::s2_inverse_cdf(law.delta, uniform_open(rng));
          return std::pow(v, 1.0 / law.rho) * stable_draw(law.rho, rng);
        } else if constexpr (std::is_same_v<T, StableSubordinatedLaw>) {
          const double theta = draw(*law.base, rng);
          return std::pow(theta, 1.0 / law.alpha) * stable_draw(law.alpha, rng);
        } else {
          return law.location;
        }
      },
      spec.family());
}

inline constexpr std::size_t kSampleChunk = 4096;

// Fills n values chunk by chunk, chunk c drawing from chunk_seed(seed, c).
// Output depends only on (seed, n), never on the worker count.
template <class Draw>
std::vector<double> chunked_draws(std::size_t n, std::uint64_t seed, Draw&& one) {
  std::vector<double> out(n);
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  parallel_for(chunks, [&](std::size_t c) {
    Engine rng(chunk_seed(seed, c));
    const std::size_t begin = c * kSampleChunk;
    const std::size_t end = std::min(n, begin + kSampleChunk);
    for (std::size_t i = begin; i < end; ++i) out[i] = one(rng);
  });
  return out;
}

inline EmpiricalSample sample(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
  detail::require(n >= 1, "sample size must be >= 1");
  auto values = chunked_draws(n, seed, [&](Engine& rng) { return draw(spec, rng); });
  return EmpiricalSample(std::move(values), seed, {{"family", spec.key()}, {"n", std::to_string(n)}});
}

inline EmpiricalSample stable_sample(double alpha, std::size_t n, std::uint64_t seed) {
  detail::require(alpha > 0.0 && alpha < 1.0, "stable index must lie in (0, 1)");
  detail::require(n >= 1, "sample size must be >= 1");
  auto values = chunked_draws(n, seed, [&](Engine& rng) { return stable_draw(alpha, rng); });
  std::ostringstream a;
  a.precision(17);
  a << alpha;
  return EmpiricalSample(std::move(values), seed,
                         {{"family", "stable:" + a.str()}, {"n", std::to_string(n)}});
}

// Levy density k(x)/x of S2(delta), with k(x) = 2 sum_{n>=1} exp(-pi^2 n^2 x / delta).
inline double s2_levy_density(double delta, double x) {
  detail::require(delta > 0.0, "S2 delta must be > 0");
  detail::require(x > 0.0, "Levy density argument must be > 0");
  return special::s2_levy_k(delta, x) / x;
}

}  // namespace snt
