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

// Response functions h: non-increasing, right-continuous weights on [0, inf).
//
// A response is held in one of three forms: a closed-form evaluator u -> h(u),
// its generalized inverse x -> h^<-(x) = inf{u : h(u) < x} on (0, b], or a
// power h^e of another response. Whenever the inverse is differentiable the
// response also carries its image measure, the push-forward of Lebesgue
// measure under h,
//
//   integral_0^inf G(h(u)) du = integral_0^b G(y) rho(y) dy,  rho = -d h^<- / dy,
//
// which turns every integral over the half-line into one over (0, b].

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snt/errors.hpp"
#include "snt/quadrature.hpp"

namespace snt {

namespace detail {

inline std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace detail

// Push-forward of Lebesgue measure on [0, inf) under the base response, with
// the power exponent of a transformed response applied to the integrand.
struct ImageMeasure {
  double upper = 1.0;
  std::function<double(double)> density;
  // Optional rho(upper - d) as a function of d, for densities singular at the upper end.
  std::function<double(double)> density_from_upper;
  std::vector<std::pair<double, double>> atoms;  // (location, weight)
  double exponent = 1.0;
  quad::Endpoints ends{4.0, 2.0};

  bool has_density() const { return static_cast<bool>(density); }

  double lift(double y) const { return exponent == 1.0 ? y : std::pow(y, exponent); }

  // integral of G(y^e) over the part of the measure with base value y < cut.
  template <class G>
  quad::Result integrate_below(G&& g, double cut, const quad::Options& opt = {}) const {
    quad::Result r;
    cut = std::min(cut, upper);
    if (density && cut > 0.0) {
      auto body = [&](double y) {
        const double d = density(y);
        if (d == 0.0) return 0.0;
        return g(lift(y)) * d;
      };
      if (cut < upper) {
        r = quad::integrate_endpoints(body, 0.0, cut, {ends.lower_power, 1.0}, opt);
      } else if (density_from_upper) {
        auto body_up = [&](double d) {
          const double v = density_from_upper(d);
          if (v == 0.0) return 0.0;
          return g(lift(upper - d)) * v;
        };
        r = quad::integrate_endpoints(body, body_up, 0.0, upper, ends, opt);
      } else {
        r = quad::integrate_endpoints(body, 0.0, upper, ends, opt);
      }
    }
    for (const auto& [a, w] : atoms) {
      if (a < cut || (cut == upper && a == upper)) r.value += w * g(lift(a));
    }
    return r;
  }

  template <class G>
  quad::Result integrate(G&& g, const quad::Options& opt = {}) const {
    return integrate_below(std::forward<G>(g), upper, opt);
  }
};

class ResponseFunction {
 public:
  enum class Form { Closed, Inverse, Power };

  using Fn = std::function<double(double)>;

  // h^<-(x) = alpha integral_x^1 z^-1 (1 - z)^(alpha - 1) dz, evaluated by quadrature.
  static ResponseFunction gamma_family(double alpha) {
    detail::require(alpha > 0.0 && std::isfinite(alpha), "gamma-family alpha must be > 0");
    ResponseFunction r;
    r.form_ = Form::Inverse;
    r.name_ = "gamma:" + detail::short_number(alpha);
    r.inverse_ = [alpha](double x) { return gamma_family_inverse(alpha, x); };
    ImageMeasure img;
    img.density = [alpha](double y) {
      return alpha * std::exp((alpha - 1.0) * std::log1p(-y)) / y;
    };
    img.density_from_upper = [alpha](double d) { return alpha * std::pow(d, alpha - 1.0) / (1.0 - d); };
    img.ends = {4.0, std::max(2.0, 1.0 / alpha)};
    r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    r.finish();
    return r;
  }

  // h^<-(x) = ln x + 2 x^(-1/2) - 2.
  static ResponseFunction s2_family() {
    ResponseFunction r;
    r.form_ = Form::Inverse;
    r.name_ = "s2";
    r.inverse_ = [](double x) {
      if (x >= 1.0) return 0.0;
      if (x <= 0.0) return std::numeric_limits<double>::infinity();
      // 2 (w - 1 - ln w) with w = x^(-1/2)
      const double d = 1.0 / std::sqrt(x) - 1.0;
      if (d < 1e-3) return 2.0 * d * d * (0.5 - d * (1.0 / 3.0 - d * (0.25 - d / 5.0)));
      return 2.0 * (d - std::log1p(d));
    };
    ImageMeasure img;
    img.density = [](double y) { return (1.0 - std::sqrt(y)) / (y * std::sqrt(y)); };
    img.ends = {4.0, 1.0};
    r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    r.finish();
    return r;
  }

  // h(u) = 1 / cosh^2(u); the gamma family at alpha = 1/2.
  static ResponseFunction sech2() {
    ResponseFunction r;
    r.form_ = Form::Closed;
    r.name_ = "sech2";
    r.closed_ = [](double u) {
      const double c = std::cosh(u);
      return 1.0 / (c * c);
    };
    r.inverse_ = [](double x) {
      if (x >= 1.0) return 0.0;
      if (x <= 0.0) return std::numeric_limits<double>::infinity();
      return std::log1p(std::sqrt(1.0 - x)) - 0.5 * std::log(x);
    };
    ImageMeasure img;
    img.density = [](double y) { return 0.5 / (y * std::sqrt(1.0 - y)); };
    img.density_from_upper = [](double d) { return 0.5 / ((1.0 - d) * std::sqrt(d)); };
    img.ends = {4.0, 2.0};
    r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    r.finish();
    return r;
  }

  static ResponseFunction exponential() {
    ResponseFunction r;
    r.form_ = Form::Closed;
    r.name_ = "exp";
    r.closed_ = [](double u) { return std::exp(-u); };
    r.inverse_ = [](double x) {
      if (x >= 1.0) return 0.0;
      if (x <= 0.0) return std::numeric_limits<double>::infinity();
      return -std::log(x);
    };
    ImageMeasure img;
    img.density = [](double y) { return 1.0 / y; };
    img.ends = {4.0, 1.0};
    r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    r.finish();
    return r;
  }

  // h(u) = 1 on [0, a), 0 beyond.
  static ResponseFunction indicator(double a) {
    detail::require(a > 0.0 && std::isfinite(a), "indicator length must be > 0");
    ResponseFunction r;
    r.form_ = Form::Closed;
    r.name_ = "indicator:" + detail::short_number(a);
    r.closed_ = [a](double u) { return u < a ? 1.0 : 0.0; };
    r.inverse_ = [a](double x) { return x >= 1.0 ? 0.0 : (x <= 0.0 ? std::numeric_limits<double>::infinity() : a); };
    ImageMeasure img;
    img.atoms = {{1.0, a}};
    r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    r.finish();
    return r;
  }

  // Custom h given pointwise. Rejected when the probe grid shows an increase.
  static ResponseFunction closed_form(std::string name, Fn h) {
    detail::require(static_cast<bool>(h), "closed-form response needs an evaluator");
    ResponseFunction r;
    r.form_ = Form::Closed;
    r.name_ = std::move(name);
    r.closed_ = std::move(h);
    r.check_monotone_probe();
    r.finish();
    return r;
  }

  // Custom h given through h^<- on (0, b]. When the density rho = -dh^<-/dy
  // is supplied the image-measure integrals are available.
  static ResponseFunction inverse_form(std::string name, Fn inverse, double b, Fn image_density = {},
                                       quad::Endpoints ends = {4.0, 2.0},
                                       std::vector<std::pair<double, double>> image_atoms = {},
                                       Fn image_density_from_upper = {}) {
    detail::require(static_cast<bool>(inverse), "inverse-form response needs an evaluator");
    detail::require(b > 0.0 && std::isfinite(b), "h(+0) must be > 0");
    ResponseFunction r;
    r.form_ = Form::Inverse;
    r.name_ = std::move(name);
    r.b_ = b;
    r.inverse_ = [inv = std::move(inverse), b](double x) {
      if (x >= b) return 0.0;
      if (x <= 0.0) return std::numeric_limits<double>::infinity();
      return inv(x);
    };
    if (image_density || !image_atoms.empty()) {
      ImageMeasure img;
      img.upper = b;
      img.density = std::move(image_density);
      img.density_from_upper = std::move(image_density_from_upper);
      img.atoms = std::move(image_atoms);
      img.ends = ends;
      r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    }
    r.check_monotone_probe();
    r.finish();
    return r;
  }

  // h^(1/gamma) for gamma in (0, 1).
  ResponseFunction power_transform(double gamma) const {
    detail::require(gamma > 0.0 && gamma < 1.0, "power transform gamma must lie in (0, 1)");
    ResponseFunction r = *this;
    r.form_ = Form::Power;
    r.name_ = "pow:" + name_ + ":" + detail::short_number(gamma);
    r.exponent_ = exponent_ / gamma;
    if (image_) {
      ImageMeasure img = *image_;
      img.exponent = r.exponent_;
      r.image_ = std::make_shared<const ImageMeasure>(std::move(img));
    }
    r.finish();
    return r;
  }

  const std::string& name() const { return name_; }
  Form form() const { return form_; }
  double exponent() const { return exponent_; }
  double h0() const { return exponent_ == 1.0 ? b_ : std::pow(b_, exponent_); }
  bool has_closed_form() const { return static_cast<bool>(closed_); }
  bool has_image() const { return static_cast<bool>(image_); }
  bool has_image_density() const { return image_ && image_->has_density(); }
  const ImageMeasure& image() const {
    if (!image_) throw unsupported_error("response " + name_ + " has no image measure");
    return *image_;
  }
  // Only point masses in the image: h is a step function.
  bool indicator_shaped() const { return image_ && !image_->has_density() && !image_->atoms.empty(); }

  // h(u).
  double eval(double u) const {
    detail::require(u >= 0.0, "response argument must be non-negative");
    return lift(base_eval(u));
  }
  double operator()(double u) const { return eval(u); }

  // h^<-(x) = inf{u : h(u) < x}; +inf for x <= 0 and 0 for x >= h(+0).
  double inverse(double x) const {
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    const double xb = exponent_ == 1.0 ? x : std::pow(x, 1.0 / exponent_);
    return base_inverse(xb);
  }

  // integral_0^inf h(u) du, +inf when divergent.
  double integral() const { return integral_; }

  // integral_T^inf h(u) du.
  double tail_integral(double t) const {
    detail::require(t >= 0.0, "tail start must be non-negative");
    if (t == 0.0 || std::isinf(integral_)) return integral_;
    if (image_) {
      const double cut = base_eval(t);
      return image_->integrate_below([](double y) { return y; }, cut, kTight).value;
    }
    auto h = [this](double u) { return eval(u); };
    return quad::integrate_to_infinity(h, t, std::max(1.0, t), kTight).value;
  }

  // Smallest T (to bisection accuracy) with integral_T^inf h <= fraction * integral h.
  double horizon(double fraction) const {
    detail::require(fraction > 0.0 && fraction < 1.0, "horizon fraction must lie in (0, 1)");
    if (std::isinf(integral_)) throw validation_error("response " + name_ + " has infinite integral");
    const double target = fraction * integral_;
    if (image_ && image_->atoms.empty()) {
      // Find the base level y* below which the image carries the target mass.
      auto below = [&](double log_y) {
        const double y = std::exp(log_y);
        return image_->integrate_below([](double v) { return v; }, y, kTight).value <= target;
      };
      auto [lo, hi] = quad::bisect(below, -740.0, std::log(b_), 1e-12);
      return base_inverse(std::exp(lo));
    }
    double hi = 1.0;
    while (tail_integral(hi) > target) {
      hi *= 2.0;
      if (hi > 1e15) throw numerical_error("horizon search for " + name_ + " did not terminate");
    }
    auto above = [&](double t) { return tail_integral(t) > target; };
    return quad::bisect(above, 0.0, hi, 1e-9 * hi).second;
  }

 private:
  static constexpr quad::Options kTight{1e-12, 1e-16, 200000};

  static double gamma_family_inverse(double alpha, double x) {
    if (x >= 1.0) return 0.0;
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    if (alpha == 1.0) return -std::log(x);
    // t = (1 - z)^alpha turns the integral into integral_0^{(1-x)^alpha} dt / (1 - t^(1/alpha)).
    const double top = std::exp(alpha * std::log1p(-x));
    auto f = [alpha](double t) {
      if (t <= 0.0) return 1.0;
      return -1.0 / std::expm1(std::log(t) / alpha);
    };
    const auto r = quad::integrate(f, 0.0, top, {1e-13, 1e-300, 100000});
    return r.value;
  }

  double lift(double v) const { return exponent_ == 1.0 ? v : std::pow(v, exponent_); }

  double base_eval(double u) const {
    if (closed_) return closed_(u);
    // sup{x : h^<-(x) > u}, bisected to 1e-12 absolute and 1e-13 relative.
    double lo = 0.0;
    double hi = b_;
    for (int i = 0; i < 400; ++i) {
      if (hi - lo <= std::min(1e-12, 1e-13 * hi)) break;
      double mid = 0.5 * (lo + hi);
      // geometric midpoints while the bracket spans several decades
      if (lo > 0.0 && hi > 1e3 * lo) mid = std::sqrt(lo * hi);
      if (lo == 0.0 && hi < 1e-3) mid = hi * 1e-3;
      if (mid <= lo || mid >= hi) break;
      if (inverse_(mid) > u) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo == 0.0 ? 0.0 : 0.5 * (lo + hi);
  }

  double base_inverse(double x) const {
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    if (inverse_) return inverse_(x);
    if (x > b_) return 0.0;
    // inf{u : h(u) < x}
    double hi = 1.0;
    while (!(closed_(hi) < x)) {
      hi *= 2.0;
      if (hi > 1e300) return std::numeric_limits<double>::infinity();
    }
    return quad::bisect([&](double u) { return !(closed_(u) < x); }, 0.0, hi, 1e-13 * hi).second;
  }

  void check_monotone_probe() const {
    if (closed_) {
      double prev = closed_(0.0);
      for (int k = -30; k <= 30; ++k) {
        const double u = std::pow(10.0, k / 10.0);
        const double v = closed_(u);
        if (!(v >= 0.0) || v > prev) {
          throw domain_error("response " + name_ + " is not non-increasing on the probe grid (u = " +
                             detail::short_number(u) + ")");
        }
        prev = v;
      }
    } else {
      double prev = std::numeric_limits<double>::infinity();
      for (int k = 1; k < 200; ++k) {
        const double x = b_ * k / 200.0;
        const double v = inverse_(x);
        if (!(v >= 0.0) || v > prev) {
          throw domain_error("inverse of response " + name_ + " is not non-increasing on the probe grid");
        }
        prev = v;
      }
    }
  }

  void finish() {
    if (closed_ && form_ != Form::Power && !inverse_) b_ = closed_(0.0);
    if (image_) {
      const auto r = image_->integrate([](double y) { return y; }, kTight);
      integral_ = r.converged ? r.value : std::numeric_limits<double>::infinity();
      return;
    }
    integral_ = closed_integral();
  }

  // Decade-by-decade integration so that slowly decaying tails are flagged.
  double closed_integral() const {
    auto h = [this](double u) { return eval(u); };
    double total = quad::integrate(h, 0.0, 1.0, kTight).value;
    double prev_inc = 0.0;
    for (int k = 0; k < 300; ++k) {
      const double a = std::pow(10.0, k);
      const double inc = quad::integrate(h, a, 10.0 * a, kTight).value;
      total += inc;
      if (total > 1e12) return std::numeric_limits<double>::infinity();
      if (k >= 3 && prev_inc > 0.0 && inc >= 0.999 * prev_inc) {
        return std::numeric_limits<double>::infinity();
      }
      if (inc <= 1e-15 * total) break;
      prev_inc = inc;
    }
    return total;
  }

  Form form_ = Form::Closed;
  std::string name_;
  Fn closed_;
  Fn inverse_;
  std::shared_ptr<const ImageMeasure> image_;
  double b_ = 1.0;
  double exponent_ = 1.0;
  double integral_ = 0.0;
};

inline ResponseFunction power_transform(const ResponseFunction& h, double gamma) {
  return h.power_transform(gamma);
}

// ---------------------------------------------------------------------------
// Validation

enum class Regime { Critical, Super, Sub, Divergent };

inline const char* regime_label(Regime r) {
  switch (r) {
    case Regime::Critical: return "=1";
    case Regime::Super: return ">1";
    case Regime::Sub: return "<1";
    case Regime::Divergent: return "divergent";
  }
  return "?";
}

inline constexpr double kRegimeTolerance = 1e-6;

struct ValidationReport {
  bool monotone = true;
  bool h0_ok = true;
  bool indicator_shaped = false;
  double integral = 0.0;
  double lambda_integral = 0.0;
  Regime regime = Regime::Critical;
  std::vector<std::string> messages;

  // Condition A holds and the shot noise is finite.
  bool admissible() const { return monotone && h0_ok && !indicator_shaped && regime != Regime::Divergent; }
};

inline ValidationReport validate(const ResponseFunction& h, double lambda) {
  ValidationReport rep;
  rep.integral = h.integral();
  rep.lambda_integral = lambda * rep.integral;

  double prev = h.eval(0.0);
  for (int k = -40; k <= 30; ++k) {
    const double u = std::pow(10.0, k / 10.0);
    const double v = h.eval(u);
    if (v > prev) rep.monotone = false;
    prev = v;
  }
  if (!rep.monotone) rep.messages.push_back("Condition A: h must be non-increasing");

  rep.h0_ok = h.h0() <= 1.0 + 1e-15;
  if (!rep.h0_ok) rep.messages.push_back("Condition A: h(+0) must not exceed 1");

  rep.indicator_shaped = h.indicator_shaped();
  if (rep.indicator_shaped) {
    rep.messages.push_back("Condition A: h must not be of the form 1_[0,a) (indicator-shaped)");
  }

  if (!(lambda > 0.0)) {
    rep.regime = Regime::Divergent;
    rep.messages.push_back("intensity lambda must be > 0");
  } else if (std::isinf(rep.integral)) {
    rep.regime = Regime::Divergent;
    rep.messages.push_back("integral of h diverges; shot noise is infinite");
  } else if (std::abs(rep.lambda_integral - 1.0) <= kRegimeTolerance) {
    rep.regime = Regime::Critical;
  } else if (rep.lambda_integral > 1.0) {
    rep.regime = Regime::Super;
    rep.messages.push_back("lambda * integral h > 1: no fixed point exists");
  } else {
    rep.regime = Regime::Sub;
    rep.messages.push_back("lambda * integral h < 1: no finite-mean fixed point; residual checks only");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Log-convexity probe

enum class Curvature { LogConvex, LogConcave, LogLinear, Mixed };

inline const char* curvature_label(Curvature c) {
  switch (c) {
    case Curvature::LogConvex: return "log-convex";
    case Curvature::LogConcave: return "log-concave";
    case Curvature::LogLinear: return "log-linear";
    case Curvature::Mixed: return "mixed";
  }
  return "?";
}

struct CurvatureReport {
  std::vector<double> u;
  std::vector<double> second_difference;
  Curvature classification = Curvature::Mixed;
};

inline constexpr double kCurvatureZero = 1e-6;

template <class H>
CurvatureReport log_convexity_probe(const H& h, const std::vector<double>& grid) {
  detail::require(!grid.empty(), "log-convexity probe needs a non-empty grid");
  CurvatureReport rep;
  std::vector<std::string> bad;
  int pos = 0;
  int neg = 0;
  for (double u : grid) {
    detail::require(u >= 0.0, "probe points must be non-negative");
    double d = 1e-2 * std::max(1.0, u);
    if (u > 0.0) d = std::min(d, 0.5 * u);
    const double lo = u > 0.0 ? u - d : u;
    const double mid = u > 0.0 ? u : u + d;
    const double hi = mid + d;
    const double fl = h(lo);
    const double fm = h(mid);
    const double fh = h(hi);
    if (!(fl > 0.0) || !(fm > 0.0) || !(fh > 0.0)) {
      bad.push_back(detail::short_number(u));
      continue;
    }
    const double sd = (std::log(fh) - 2.0 * std::log(fm) + std::log(fl)) / (d * d);
    rep.u.push_back(u);
    rep.second_difference.push_back(sd);
    if (sd > kCurvatureZero) ++pos;
    if (sd < -kCurvatureZero) ++neg;
  }
  if (!bad.empty()) {
    std::string msg = "h is not positive near probe points:";
    for (const auto& b : bad) msg += " " + b;
    throw domain_error(msg);
  }
  const int n = static_cast<int>(rep.u.size());
  if (pos == n) {
    rep.classification = Curvature::LogConvex;
  } else if (neg == n) {
    rep.classification = Curvature::LogConcave;
  } else if (pos == 0 && neg == 0) {
    rep.classification = Curvature::LogLinear;
  } else {
    rep.classification = Curvature::Mixed;
  }
  return rep;
}

}  // namespace snt
