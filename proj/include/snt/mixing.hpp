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

// Mixing measures nu on (0, b], the law of the multiplier A in the
// perpetuity X =d eta + A X, and their duality with response functions:
//
//   nu(dz) = -lambda z h^<-(dz),      h^<-(x) = integral_[x, b] z^-1 nu(dz).

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "snt/errors.hpp"
#include "snt/quadrature.hpp"
#include "snt/response.hpp"
#include "snt/rng.hpp"

namespace snt {

class MixingMeasure {
 public:
  enum class Kind { Beta1, Uniform, S2, Density, Discrete };
  using Fn = std::function<double(double)>;

  // Beta(1, alpha): density alpha (1 - z)^(alpha - 1) on (0, 1).
  static MixingMeasure beta1(double alpha) {
    detail::require(alpha > 0.0 && std::isfinite(alpha), "Beta(1, alpha) needs alpha > 0");
    MixingMeasure m(Kind::Beta1, "beta:1," + detail::short_number(alpha), 1.0);
    m.param_ = alpha;
    m.density_ = [alpha](double z) { return alpha * std::exp((alpha - 1.0) * std::log1p(-z)); };
    m.density_from_upper_ = [alpha](double d) { return alpha * std::pow(d, alpha - 1.0); };
    m.ends_ = {4.0, std::max(2.0, 1.0 / alpha)};
    return m;
  }

  static MixingMeasure uniform() {
    MixingMeasure m(Kind::Uniform, "uniform", 1.0);
    m.density_ = [](double) { return 1.0; };
    m.ends_ = {4.0, 1.0};
    return m;
  }

  // Density z^(-1/2) - 1 on (0, 1).
  static MixingMeasure s2() {
    MixingMeasure m(Kind::S2, "s2", 1.0);
    m.density_ = [](double z) { return 1.0 / std::sqrt(z) - 1.0; };
    m.ends_ = {4.0, 1.0};
    return m;
  }

  // Arbitrary density on (0, upper]; its mass must be 1 to within 1e-6.
  // density_from_upper(d), when given, is the density at upper - d.
  static MixingMeasure from_density(std::string name, Fn density, double upper,
                                    quad::Endpoints ends = {4.0, 2.0},
                                    std::vector<std::pair<double, double>> atoms = {},
                                    Fn density_from_upper = {}) {
    detail::require(static_cast<bool>(density), "density measure needs an evaluator");
    detail::require(upper > 0.0 && upper <= 1.0, "mixing measure support must lie in (0, 1]");
    MixingMeasure m(Kind::Density, std::move(name), upper);
    m.density_ = std::move(density);
    m.density_from_upper_ = std::move(density_from_upper);
    m.ends_ = ends;
    m.atoms_ = std::move(atoms);
    m.check_atoms();
    m.check_mass();
    m.build_table();
    return m;
  }

  // Finitely many atoms (location in (0, 1], weight > 0) with unit total weight.
  static MixingMeasure discrete(std::vector<std::pair<double, double>> atoms, std::string name = "") {
    detail::require(!atoms.empty(), "discrete measure needs at least one atom");
    double upper = 0.0;
    for (const auto& a : atoms) upper = std::max(upper, a.first);
    if (name.empty()) {
      name = "discrete:";
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) name += ";";
        name += detail::short_number(atoms[i].first) + "@" + detail::short_number(atoms[i].second);
      }
    }
    MixingMeasure m(Kind::Discrete, std::move(name), upper > 0.0 ? upper : 1.0);
    m.atoms_ = std::move(atoms);
    m.check_atoms();
    m.check_mass();
    return m;
  }

  static MixingMeasure atom(double b) { return discrete({{b, 1.0}}, "atom:" + detail::short_number(b)); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double upper() const { return upper_; }
  bool has_density() const { return static_cast<bool>(density_); }
  const Fn& density() const { return density_; }
  // Density at upper - d, evaluated without rounding d away.
  double density_at_distance(double d) const {
    return density_from_upper_ ? density_from_upper_(d) : density_(upper_ - d);
  }
  const Fn& density_from_upper() const { return density_from_upper_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
  const quad::Endpoints& ends() const { return ends_; }

  // The excluded degenerate case nu = delta_1.
  bool is_unit_atom() const {
    return !density_ && atoms_.size() == 1 && atoms_[0].first == 1.0;
  }

  template <class G>
  quad::Result expect_result(G&& g, const quad::Options& opt = {}) const {
    quad::Result r;
    if (density_) {
      auto body = [&](double z) { return g(z) * density_(z); };
      auto body_up = [&](double d) { return g(upper_ - d) * density_at_distance(d); };
      r = quad::integrate_endpoints(body, body_up, 0.0, upper_, ends_, opt);
    }
    for (const auto& [a, w] : atoms_) r.value += w * g(a);
    return r;
  }

  // integral G(z) nu(dz).
  template <class G>
  double expect(G&& g, const quad::Options& opt = {}) const {
    const auto r = expect_result(std::forward<G>(g), opt);
    if (!r.converged) throw numerical_error("quadrature against " + name_ + " did not converge");
    return r.value;
  }

  double total_mass() const {
    return expect_result([](double) { return 1.0; }, {1e-12, 1e-15, 100000}).value;
  }

  double draw(Engine& rng) const {
    const double u = uniform_open(rng);
    switch (kind_) {
      case Kind::Beta1:
        return -std::expm1(std::log(u) / param_);
      case Kind::Uniform:
        return u;
      case Kind::S2: {
        const double r = u / (1.0 + std::sqrt(1.0 - u));
        return r * r;
      }
      case Kind::Discrete:
      case Kind::Density:
        return draw_tabulated(u);
    }
    return 0.0;
  }

 private:
  MixingMeasure(Kind kind, std::string name, double upper)
      : kind_(kind), name_(std::move(name)), upper_(upper) {}

  void check_atoms() const {
    for (const auto& [a, w] : atoms_) {
      detail::require(a > 0.0 && a <= upper_ && a <= 1.0, "mixing atoms must lie in (0, b]");
      detail::require(w > 0.0, "mixing atom weights must be > 0");
    }
  }

  void check_mass() const {
    const double mass = total_mass();
    if (!(std::abs(mass - 1.0) <= 1e-6)) {
      throw validation_error("mixing measure " + name_ + " has total mass " +
                             detail::short_number(mass) + ", not 1");
    }
  }

  // Cumulative masses on a grid clustered at 0, followed by the atoms.
  void build_table() {
    if (!density_) return;
    constexpr int cells = 4096;
    nodes_.resize(cells + 1);
    cum_.assign(cells + 1, 0.0);
    for (int k = 0; k <= cells; ++k) {
      const double t = static_cast<double>(k) / cells;
      nodes_[k] = upper_ * t * t;
    }
    nodes_[cells] = upper_;
    const quad::Options opt{1e-10, 1e-15, 10000};
    for (int k = 0; k < cells; ++k) {
      const quad::Endpoints e{k == 0 ? ends_.lower_power : 1.0,
                              k == cells - 1 ? ends_.upper_power : 1.0};
      const double gap = upper_ - nodes_[k + 1];
      auto up = [&](double d) { return density_at_distance(gap + d); };
      const auto r = quad::integrate_endpoints(density_, up, nodes_[k], nodes_[k + 1], e, opt);
      cum_[k + 1] = cum_[k] + r.value;
    }
  }

  double draw_tabulated(double u) const {
    double density_mass = cum_.empty() ? 0.0 : cum_.back();
    double atom_mass = 0.0;
    for (const auto& a : atoms_) atom_mass += a.second;
    double target = u * (density_mass + atom_mass);
    if (target < density_mass) {
      const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
      const std::size_t k = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - cum_.begin(), 1), cum_.size() - 1);
      const double span = cum_[k] - cum_[k - 1];
      const double frac = span > 0.0 ? (target - cum_[k - 1]) / span : 0.5;
      return nodes_[k - 1] + frac * (nodes_[k] - nodes_[k - 1]);
    }
    target -= density_mass;
    for (const auto& [a, w] : atoms_) {
      if (target < w) return a;
      target -= w;
    }
    return atoms_.back().first;
  }

  Kind kind_;
  std::string name_;
  double upper_;
  double param_ = 0.0;
  Fn density_;
  Fn density_from_upper_;
  std::vector<std::pair<double, double>> atoms_;
  quad::Endpoints ends_{4.0, 2.0};
  std::vector<double> nodes_;
  std::vector<double> cum_;
};

// ---------------------------------------------------------------------------
// Duality

// nu(dz) = -lambda z h^<-(dz); requires lambda * integral h = 1.
inline MixingMeasure to_mixing_measure(const ResponseFunction& h, double lambda) {
  detail::require(lambda > 0.0, "intensity lambda must be > 0");
  const double li = lambda * h.integral();
  if (!(std::abs(li - 1.0) <= kRegimeTolerance)) {
    throw validation_error("mixing measure is defined only when lambda * integral h = 1 (got " +
                           detail::short_number(li) + ")");
  }
  const std::string name = "nu:" + h.name();
  const double e = h.exponent();
  if (h.has_image()) {
    const ImageMeasure& img = h.image();
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [a, w] : img.atoms) {
      const double z = img.lift(a);
      atoms.emplace_back(z, lambda * z * w);
    }
    const double upper = img.lift(img.upper);
    if (!img.has_density()) return MixingMeasure::discrete(std::move(atoms), name);
    // Density of z = y^e under lambda y^e rho(y) dy.
    auto rho = img.density;
    auto f = [rho, lambda, e](double z) {
      if (e == 1.0) return lambda * z * rho(z);
      const double y = std::pow(z, 1.0 / e);
      return lambda * y * rho(y) / e;
    };
    MixingMeasure::Fn f_up;
    if (img.density_from_upper) {
      const double b = img.upper;
      auto rho_up = img.density_from_upper;
      f_up = [rho_up, lambda, e, b](double d) {
        if (e == 1.0) return lambda * (b - d) * rho_up(d);
        // distance to b in the base coordinate: b - (b^e - d)^(1/e)
        const double be = std::pow(b, e);
        const double dy = b == 1.0 ? -std::expm1(std::log1p(-d) / e) : b - std::pow(be - d, 1.0 / e);
        return lambda * (b - dy) * rho_up(dy) / e;
      };
    }
    return MixingMeasure::from_density(name, f, upper, img.ends, std::move(atoms), f_up);
  }
  // No differentiable inverse: Stieltjes sums of -lambda z dh^<- on a geometric grid.
  const double b = h.h0();
  constexpr int cells = 6000;
  std::vector<std::pair<double, double>> atoms;
  double mass = 0.0;
  double prev_x = b * 1e-15;
  double prev_inv = h.inverse(prev_x);
  for (int k = 1; k <= cells; ++k) {
    const double x = b * std::pow(10.0, -15.0 * (1.0 - static_cast<double>(k) / cells));
    const double inv = k == cells ? 0.0 : h.inverse(x);
    const double w = lambda * 0.5 * (x + prev_x) * (prev_inv - inv);
    if (w > 0.0) {
      atoms.emplace_back(std::min(b, 0.5 * (x + prev_x)), w);
      mass += w;
    }
    prev_x = x;
    prev_inv = inv;
  }
  if (!(std::abs(mass - 1.0) <= 1e-3)) {
    throw numerical_error("grid representation of " + name + " has mass " + detail::short_number(mass));
  }
  for (auto& a : atoms) a.second /= mass;
  return MixingMeasure::discrete(std::move(atoms), name);
}

// h^<-(x) = integral_[x, b] z^-1 nu(dz); the result integrates to 1.
inline ResponseFunction from_mixing_measure(const MixingMeasure& nu) {
  if (nu.is_unit_atom()) {
    throw validation_error("nu = delta_1 is excluded: it generates only the degenerate law at 0");
  }
  const std::string name = "h:" + nu.name();
  const double b = nu.upper();
  auto density = nu.density();
  ResponseFunction::Fn density_up;
  if (density) density_up = [nu](double d) { return nu.density_at_distance(d); };
  const auto atoms = nu.atoms();
  const quad::Endpoints ends = nu.ends();
  auto inverse = [density, density_up, atoms, ends, b](double x) {
    double v = 0.0;
    if (density && x < b) {
      auto f = [&](double z) { return density(z) / z; };
      auto f_up = [&](double d) { return density_up(d) / (b - d); };
      const auto r = quad::integrate_endpoints(f, f_up, x, b, {1.0, ends.upper_power},
                                               {1e-13, 1e-300, 100000});
      v += r.value;
    }
    for (const auto& [a, w] : atoms) {
      if (a >= x) v += w / a;
    }
    return v;
  };
  ResponseFunction::Fn image_density;
  ResponseFunction::Fn image_density_up;
  if (density) {
    image_density = [density](double y) { return density(y) / y; };
    image_density_up = [density_up, b](double d) { return density_up(d) / (b - d); };
  }
  std::vector<std::pair<double, double>> image_atoms;
  for (const auto& [a, w] : atoms) image_atoms.emplace_back(a, w / a);
  auto h = ResponseFunction::inverse_form(name, inverse, b, image_density, ends, image_atoms,
                                          image_density_up);
  if (!(std::abs(h.integral() - 1.0) <= 1e-6)) {
    throw numerical_error("response from " + nu.name() + " integrates to " +
                          detail::short_number(h.integral()) + ", not 1");
  }
  return h;
}

// integral z^-eps nu(dz), +inf when divergent.
inline double nu_moment(const MixingMeasure& nu, double eps) {
  detail::require(eps > 0.0 && eps <= 1.0, "moment order must lie in (0, 1]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& [a, w] : nu.atoms()) total += w * std::pow(a, -eps);
  if (!nu.has_density()) return total;
  const auto& dens = nu.density();
  auto f = [&](double z) { return std::pow(z, -eps) * dens(z); };
  const quad::Options opt{1e-12, 1e-300, 100000};
  const double b = nu.upper();
  double hi = 0.1 * b;
  auto f_up = [&](double d) { return std::pow(b - d, -eps) * nu.density_at_distance(d); };
  total += quad::integrate_endpoints(f, f_up, hi, b, {1.0, nu.ends().upper_power}, opt).value;
  double prev = 0.0;
  for (int k = 0; k < 300; ++k) {
    const double lo = 0.1 * hi;
    const double inc = quad::integrate(f, lo, hi, opt).value;
    total += inc;
    if (total > 1e12) return inf;
    if (k >= 3 && prev > 0.0) {
      const double ratio = inc / prev;
      if (ratio >= 0.999) return inf;
      const double rest = inc * ratio / (1.0 - ratio);
      if (rest <= 1e-13 * total) return total + rest;
    }
    prev = inc;
    hi = lo;
  }
  return total;
}

}  // namespace snt
