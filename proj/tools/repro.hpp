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

// The end-to-end reproduction checks behind `snt repro` and the acceptance
// binary. Each check returns a verdict plus a JSON record of what it measured.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "snt/report.hpp"
#include "snt/snt.hpp"

namespace snt::repro {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  Json json;
  double seconds = 0.0;
};

inline constexpr int kCount = 12;
inline constexpr std::uint64_t kSeed = 42;

namespace detail {

inline std::string fmt(double v) { return snt::detail::short_number(v); }

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

inline std::vector<double> residual_grid() { return logspace(1e-3, 10.0, 50); }

inline std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Sample used by checks 3, 10 and 12.
inline EmpiricalSample sech2_sample() {
  SntConfig cfg;
  cfg.response = ResponseFunction::sech2();
  return sample_snt(DistSpec::gamma(0.5, 0.5), cfg, 200000, kSeed);
}

inline KsReport sech2_ks(const EmpiricalSample& s) {
  const auto target = DistSpec::gamma(0.5, 0.5);
  return ks_one_sample(s, [&](double x) { return cdf(target, x); });
}

inline EmpiricalSample perpetuity_run(double alpha) {
  return perpetuity_sample(MixingMeasure::beta1(alpha), DistSpec::gamma(alpha, 1.0 / alpha), 200, 100000,
                           kSeed + 1000);
}

inline EmpiricalSample perpetuity_target(double alpha) {
  return sample(DistSpec::gamma(1.0 + alpha, 1.0 / alpha), 100000, kSeed + 2000);
}

// exp(-b (1 - z)) = z by plain fixed-point iteration from 0; converges to the
// smaller root because the map is increasing with slope b z < 1 there.
inline double atom_oracle(double b) {
  double z = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double next = std::exp(-b * (1.0 - z));
    if (next == z) break;
    z = next;
  }
  return z;
}

}  // namespace detail

inline Outcome gamma_fixed_point() {
  Outcome o{1, "gamma fixed point", false, {}, {}, 0.0};
  o.pass = true;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    SntConfig cfg;
    cfg.response = ResponseFunction::gamma_family(alpha);
    double worst = 0.0;
    for (double scale : {1.0, 2.0}) {
      const auto pts = lst_residual(DistSpec::gamma(alpha, alpha * scale), cfg, detail::residual_grid());
      worst = std::max(worst, max_residual(pts));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = worst <= 1e-6 && secs < 10.0;
    o.pass = o.pass && ok;
    o.json["alpha=" + detail::fmt(alpha)] = {{"max_residual", worst}, {"seconds", secs}, {"pass", ok}};
    o.detail += "a=" + detail::fmt(alpha) + " res " + detail::sci(worst) + " " + detail::fmt(std::round(secs * 100) / 100) + "s; ";
  }
  return o;
}

inline Outcome sech2_closed_form() {
  Outcome o{2, "gamma(1/2) response is sech^2", false, {}, {}, 0.0};
  const auto h = ResponseFunction::gamma_family(0.5);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = 0.05 * k;
    const double c = std::cosh(u);
    worst = std::max(worst, std::abs(h.eval(u) - 1.0 / (c * c)));
  }
  o.pass = worst <= 1e-10;
  o.json = {{"points", 100}, {"max_difference", worst}, {"tolerance", 1e-10}};
  o.detail = "max diff " + detail::sci(worst);
  return o;
}

inline Outcome monte_carlo_fixed_point() {
  Outcome o{3, "Monte Carlo fixed point, sech^2", false, {}, {}, 0.0};
  const auto rep = detail::sech2_ks(detail::sech2_sample());
  o.pass = rep.pass;
  o.json = to_json(rep);
  o.detail = "D " + detail::sci(rep.statistic) + " vs " + detail::sci(rep.critical);
  return o;
}

inline Outcome exponential_family() {
  Outcome o{4, "exponential response family", false, {}, {}, 0.0};
  SntConfig one;
  one.response = ResponseFunction::exponential();
  const double r1 = max_residual(lst_residual(DistSpec::gamma(1.0, 2.0), one, detail::residual_grid()));
  SntConfig half = one;
  half.lambda = 0.5;
  const double r2 = max_residual(lst_residual(DistSpec::positive_linnik(0.5, 1.0), half, detail::residual_grid()));
  // P(X > 1) for the index-1/2 law equals e erfc(1).
  const double ml = tail(DistSpec::positive_linnik(0.5, 1.0), 1.0);
  const double ml_oracle = std::exp(1.0) * std::erfc(1.0);
  SntConfig two = one;
  two.lambda = 2.0;
  const double neg = lst_residual(DistSpec::gamma(1.0, 1.0), two, {1.0}).front().residual;
  o.pass = r1 <= 1e-6 && r2 <= 1e-5 && std::abs(ml - ml_oracle) <= 1e-8 && neg >= 1e-2;
  o.json = {{"exp_residual", r1},
            {"linnik_residual", r2},
            {"ml_tail", ml},
            {"ml_oracle", ml_oracle},
            {"negative_control_residual", neg}};
  o.detail = "exp " + detail::sci(r1) + ", linnik " + detail::sci(r2) + ", tail err " +
             detail::sci(std::abs(ml - ml_oracle)) + ", control " + detail::sci(neg);
  return o;
}

inline Outcome s2_family() {
  Outcome o{5, "S2 family", false, {}, {}, 0.0};
  SntConfig cfg;
  cfg.response = ResponseFunction::s2_family();
  double worst = 0.0;
  for (double delta : {1.0, 2.0}) {
    worst = std::max(worst, max_residual(lst_residual(DistSpec::s2(delta), cfg, detail::residual_grid())));
  }
  SntConfig rho = cfg;
  rho.response = ResponseFunction::s2_family().power_transform(0.5);
  const double r_rho = max_residual(lst_residual(DistSpec::s2_rho(2.0, 0.5), rho, detail::residual_grid()));
  bool decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double x : logspace(1e-3, 5.0, 50)) {
    const double k = special::s2_levy_k(2.0, x);
    if (!(k < prev)) decreasing = false;
    prev = k;
  }
  o.pass = worst <= 1e-5 && r_rho <= 1e-5 && decreasing;
  o.json = {{"s2_residual", worst}, {"s2rho_residual", r_rho}, {"k_decreasing", decreasing}};
  o.detail = "s2 " + detail::sci(worst) + ", s2rho " + detail::sci(r_rho) + ", k decreasing " +
             (decreasing ? "yes" : "no");
  return o;
}

inline Outcome iteration() {
  Outcome o{6, "fixed-point iteration", false, {}, {}, 0.0};
  SntConfig cfg;
  cfg.response = ResponseFunction::sech2();
  const double m = 0.25;
  const auto a = iterate(cfg, m, 50);
  const auto b = iterate(cfg, m, 50, [m](double s) {
    const double t = 1.0 + 0.5 * m * s;
    return 1.0 - 1.0 / (t * t);
  });
  bool monotone = true;
  for (const auto& r : a.trace.records) monotone = monotone && r.monotone_ok;
  double to_gamma = 0.0;
  double between = 0.0;
  for (std::size_t i = 0; i < a.grid.s.size(); ++i) {
    const double s = a.grid.s[i];
    to_gamma = std::max(to_gamma, std::abs(a.grid.phi[i] - 1.0 / std::sqrt(1.0 + 2.0 * s * m)));
    between = std::max(between, std::abs(a.grid.phi[i] - b.grid.phi[i]));
  }
  const double mean_est = a.trace.records.empty() ? m : a.trace.records.back().mean_estimate;
  const bool mean_ok = std::abs(mean_est - m) <= 0.01 * m;
  o.pass = monotone && to_gamma <= 1e-4 && mean_ok && between <= 1e-5;
  o.json = {{"steps", a.trace.records.size()}, {"monotone", monotone},   {"sup_distance", to_gamma},
            {"mean_estimate", mean_est},       {"start_difference", between}};
  o.detail = std::to_string(a.trace.records.size()) + " steps, sup " + detail::sci(to_gamma) + ", mean " +
             detail::fmt(mean_est) + ", starts " + detail::sci(between);
  return o;
}

inline Outcome perpetuity() {
  Outcome o{7, "perpetuity identity", false, {}, {}, 0.0};
  o.pass = true;
  for (double alpha : {0.5, 1.0}) {
    const auto rep = ks_two_sample(detail::perpetuity_run(alpha), detail::perpetuity_target(alpha));
    o.pass = o.pass && rep.pass;
    o.json["alpha=" + detail::fmt(alpha)] = to_json(rep);
    o.detail += "a=" + detail::fmt(alpha) + " D " + detail::sci(rep.statistic) + " vs " + detail::sci(rep.critical) + "; ";
  }
  return o;
}

inline Outcome subordination() {
  Outcome o{8, "stable subordination", false, {}, {}, 0.0};
  const auto s = sample(DistSpec::stable_subordinated(DistSpec::gamma(0.5, 0.5), 0.5), 100000, kSeed);
  o.pass = true;
  for (double x : {0.25, 1.0, 4.0}) {
    const auto e = empirical_lst(s, x);
    const double exact = 1.0 / std::sqrt(1.0 + 0.5 * std::sqrt(x));
    const double z = std::abs(e.value - exact) / e.std_error;
    o.pass = o.pass && z <= 4.0;
    o.json["s=" + detail::fmt(x)] = {{"empirical", e.value}, {"std_error", e.std_error}, {"exact", exact}, {"z", z}};
    o.detail += "s=" + detail::fmt(x) + " z " + detail::fmt(std::round(z * 100) / 100) + "; ";
  }
  return o;
}

inline Outcome levy_identities() {
  Outcome o{9, "Levy measure identities", false, {}, {}, 0.0};
  SntConfig exp_cfg;
  exp_cfg.response = ResponseFunction::exponential();
  const auto exp1 = DistSpec::gamma(1.0, 1.0);
  double tail_err = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    tail_err = std::max(tail_err, std::abs(levy_tail(exp1, exp_cfg, x) + std::expint(-x)));
  }
  SntConfig sech_cfg;
  sech_cfg.response = ResponseFunction::sech2();
  const auto half = DistSpec::gamma(0.5, 0.5);
  const auto exp_levy = make_levy_tail(exp1, exp_cfg);
  const auto half_levy = make_levy_tail(half, sech_cfg);
  const auto st_exp = steutel_check(exp1, exp_levy, 1e-3, 4.0);
  const auto st_half = steutel_check(half, half_levy, 1e-3, 4.0);
  const auto ft_exp = feature_check(exp1, exp_levy, to_mixing_measure(exp_cfg.response, 1.0), 1e-3, 4.0);
  const auto ft_half = feature_check(half, half_levy, to_mixing_measure(sech_cfg.response, 1.0), 1e-3, 4.0);
  o.pass = tail_err <= 1e-8 && st_exp.pass && st_half.pass && ft_exp.pass && ft_half.pass;
  o.json = {{"tail_error", tail_err},
            {"steutel_exp", to_json(st_exp)},
            {"steutel_gamma", to_json(st_half)},
            {"feature_exp", to_json(ft_exp)},
            {"feature_gamma", to_json(ft_half)}};
  o.detail = "tail err " + detail::sci(tail_err) + ", steutel " + detail::sci(st_exp.max_residual) + "/" +
             detail::sci(st_half.max_residual) + ", feature " + detail::sci(ft_exp.max_residual) + "/" +
             detail::sci(ft_half.max_residual);
  return o;
}

inline Outcome log_concave_counterexample() {
  Outcome o{10, "log-concave response with a selfdecomposable fixed point", false, {}, {}, 0.0};
  const auto h = ResponseFunction::sech2();
  const std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  const auto probe = log_convexity_probe(h, grid);
  bool all_negative = true;
  for (double d : probe.second_difference) all_negative = all_negative && d < 0.0;
  const auto ks = detail::sech2_ks(detail::sech2_sample());
  o.pass = all_negative && probe.classification == Curvature::LogConcave && ks.pass;
  o.json = {{"classification", curvature_label(probe.classification)},
            {"second_differences", probe.second_difference},
            {"ks", to_json(ks)}};
  o.detail = std::string(curvature_label(probe.classification)) + ", KS " + (ks.pass ? "pass" : "fail");
  return o;
}

inline Outcome atom_equation() {
  Outcome o{11, "atom equation", false, {}, {}, 0.0};
  const auto r = atom_solver(2.0);
  const double oracle = detail::atom_oracle(2.0);
  const bool none_half = !atom_solver(0.5).interior;
  const bool none_one = !atom_solver(1.0).interior;
  o.pass = r.interior && std::abs(r.root - oracle) <= 1e-9 && none_half && none_one;
  o.json = {{"root", r.root}, {"oracle", oracle}, {"no_root_b_0.5", none_half}, {"no_root_b_1", none_one}};
  o.detail = "root " + detail::fmt(r.root) + ", oracle " + detail::fmt(oracle);
  return o;
}

inline Outcome determinism() {
  Outcome o{12, "deterministic CSV output", false, {}, {}, 0.0};
  const auto dir = std::filesystem::temp_directory_path() / ("snt-repro-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto twice = [&](const std::string& tag, const std::function<std::string()>& make) {
    write_file_atomic(dir / (tag + "-a.csv"), make());
    write_file_atomic(dir / (tag + "-b.csv"), make());
    const auto a = detail::read_bytes(dir / (tag + "-a.csv"));
    const auto b = detail::read_bytes(dir / (tag + "-b.csv"));
    return !a.empty() && a == b;
  };
  const bool mc = twice("shot-noise", [] { return to_csv(detail::sech2_sample()); });
  const bool perp = twice("perpetuity", [] { return to_csv(detail::perpetuity_run(0.5)) + to_csv(detail::perpetuity_run(1.0)); });
  std::filesystem::remove_all(dir);
  o.pass = mc && perp;
  o.json = {{"shot_noise_identical", mc}, {"perpetuity_identical", perp}};
  o.detail = std::string("shot noise ") + (mc ? "identical" : "differs") + ", perpetuity " +
             (perp ? "identical" : "differs");
  return o;
}

inline Outcome run(int id) {
  static const std::function<Outcome()> table[kCount] = {
      gamma_fixed_point, sech2_closed_form, monte_carlo_fixed_point, exponential_family,
      s2_family,         iteration,         perpetuity,              subordination,
      levy_identities,   log_concave_counterexample, atom_equation,  determinism};
  snt::detail::require(id >= 1 && id <= kCount, "target must lie in 1.." + std::to_string(kCount));
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = table[id - 1]();
  } catch (const std::exception& e) {
    o.id = id;
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
    o.json = {{"error", e.what()}};
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return o;
}

inline Json to_json(const Outcome& o) {
  return Json{{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"seconds", o.seconds}, {"details", o.json}};
}

inline std::string line(const Outcome& o) {
  std::ostringstream out;
  out << (o.pass ? "PASS" : "FAIL") << " [" << o.id << "] " << o.name << ": " << o.detail;
  return out.str();
}

}  // namespace snt::repro
