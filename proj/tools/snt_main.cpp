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

// snt: simulate shot noise and verify fixed-point identities.
//
// Exit codes: 0 pass, 1 check failed, 2 usage error, 3 input rejected.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repro.hpp"
#include "snt/report.hpp"
#include "snt/snt.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kRejected = 3 };

struct ModelFlags {
  std::string dist;
  std::string response = "exp";
  double lambda = 1.0;
  double trunc_eps = 1e-8;
  std::optional<double> horizon;

  snt::SntConfig config() const {
    snt::SntConfig cfg;
    cfg.response = snt::parse_response(response);
    cfg.lambda = lambda;
    cfg.trunc_eps = trunc_eps;
    cfg.horizon_override = horizon;
    return cfg;
  }
};

void add_model(CLI::App* app, ModelFlags& f, bool need_dist) {
  auto* d = app->add_option("--dist", f.dist, "input law, e.g. gamma:0.5,0.5");
  if (need_dist) d->required();
  app->add_option("--response", f.response, "response key, e.g. sech2")->capture_default_str();
  app->add_option("--lambda", f.lambda, "Poisson intensity")->capture_default_str();
}

void emit(const snt::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << snt::dump(j);
  } else {
    snt::write_file_atomic(out, snt::dump(j));
  }
}

int verdict(snt::Json& j, bool pass, const std::string& out) {
  j["pass"] = pass;
  emit(j, out);
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson shot-noise transforms and their fixed points"};
  app.require_subcommand(1);

  ModelFlags model;
  std::string out;
  std::uint64_t seed = 42;

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw shot-noise realizations");
  std::string input_csv;
  std::size_t n = 0;
  auto* sim_dist = sim->add_option("--dist", model.dist, "input law");
  auto* sim_input = sim->add_option("--input", input_csv, "CSV sample to resample marks from");
  sim_dist->excludes(sim_input);
  sim->add_option("--response", model.response, "response key")->required();
  sim->add_option("--lambda", model.lambda, "Poisson intensity")->capture_default_str();
  sim->add_option("--n", n, "number of realizations")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "random seed")->capture_default_str();
  sim->add_option("--trunc-eps", model.trunc_eps, "truncated share of the response mass")->capture_default_str();
  sim->add_option("--horizon", model.horizon, "explicit horizon T");
  sim->add_option("--out", out, "output CSV")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check an identity and report JSON");
  verify->require_subcommand(1);

  auto* fp = verify->add_subcommand("fixed-point", "transform residual |phi - T phi| on a log grid");
  double tol = 1e-6;
  double s_min = 1e-3;
  double s_max = 10.0;
  std::size_t points = 50;
  add_model(fp, model, true);
  fp->add_option("--tol", tol, "residual tolerance")->capture_default_str();
  fp->add_option("--s-min", s_min)->capture_default_str();
  fp->add_option("--s-max", s_max)->capture_default_str();
  fp->add_option("--points", points)->capture_default_str()->check(CLI::PositiveNumber);
  fp->add_option("--out", out, "JSON report path (default stdout)");

  auto* levy = verify->add_subcommand("levy", "Levy tail M(x, inf) of the shot noise");
  std::vector<double> xs{0.5, 1.0, 2.0};
  add_model(levy, model, true);
  levy->add_option("--x", xs, "evaluation points")->capture_default_str();
  levy->add_option("--out", out, "JSON report path (default stdout)");

  double step = 1e-3;
  double x_max = 4.0;
  auto* steutel = verify->add_subcommand("steutel", "distribution-function identity on a uniform grid");
  add_model(steutel, model, true);
  steutel->add_option("--step", step)->capture_default_str();
  steutel->add_option("--x-max", x_max)->capture_default_str();
  steutel->add_option("--out", out, "JSON report path (default stdout)");

  auto* feature = verify->add_subcommand("feature", "mixing-measure identity on a uniform grid");
  std::string nu_key;
  add_model(feature, model, true);
  feature->add_option("--nu", nu_key, "mixing measure key (default: dual of the response)");
  feature->add_option("--step", step)->capture_default_str();
  feature->add_option("--x-max", x_max)->capture_default_str();
  feature->add_option("--out", out, "JSON report path (default stdout)");

  auto* perp = verify->add_subcommand("perpetuity", "terminal sample of X <- eta + A X");
  std::string base_key;
  std::string compare_key;
  int steps = 200;
  std::size_t perp_n = 100000;
  std::string sample_out;
  perp->add_option("--nu", nu_key, "law of A")->required();
  perp->add_option("--base", base_key, "law of eta")->required();
  perp->add_option("--steps", steps)->capture_default_str()->check(CLI::PositiveNumber);
  perp->add_option("--n", perp_n)->capture_default_str()->check(CLI::PositiveNumber);
  perp->add_option("--seed", seed)->capture_default_str();
  perp->add_option("--compare", compare_key, "law for a two-sample KS test");
  perp->add_option("--sample-out", sample_out, "CSV of the terminal sample");
  perp->add_option("--out", out, "JSON report path (default stdout)");

  auto* sd = verify->add_subcommand("sd-logconvex", "log-curvature probe of a response");
  std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  std::string expect;
  sd->add_option("--response", model.response, "response key")->capture_default_str();
  sd->add_option("--grid", grid, "probe points")->capture_default_str();
  sd->add_option("--expect", expect, "required classification")
      ->check(CLI::IsMember({"log-convex", "log-concave", "log-linear", "mixed"}));
  sd->add_option("--out", out, "JSON report path (default stdout)");

  auto* atom = verify->add_subcommand("atom", "interior root of exp(-b (1 - z)) = z");
  double b = 2.0;
  atom->add_option("--b", b)->required();
  atom->add_option("--out", out, "JSON report path (default stdout)");

  auto* repro = app.add_subcommand("repro", "run the reproduction checks");
  std::vector<int> targets;
  repro->add_option("--target", targets, "check ids (default: all)")->check(CLI::Range(1, snt::repro::kCount));
  repro->add_option("--out", out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (sim->parsed()) {
      if (model.dist.empty() == input_csv.empty()) {
        std::cerr << "simulate: exactly one of --dist and --input is required\n";
        return kUsage;
      }
      const auto cfg = model.config();
      const auto s = input_csv.empty() ? snt::sample_snt(snt::parse_dist(model.dist), cfg, n, seed)
                                       : snt::sample_snt(snt::read_sample_csv(input_csv), cfg, n, seed);
      snt::write_file_atomic(out, snt::to_csv(s));
      return kPass;
    }

    if (fp->parsed()) {
      const auto spec = snt::parse_dist(model.dist);
      const auto pts = snt::lst_residual(spec, model.config(), snt::logspace(s_min, s_max, points));
      auto j = snt::document("fixed-point");
      j["dist"] = spec.key();
      j["response"] = model.response;
      j["lambda"] = model.lambda;
      j["tol"] = tol;
      bool converged = true;
      for (const auto& p : pts) {
        j["points"].push_back(snt::to_json(p));
        converged = converged && p.converged;
      }
      const double worst = snt::max_residual(pts);
      j["max_residual"] = worst;
      return verdict(j, converged && worst <= tol, out);
    }

    if (levy->parsed()) {
      const auto spec = snt::parse_dist(model.dist);
      const auto cfg = model.config();
      auto j = snt::document("levy");
      j["dist"] = spec.key();
      j["response"] = model.response;
      j["lambda"] = model.lambda;
      bool ok = true;
      double prev = std::numeric_limits<double>::infinity();
      std::sort(xs.begin(), xs.end());
      for (double x : xs) {
        const double t = snt::levy_tail(spec, cfg, x);
        ok = ok && t >= 0.0 && t <= prev;
        prev = t;
        j["points"].push_back({{"x", x}, {"tail", snt::json_number(t)}});
      }
      return verdict(j, ok, out);
    }

    if (steutel->parsed() || feature->parsed()) {
      const auto spec = snt::parse_dist(model.dist);
      const auto cfg = model.config();
      const auto tail = snt::make_levy_tail(spec, cfg);
      snt::GridCheck g;
      auto j = snt::document(steutel->parsed() ? "steutel" : "feature");
      if (steutel->parsed()) {
        g = snt::steutel_check(spec, tail, step, x_max);
      } else {
        const auto nu = nu_key.empty() ? snt::to_mixing_measure(cfg.response, cfg.lambda) : snt::parse_mixing(nu_key);
        j["nu"] = nu.name();
        g = snt::feature_check(spec, tail, nu, step, x_max);
      }
      j["dist"] = spec.key();
      j["response"] = model.response;
      j["lambda"] = model.lambda;
      j["check"] = snt::to_json(g);
      return verdict(j, g.pass, out);
    }

    if (perp->parsed()) {
      const auto nu = snt::parse_mixing(nu_key);
      const auto base = snt::parse_dist(base_key);
      const auto s = snt::perpetuity_sample(nu, base, steps, perp_n, seed);
      if (!sample_out.empty()) snt::write_file_atomic(sample_out, snt::to_csv(s));
      auto j = snt::document("perpetuity");
      j["nu"] = nu.name();
      j["base"] = base.key();
      j["steps"] = steps;
      j["n"] = perp_n;
      j["seed"] = seed;
      j["sample_mean"] = s.mean();
      bool ok = true;
      if (!compare_key.empty()) {
        const auto target = snt::parse_dist(compare_key);
        const auto ks = snt::ks_two_sample(s, snt::sample(target, perp_n, seed + 1));
        j["compare"] = target.key();
        j["ks"] = snt::to_json(ks);
        ok = ks.pass;
      }
      return verdict(j, ok, out);
    }

    if (sd->parsed()) {
      const auto h = snt::parse_response(model.response);
      const auto rep = snt::log_convexity_probe(h, grid);
      auto j = snt::document("sd-logconvex");
      j["response"] = h.name();
      j["u"] = rep.u;
      j["second_differences"] = rep.second_difference;
      j["classification"] = snt::curvature_label(rep.classification);
      return verdict(j, expect.empty() || expect == snt::curvature_label(rep.classification), out);
    }

    if (atom->parsed()) {
      const auto r = snt::atom_solver(b);
      auto j = snt::document("atom");
      j["b"] = b;
      j["interior"] = r.interior;
      j["root"] = r.root;
      j["iterations"] = r.iterations;
      return verdict(j, true, out);
    }

    if (repro->parsed()) {
      if (targets.empty()) {
        for (int i = 1; i <= snt::repro::kCount; ++i) targets.push_back(i);
      }
      auto j = snt::document("repro");
      bool ok = true;
      for (int id : targets) {
        const auto o = snt::repro::run(id);
        std::cerr << snt::repro::line(o) << "\n";
        ok = ok && o.pass;
        j["checks"].push_back(snt::repro::to_json(o));
      }
      return verdict(j, ok, out);
    }
  } catch (const snt::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const snt::validation_error& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
