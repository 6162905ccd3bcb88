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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "snt/snt.hpp"

using namespace snt;

namespace {

SntConfig config(ResponseFunction h, double lambda = 1.0) {
  SntConfig c;
  c.response = std::move(h);
  c.lambda = lambda;
  return c;
}

double e1(double x) { return -std::expint(-x); }

}  // namespace

TEST(Engine, GammaIsSech2FixedPoint) {
  const auto pts = lst_residual(DistSpec::gamma(0.5, 0.5), config(ResponseFunction::sech2()), logspace(1e-3, 10.0, 50));
  EXPECT_LE(max_residual(pts), 1e-6);
  for (const auto& p : pts) EXPECT_TRUE(p.converged);
  EXPECT_EQ(lst_residual(DistSpec::gamma(0.5, 0.5), config(ResponseFunction::sech2()), {0.0})[0].residual, 0.0);
}

TEST(Engine, SupercriticalHasNoFixedPoint) {
  const auto p = lst_residual(DistSpec::gamma(1.0, 1.0), config(ResponseFunction::exponential(), 2.0), {1.0});
  EXPECT_GE(p[0].residual, 1e-2);
}

TEST(Engine, LinnikFixedPoint) {
  const auto pts = lst_residual(DistSpec::positive_linnik(0.5, 1.0), config(ResponseFunction::exponential(), 0.5),
                                logspace(1e-3, 10.0, 50));
  EXPECT_LE(max_residual(pts), 1e-5);
}

TEST(Engine, LevyTailIsExponentialIntegral) {
  const auto cfg = config(ResponseFunction::exponential());
  for (double x : {0.5, 1.0, 2.0}) EXPECT_NEAR(levy_tail(DistSpec::gamma(1.0, 1.0), cfg, x), e1(x), 1e-8);
  EXPECT_NEAR(e1(1.0), 0.2193839, 1e-7);
  double prev = levy_tail(DistSpec::gamma(1.0, 1.0), cfg, 0.1);
  for (double x : {1.0, 5.0, 20.0}) {
    const double t = levy_tail(DistSpec::gamma(1.0, 1.0), cfg, x);
    EXPECT_LT(t, prev);
    prev = t;
  }
  EXPECT_LT(prev, 1e-9);
}

TEST(Engine, GridIdentities) {
  const auto cfg = config(ResponseFunction::sech2());
  const auto spec = DistSpec::gamma(0.5, 0.5);
  const auto levy = make_levy_tail(spec, cfg);
  const auto st = steutel_check(spec, levy, 1e-3, 4.0);
  EXPECT_TRUE(st.pass) << st.max_residual;
  const auto ft = feature_check(spec, levy, MixingMeasure::beta1(0.5), 1e-3, 4.0);
  EXPECT_TRUE(ft.pass) << ft.max_residual;
  EXPECT_THROW(steutel_check(DistSpec::positive_linnik(0.5, 1.0), levy, 1e-3, 4.0), validation_error);
}

TEST(Engine, CampbellMean) {
  const auto s = sample_snt(DistSpec::point_mass(1.0), config(ResponseFunction::exponential()), 100000, 9);
  const double m = s.mean();
  double m2 = 0.0;
  for (double v : s.values()) m2 += (v - m) * (v - m);
  const double se = std::sqrt(m2 / (s.size() - 1.0) / s.size());
  EXPECT_NEAR(s.mean(), 1.0, 3.0 * se);
}

TEST(Engine, ZeroMarksGiveZero) {
  const auto s = sample_snt(DistSpec::point_mass(0.0), config(ResponseFunction::sech2()), 1000, 1);
  for (double v : s.values()) EXPECT_EQ(v, 0.0);
}

TEST(Engine, RejectsIndicator) {
  try {
    sample_snt(DistSpec::gamma(1.0, 1.0), config(ResponseFunction::indicator(2.0)), 10, 1);
    FAIL() << "indicator response accepted";
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find("Condition A"), std::string::npos);
  }
}

TEST(Engine, InfiniteMeanNeedsHorizon) {
  auto cfg = config(ResponseFunction::exponential(), 0.5);
  EXPECT_THROW(sample_snt(DistSpec::positive_linnik(0.5, 1.0), cfg, 100, 7), validation_error);
  cfg.horizon_override = 60.0;
  EXPECT_EQ(sample_snt(DistSpec::positive_linnik(0.5, 1.0), cfg, 10000, 7).size(), 10000u);
}

TEST(Engine, SimulationIsDeterministic) {
  const auto cfg = config(ResponseFunction::gamma_family(2.0));
  const auto a = sample_snt(DistSpec::gamma(2.0, 0.5), cfg, 5000, 13);
  const auto b = sample_snt(DistSpec::gamma(2.0, 0.5), cfg, 5000, 13);
  EXPECT_EQ(to_csv(a), to_csv(b));
}

TEST(Engine, ResampledMarks) {
  const auto input = sample(DistSpec::gamma(0.5, 0.5), 50000, 1);
  const auto s = sample_snt(input, config(ResponseFunction::sech2()), 20000, 2);
  const auto rep = ks_one_sample(s, [](double x) { return cdf(DistSpec::gamma(0.5, 0.5), x); });
  EXPECT_TRUE(rep.pass) << rep.statistic;
}

TEST(FixedPoint, ZeroStepsIsStart) {
  const auto r = iterate(config(ResponseFunction::exponential()), 1.0, 0);
  for (std::size_t i = 0; i < r.grid.s.size(); ++i) EXPECT_EQ(r.grid.phi[i], std::exp(-r.grid.s[i]));
}

TEST(FixedPoint, OneStepMatchesClosedForm) {
  // integral_0^s (1 - e^-v) / v dv = gamma_E + ln s + E1(s)
  const auto r = iterate(config(ResponseFunction::exponential()), 1.0, 1);
  for (std::size_t i = 0; i < r.grid.s.size(); ++i) {
    const double s = r.grid.s[i];
    const double ein = s < 1e-3 ? s - s * s / 4.0 + s * s * s / 18.0 : std::numbers::egamma + std::log(s) + e1(s);
    EXPECT_NEAR(r.grid.phi[i], std::exp(-ein), 1e-8) << s;
  }
  EXPECT_GT(r.trace.records[0].m_metric, 0.0);
}

TEST(FixedPoint, MeanEstimate) {
  EXPECT_NEAR(mean_estimate(grid_from([](double s) { return std::exp(-s); }, 1.0)), 1.0, 1e-6);
  EXPECT_NEAR(mean_estimate(grid_from([](double s) { return std::pow(1.0 + 3.0 * s, -2.0); }, 6.0)), 6.0, 1e-4);
  const auto g = grid_from([](double s) { return std::exp(-s); }, 1.0);
  EXPECT_EQ(m_metric(g, g), 0.0);
}

TEST(FixedPoint, RejectsNonCritical) {
  EXPECT_THROW(iterate(config(ResponseFunction::exponential(), 0.5), 1.0, 3), validation_error);
}

TEST(FixedPoint, Sech2IterationReachesGamma) {
  const auto r = iterate(config(ResponseFunction::sech2()), 0.25, 50);
  for (const auto& rec : r.trace.records) EXPECT_TRUE(rec.monotone_ok) << rec.iteration;
  for (std::size_t i = 0; i < r.grid.s.size(); ++i) {
    EXPECT_NEAR(r.grid.phi[i], 1.0 / std::sqrt(1.0 + 0.5 * r.grid.s[i]), 1e-4);
  }
  EXPECT_NEAR(r.trace.records.back().mean_estimate, 0.25, 0.0025);
}

TEST(FixedPoint, AtomEquation) {
  // plain bisection on (0, 1/2), where the interior root for b = 2 lies
  auto f = [](double z) { return std::exp(-2.0 * (1.0 - z)) - z; };
  double lo = 0.0;
  double hi = 0.5;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  const auto r = atom_solver(2.0);
  ASSERT_TRUE(r.interior);
  EXPECT_NEAR(r.root, 0.5 * (lo + hi), 1e-9);
  EXPECT_NEAR(r.root, 0.2031878700, 1e-9);
  EXPECT_FALSE(atom_solver(1.0).interior);
  EXPECT_FALSE(atom_solver(0.5).interior);
  EXPECT_NEAR(atom_solver(50.0).root, std::exp(-50.0), 1e-12);
  EXPECT_THROW(atom_solver(0.0), domain_error);
}

TEST(FixedPoint, PerpetuityNearZeroMultiplier) {
  const auto s = perpetuity_sample(MixingMeasure::beta1(20.0), DistSpec::point_mass(1.0), 50, 10000, 3);
  EXPECT_GE(s.values().front(), 1.0);
  EXPECT_LT(s[s.size() / 2], 1.1);
  EXPECT_NEAR(s.mean(), 21.0 / 20.0, 0.01);
}

TEST(FixedPoint, PerpetuityMatchesGamma) {
  const auto p = perpetuity_sample(MixingMeasure::beta1(0.5), DistSpec::gamma(0.5, 2.0), 200, 20000, 5);
  const auto g = sample(DistSpec::gamma(1.5, 2.0), 20000, 6);
  EXPECT_TRUE(ks_two_sample(p, g).pass);
}

TEST(FixedPoint, PerpetuityRejectsUnitAtom) {
  EXPECT_THROW(perpetuity_sample(MixingMeasure::atom(1.0), DistSpec::gamma(1.0, 1.0), 10, 100, 1), validation_error);
}

TEST(FixedPoint, PerpetuityIsDeterministic) {
  const auto a = perpetuity_sample(MixingMeasure::s2(), DistSpec::s2(1.0), 20, 3000, 8);
  const auto b = perpetuity_sample(MixingMeasure::s2(), DistSpec::s2(1.0), 20, 3000, 8);
  EXPECT_EQ(to_csv(a), to_csv(b));
}
