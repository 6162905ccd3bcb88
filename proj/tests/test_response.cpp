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

double sech2(double u) {
  const double c = std::cosh(u);
  return 1.0 / (c * c);
}

// Inverts the s2 tail map x -> u = integral_x^1 (z^-1/2 - 1) z^-1 dz by bisection.
double s2_oracle(double u) {
  auto inv = [](double x) { return 2.0 / std::sqrt(x) - 2.0 + std::log(x); };
  double lo = 1e-300;
  double hi = 1.0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (inv(mid) > u) lo = mid; else hi = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TEST(Response, GammaFamilyOneIsExponential) {
  const auto h = ResponseFunction::gamma_family(1.0);
  for (double u : {0.0, 0.3, 1.0, 4.0, 12.0}) EXPECT_NEAR(h.eval(u), std::exp(-u), 1e-12 * std::max(1.0, std::exp(-u)) + 1e-15);
}

TEST(Response, GammaFamilyHalfIsSech2) {
  const auto h = ResponseFunction::gamma_family(0.5);
  for (int k = 0; k < 100; ++k) EXPECT_NEAR(h.eval(0.05 * k), sech2(0.05 * k), 1e-10);
}

TEST(Response, PointValues) {
  const auto s = ResponseFunction::sech2();
  EXPECT_DOUBLE_EQ(s.eval(0.0), 1.0);
  EXPECT_NEAR(s.eval(std::log(1.0 + std::sqrt(2.0))), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(ResponseFunction::exponential().eval(0.0), 1.0);
}

TEST(Response, S2MatchesInverseOracle) {
  const auto h = ResponseFunction::s2_family();
  for (double u : {0.01, 0.5, 2.0, 10.0, 100.0, 1e4}) {
    const double want = s2_oracle(u);
    EXPECT_NEAR(h.eval(u), want, 1e-10 * want) << "u=" << u;
  }
}

TEST(Response, S2DecaysLikeFourOverUSquared) {
  const auto h = ResponseFunction::s2_family();
  // The log correction in the inverse keeps u^2 h(u) below 4 for moderate u.
  const double at100 = h.eval(100.0) * 1e4;
  EXPECT_NEAR(at100, s2_oracle(100.0) * 1e4, 1e-9);
  EXPECT_GT(h.eval(1e4) * 1e8, 3.98);
  EXPECT_LT(h.eval(1e4) * 1e8, 4.0);
  EXPECT_LT(at100, h.eval(1e3) * 1e6);
}

TEST(Response, InverseRoundTrip) {
  for (const auto& h : {ResponseFunction::gamma_family(0.5), ResponseFunction::gamma_family(2.0),
                        ResponseFunction::s2_family(), ResponseFunction::sech2()}) {
    for (double u : {0.1, 1.0, 3.0}) EXPECT_NEAR(h.inverse(h.eval(u)), u, 1e-7 * std::max(1.0, u)) << h.name();
  }
}

TEST(Response, Integrals) {
  EXPECT_NEAR(ResponseFunction::sech2().integral(), 1.0, 1e-12);
  EXPECT_NEAR(ResponseFunction::exponential().integral(), 1.0, 1e-12);
  EXPECT_NEAR(ResponseFunction::s2_family().integral(), 1.0, 1e-9);
  for (double a : {0.5, 2.0}) EXPECT_NEAR(ResponseFunction::gamma_family(a).integral(), 1.0, 1e-9);
  EXPECT_NEAR(ResponseFunction::exponential().power_transform(0.5).integral(), 0.5, 1e-12);
}

TEST(Response, PowerTransform) {
  const auto p = ResponseFunction::exponential().power_transform(0.5);
  for (double u : {0.0, 0.5, 2.0}) EXPECT_NEAR(p.eval(u), std::exp(-2.0 * u), 1e-15);
  EXPECT_DOUBLE_EQ(ResponseFunction::sech2().power_transform(0.5).eval(0.0), 1.0);
  EXPECT_THROW(ResponseFunction::sech2().power_transform(1.5), domain_error);
}

TEST(Response, Validate) {
  const auto ok = validate(ResponseFunction::sech2(), 1.0);
  EXPECT_TRUE(ok.admissible());
  EXPECT_EQ(ok.regime, Regime::Critical);
  EXPECT_STREQ(regime_label(ok.regime), "=1");

  const auto ind = validate(ResponseFunction::indicator(2.0), 1.0);
  EXPECT_FALSE(ind.admissible());
  ASSERT_FALSE(ind.messages.empty());
  bool named = false;
  for (const auto& m : ind.messages) named = named || m.find("indicator-shaped") != std::string::npos;
  EXPECT_TRUE(named);

  const auto sup = validate(ResponseFunction::exponential(), 2.0);
  EXPECT_EQ(sup.regime, Regime::Super);
  EXPECT_TRUE(sup.admissible());
}

TEST(Response, LogCurvature) {
  const auto concave = log_convexity_probe(ResponseFunction::sech2(), {0.5, 1.0, 2.0});
  EXPECT_EQ(concave.classification, Curvature::LogConcave);
  for (double d : concave.second_difference) EXPECT_LT(d, 0.0);
  EXPECT_EQ(log_convexity_probe(ResponseFunction::exponential(), {0.5, 1.0, 2.0}).classification,
            Curvature::LogLinear);
  auto convex = [](double u) { return std::exp(-std::sqrt(u + 1.0)); };
  EXPECT_EQ(log_convexity_probe(convex, {0.0, 0.5, 1.0, 3.0}).classification, Curvature::LogConvex);
}

TEST(Mixing, DualDensities) {
  const auto g = to_mixing_measure(ResponseFunction::gamma_family(0.5), 1.0);
  for (double z : {0.1, 0.5, 0.9}) EXPECT_NEAR(g.density()(z), 0.5 / std::sqrt(1.0 - z), 1e-7);
  const auto s = to_mixing_measure(ResponseFunction::s2_family(), 1.0);
  for (double z : {0.25, 0.6}) EXPECT_NEAR(s.density()(z), 1.0 / std::sqrt(z) - 1.0, 1e-7);
  const auto e = to_mixing_measure(ResponseFunction::exponential(), 1.0);
  for (double z : {0.2, 0.7}) EXPECT_NEAR(e.density()(z), 1.0, 1e-7);
  EXPECT_THROW(to_mixing_measure(ResponseFunction::exponential(), 2.0), validation_error);
}

TEST(Mixing, ResponseFromMeasure) {
  const auto h = from_mixing_measure(MixingMeasure::beta1(0.5));
  for (int k = 0; k < 40; ++k) EXPECT_NEAR(h.eval(0.1 * k), sech2(0.1 * k), 1e-10);
  const auto e = from_mixing_measure(MixingMeasure::uniform());
  for (double u : {0.0, 1.0, 5.0}) EXPECT_NEAR(e.eval(u), std::exp(-u), 1e-10);
  EXPECT_THROW(from_mixing_measure(MixingMeasure::atom(1.0)), validation_error);
}

TEST(Mixing, AtomGivesIndicator) {
  const auto h = from_mixing_measure(MixingMeasure::atom(0.5));
  EXPECT_TRUE(h.indicator_shaped());
  EXPECT_NEAR(h.eval(1.0), 0.5, 1e-12);
  EXPECT_NEAR(h.eval(2.5), 0.0, 1e-12);
  EXPECT_FALSE(validate(h, 1.0).admissible());
}

TEST(Mixing, Moments) {
  EXPECT_NEAR(nu_moment(MixingMeasure::beta1(0.5), 0.5), std::numbers::pi / 2.0, 1e-8);
  EXPECT_TRUE(std::isinf(nu_moment(MixingMeasure::uniform(), 1.0)));
  EXPECT_NEAR(nu_moment(MixingMeasure::beta1(0.5), 1e-6), 1.0, 1e-5);
}
