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

TEST(Dist, LaplaceTransforms) {
  EXPECT_NEAR(lst(DistSpec::gamma(0.5, 0.5), 3.0), std::pow(2.5, -0.5), 1e-15);
  EXPECT_DOUBLE_EQ(lst(DistSpec::gamma(0.5, 0.5), 0.0), 1.0);
  EXPECT_NEAR(lst(DistSpec::positive_linnik(0.5, 2.0), 4.0), 1.0 / 5.0, 1e-15);
  EXPECT_NEAR(lst(DistSpec::generalized_linnik(2.0, 1.0, 0.5), 4.0), 1.0 / 9.0, 1e-15);
  const double r = std::sqrt(2.0) / std::sinh(std::sqrt(2.0));
  EXPECT_NEAR(lst(DistSpec::s2(2.0), 1.0), r * r, 1e-13);
  EXPECT_NEAR(lst(DistSpec::s2_rho(2.0, 0.5), 1.0), r * r, 1e-13);
  EXPECT_DOUBLE_EQ(lst(DistSpec::s2(2.0), 0.0), 1.0);
  EXPECT_NEAR(lst(DistSpec::s2(2.0), 1e-9), 1.0 - 2.0 / 3.0 * 1e-9, 1e-16);
  EXPECT_NEAR(lst(DistSpec::point_mass(3.0), 0.5), std::exp(-1.5), 1e-15);
  const auto sub = DistSpec::stable_subordinated(DistSpec::gamma(0.5, 0.5), 0.5);
  EXPECT_NEAR(lst(sub, 4.0), std::pow(1.0 + 0.5 * 2.0, -0.5), 1e-15);
}

TEST(Dist, ComplementIsAccurateNearZero) {
  const double s = 1e-12;
  EXPECT_NEAR(lst_complement(DistSpec::gamma(1.0, 1.0), s) / s, 1.0, 1e-9);
}

TEST(Dist, Tails) {
  EXPECT_NEAR(tail(DistSpec::positive_linnik(1.0, 1.0), 1.0), std::exp(-1.0), 1e-12);
  EXPECT_NEAR(tail(DistSpec::positive_linnik(0.5, 1.0), 1.0), std::exp(1.0) * std::erfc(1.0), 1e-10);
  EXPECT_NEAR(cdf(DistSpec::gamma(0.5, 0.5), 0.7), std::erf(std::sqrt(1.4)), 1e-13);
  // numerical Laplace inversion of (1 - phi(s)) / s at 30 digits
  EXPECT_NEAR(tail(DistSpec::s2(2.0), 2.0), 0.0019385031723755326, 1e-12);
  EXPECT_NEAR(tail(DistSpec::s2(2.0), 0.5), 0.66932010746429945, 1e-12);
}

TEST(Dist, Means) {
  EXPECT_DOUBLE_EQ(mean(DistSpec::gamma(0.5, 0.5)), 0.25);
  EXPECT_NEAR(mean(DistSpec::s2(2.0)), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(mean(DistSpec::point_mass(3.0)), 3.0);
  EXPECT_TRUE(std::isinf(mean(DistSpec::positive_linnik(0.5, 1.0))));
  EXPECT_DOUBLE_EQ(mean(DistSpec::positive_linnik(1.0, 2.0)), 2.0);
  EXPECT_TRUE(std::isinf(mean(DistSpec::stable_subordinated(DistSpec::gamma(1.0, 1.0), 0.5))));
}

TEST(Dist, RejectsBadParameters) {
  EXPECT_THROW(DistSpec::gamma(-1.0, 1.0), domain_error);
  EXPECT_THROW(DistSpec::positive_linnik(1.5, 1.0), domain_error);
  EXPECT_THROW(DistSpec::s2(0.0), domain_error);
}

TEST(Dist, PointMassSample) {
  const auto s = sample(DistSpec::point_mass(3.0), 5, 1);
  ASSERT_EQ(s.size(), 5u);
  for (double v : s.values()) EXPECT_EQ(v, 3.0);
}

TEST(Dist, GammaSampleMean) {
  const auto s = sample(DistSpec::gamma(0.5, 0.5), 200000, 42);
  const double sigma = std::sqrt(0.5 * 0.25 / 200000.0);
  EXPECT_NEAR(s.mean(), 0.25, 3.0 * sigma);
}

TEST(Dist, LinnikIndexOneIsExponential) {
  const auto s = sample(DistSpec::positive_linnik(1.0, 2.0), 100000, 7);
  const auto rep = ks_one_sample(s, [](double x) { return 1.0 - std::exp(-x / 2.0); });
  EXPECT_TRUE(rep.pass) << rep.statistic;
}

TEST(Dist, S2SampleMatchesCdf) {
  const auto s = sample(DistSpec::s2(1.0), 20000, 11);
  EXPECT_TRUE(ks_one_sample(s, [](double x) { return cdf(DistSpec::s2(1.0), x); }).pass);
}

TEST(Dist, StableSampleLst) {
  const auto s = stable_sample(0.5, 100000, 3);
  const auto e = empirical_lst(s, 1.0);
  EXPECT_NEAR(e.value, std::exp(-1.0), 3.0 * e.std_error);
  EXPECT_DOUBLE_EQ(empirical_lst(s, 0.0).value, 1.0);
}

TEST(Dist, SampleIsSeedDeterministic) {
  const auto a = sample(DistSpec::gamma(2.0, 1.0), 10000, 5);
  const auto b = sample(DistSpec::gamma(2.0, 1.0), 10000, 5);
  const auto c = sample(DistSpec::gamma(2.0, 1.0), 10000, 6);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), c.values());
}

TEST(Dist, S2LevyDensity) {
  // k(x) = 2 sum exp(-pi^2 n^2 x / delta), compared term by term
  for (double x : {0.05, 0.5, 2.0}) {
    double k = 0.0;
    for (int n = 1; n < 200; ++n) k += 2.0 * std::exp(-std::numbers::pi * std::numbers::pi * n * n * x / 2.0);
    EXPECT_NEAR(s2_levy_density(2.0, x) * x, k, 1e-12 * std::max(1.0, k));
  }
  // small x, by Poisson summation: k(x) = sqrt(delta / (pi x)) - 1 up to exponentially small terms
  const double x = 1e-6;
  EXPECT_NEAR(s2_levy_density(2.0, x) * x, std::sqrt(2.0 / (std::numbers::pi * x)) - 1.0, 1e-9);
}

TEST(Parse, Keys) {
  EXPECT_EQ(parse_dist("gamma:0.5,0.5").key(), DistSpec::gamma(0.5, 0.5).key());
  EXPECT_NEAR(lst(parse_dist("stable-sub:gamma:0.5,0.5,0.5"), 4.0), 0.5 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(parse_response("pow:exp:0.5").name(), ResponseFunction::exponential().power_transform(0.5).name());
  EXPECT_NEAR(parse_response("gamma:0.5").eval(1.0), ResponseFunction::sech2().eval(1.0), 1e-10);
  EXPECT_EQ(parse_mixing("nu-beta:1,0.5").kind(), MixingMeasure::Kind::Beta1);
  EXPECT_THROW(parse_dist("gamma:1"), domain_error);
  EXPECT_THROW(parse_dist("weibull:1,2"), domain_error);
  EXPECT_THROW(parse_response("gamma:x"), domain_error);
  EXPECT_THROW(parse_mixing("nu-beta:2,1"), domain_error);
}
