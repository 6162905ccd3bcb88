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
#include <vector>

#include <gtest/gtest.h>

#include "snt/snt.hpp"

using namespace snt;

TEST(Stats, Coefficient) {
  EXPECT_NEAR(ks_coefficient(0.01), 1.628, 1e-3);
  EXPECT_NEAR(ks_coefficient(0.05), 1.358, 1e-3);
}

TEST(Stats, OneSampleAcceptsTrueLaw) {
  const auto s = sample(DistSpec::gamma(1.0, 1.0), 100000, 21);
  EXPECT_TRUE(ks_one_sample(s, [](double x) { return -std::expm1(-x); }).pass);
}

TEST(Stats, OneSampleRejectsPointMass) {
  const auto s = sample(DistSpec::point_mass(1.0), 1000, 1);
  const auto rep = ks_one_sample(s, [](double x) { return -std::expm1(-x); });
  EXPECT_GE(rep.statistic, std::exp(-1.0));
  EXPECT_FALSE(rep.pass);
}

TEST(Stats, OneSampleAgainstOwnEcdf) {
  const auto s = sample(DistSpec::gamma(2.0, 1.0), 500, 4);
  const auto& v = s.values();
  auto ecdf = [&](double x) {
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / v.size();
  };
  EXPECT_LE(ks_one_sample(s, ecdf).statistic, 1.0 / v.size() + 1e-15);
}

TEST(Stats, OneSampleNeedsData) {
  const auto s = sample(DistSpec::gamma(1.0, 1.0), 50, 1);
  EXPECT_THROW(ks_one_sample(s, [](double x) { return -std::expm1(-x); }), domain_error);
}

TEST(Stats, TwoSample) {
  const auto a = sample(DistSpec::gamma(1.5, 2.0), 100000, 1);
  const auto b = sample(DistSpec::gamma(1.5, 2.0), 100000, 2);
  EXPECT_TRUE(ks_two_sample(a, b).pass);
  const auto c = sample(DistSpec::gamma(1.0, 1.0), 5000, 3);
  const auto d = sample(DistSpec::gamma(2.0, 1.0), 5000, 4);
  EXPECT_FALSE(ks_two_sample(c, d).pass);
  EXPECT_EQ(ks_two_sample(a, a).statistic, 0.0);
}

TEST(Stats, EmpiricalLst) {
  const auto s = sample(DistSpec::gamma(1.0, 1.0), 100000, 5);
  const auto e = empirical_lst(s, 1.0);
  EXPECT_NEAR(e.value, 0.5, 4.0 * e.std_error);
  const auto zero = empirical_lst(s, 0.0);
  EXPECT_EQ(zero.value, 1.0);
  EXPECT_EQ(zero.std_error, 0.0);
  const auto p = empirical_lst(sample(DistSpec::point_mass(2.0), 100, 1), 1.0);
  EXPECT_DOUBLE_EQ(p.value, std::exp(-2.0));
  EXPECT_EQ(p.std_error, 0.0);
}

TEST(Stats, EmpiricalMgf) {
  const auto s = sample(DistSpec::gamma(0.5, 0.5), 100000, 6);
  const auto e = empirical_mgf(s, 1.0);
  EXPECT_NEAR(e.value, std::sqrt(2.0), 4.0 * e.std_error);
  EXPECT_EQ(empirical_mgf(sample(DistSpec::point_mass(0.0), 10, 1), 3.0).value, 1.0);
}

TEST(Sample, CsvRoundTrip) {
  const auto s = sample(DistSpec::gamma(0.7, 1.3), 257, 9);
  std::istringstream in(to_csv(s));
  EXPECT_EQ(sample_from_csv(in).values(), s.values());
  EXPECT_THROW(EmpiricalSample({-1.0}, 0), domain_error);
}
