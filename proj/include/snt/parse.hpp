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

// String keys for distributions, responses and mixing measures.
//
//   gamma:A,B  linnik:L,B  glinnik:A,B,G  s2:D  s2rho:D,R  stable-sub:SPEC,A  point:M
//   gamma:ALPHA  s2  sech2  exp  indicator:A  pow:BASE:GAMMA  nu-beta:1,ALPHA  nu-uniform  nu-s2

#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "snt/distributions.hpp"
#include "snt/errors.hpp"
#include "snt/mixing.hpp"
#include "snt/response.hpp"

namespace snt {

namespace detail {

inline double parse_number(std::string_view text, std::string_view key) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw domain_error("bad number '" + s + "' in key '" + std::string(key) + "'");
  }
  return v;
}

inline std::vector<double> parse_numbers(std::string_view list, std::string_view key) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = list.find(',', start);
    out.push_back(parse_number(list.substr(start, comma - start), key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<double> expect_arity(std::string_view args, std::size_t n, std::string_view key) {
  auto v = parse_numbers(args, key);
  if (v.size() != n) {
    throw domain_error("key '" + std::string(key) + "' takes " + std::to_string(n) + " parameter(s)");
  }
  return v;
}

}  // namespace detail

inline DistSpec parse_dist(std::string_view key) {
  const std::size_t colon = key.find(':');
  if (colon == std::string_view::npos) throw domain_error("distribution key '" + std::string(key) + "' has no ':'");
  const std::string_view family = key.substr(0, colon);
  const std::string_view args = key.substr(colon + 1);
  if (family == "gamma") {
    const auto v = detail::expect_arity(args, 2, key);
    return DistSpec::gamma(v[0], v[1]);
  }
  if (family == "linnik") {
    const auto v = detail::expect_arity(args, 2, key);
    return DistSpec::positive_linnik(v[0], v[1]);
  }
  if (family == "glinnik") {
    const auto v = detail::expect_arity(args, 3, key);
    return DistSpec::generalized_linnik(v[0], v[1], v[2]);
  }
  if (family == "s2") {
    const auto v = detail::expect_arity(args, 1, key);
    return DistSpec::s2(v[0]);
  }
  if (family == "s2rho") {
    const auto v = detail::expect_arity(args, 2, key);
    return DistSpec::s2_rho(v[0], v[1]);
  }
  if (family == "point") {
    const auto v = detail::expect_arity(args, 1, key);
    return DistSpec::point_mass(v[0]);
  }
  if (family == "stable-sub") {
    const std::size_t comma = args.rfind(',');
    if (comma == std::string_view::npos) throw domain_error("stable-sub key needs SPEC,ALPHA");
    return DistSpec::stable_subordinated(parse_dist(args.substr(0, comma)),
                                         detail::parse_number(args.substr(comma + 1), key));
  }
  throw domain_error("unknown distribution family '" + std::string(family) + "'");
}

inline MixingMeasure parse_mixing(std::string_view key) {
  if (key == "nu-uniform") return MixingMeasure::uniform();
  if (key == "nu-s2") return MixingMeasure::s2();
  if (key.substr(0, 8) == "nu-beta:") {
    const auto v = detail::expect_arity(key.substr(8), 2, key);
    if (v[0] != 1.0) throw domain_error("only Beta(1, alpha) mixing measures are supported");
    return MixingMeasure::beta1(v[1]);
  }
  throw domain_error("unknown mixing measure '" + std::string(key) + "'");
}

inline ResponseFunction parse_response(std::string_view key) {
  if (key == "s2") return ResponseFunction::s2_family();
  if (key == "sech2") return ResponseFunction::sech2();
  if (key == "exp") return ResponseFunction::exponential();
  if (key.substr(0, 3) == "nu-") return from_mixing_measure(parse_mixing(key));
  if (key.substr(0, 6) == "gamma:") {
    return ResponseFunction::gamma_family(detail::expect_arity(key.substr(6), 1, key)[0]);
  }
  if (key.substr(0, 10) == "indicator:") {
    return ResponseFunction::indicator(detail::expect_arity(key.substr(10), 1, key)[0]);
  }
  if (key.substr(0, 4) == "pow:") {
    const std::string_view rest = key.substr(4);
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw domain_error("pow key needs BASE:GAMMA");
    return parse_response(rest.substr(0, colon)).power_transform(detail::parse_number(rest.substr(colon + 1), key));
  }
  throw domain_error("unknown response '" + std::string(key) + "'");
}

}  // namespace snt
