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

// JSON serialization of reports. Every top-level document carries "schema": 1.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "snt/engine.hpp"
#include "snt/fixed_point.hpp"
#include "snt/stats.hpp"

namespace snt {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// Non-finite values become strings; JSON has no literal for them.
inline Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline Json to_json(const KsReport& r) {
  Json j;
  j["test"] = r.test;
  j["statistic"] = r.statistic;
  j["critical"] = r.critical;
  j["n"] = r.n;
  if (r.n2) j["n2"] = r.n2;
  j["alpha"] = r.alpha;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  return j;
}

inline Json to_json(const ResidualPoint& p) {
  return Json{{"s", p.s}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"residual", p.residual}, {"converged", p.converged}};
}

inline Json to_json(const GridCheck& g) {
  return Json{{"step", g.step},           {"x_max", g.x_max},         {"max_residual", g.max_residual},
              {"at", g.at},               {"tolerance", g.tolerance}, {"pass", g.pass}};
}

inline Json to_json(const TraceRecord& r) {
  return Json{{"iteration", r.iteration},
              {"m_metric", r.m_metric},
              {"mean_estimate", r.mean_estimate},
              {"monotone_ok", r.monotone_ok}};
}

inline Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["report"] = kind;
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace snt
