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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "snt/errors.hpp"

namespace snt {

// Sorted, non-negative Monte Carlo sample with its provenance.
class EmpiricalSample {
 public:
  using Provenance = std::map<std::string, std::string>;

  EmpiricalSample() = default;

  EmpiricalSample(std::vector<double> values, std::uint64_t seed, Provenance provenance = {})
      : values_(std::move(values)), seed_(seed), provenance_(std::move(provenance)) {
    for (double v : values_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw domain_error("empirical sample values must be finite and non-negative");
      }
    }
    std::sort(values_.begin(), values_.end());
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::uint64_t seed() const { return seed_; }
  const Provenance& provenance() const { return provenance_; }

  double mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return values_.empty() ? 0.0 : s / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
  std::uint64_t seed_ = 0;
  Provenance provenance_;
};

// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// `index,value` rows with a header line and LF endings.
inline std::string to_csv(const EmpiricalSample& sample) {
  std::string out = "index,value\n";
  out.reserve(out.size() + sample.size() * 26);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(sample[i]);
    out += '\n';
  }
  return out;
}

inline EmpiricalSample sample_from_csv(std::istream& in, std::uint64_t seed = 0) {
  std::string line;
  std::vector<double> values;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("index", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw domain_error("malformed sample row: '" + line + "'");
    }
  }
  return EmpiricalSample(std::move(values), seed, {{"source", "csv"}});
}

inline EmpiricalSample read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open sample file " + path.string());
  return sample_from_csv(in);
}

// Writes via a sibling temporary file and rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace snt
