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

// Runs every reproduction check and prints one PASS/FAIL line per check.

#include <iostream>

#include "repro.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= snt::repro::kCount; ++id) {
    const auto o = snt::repro::run(id);
    std::cout << snt::repro::line(o) << " (" << snt::repro::detail::fmt(std::round(o.seconds * 10) / 10) << " s)"
              << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (snt::repro::kCount - failed) << "/" << snt::repro::kCount << " checks passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
