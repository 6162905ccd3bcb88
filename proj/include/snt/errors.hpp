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

#include <stdexcept>
#include <string>

namespace snt {

// Parameter outside its family domain, bad argument, malformed key.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input rejected by a model-level admissibility rule (Condition A on the
// response, unit-mass regime, excluded mixing measures).
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature non-convergence, series breakdown, interpolation failure.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation has no closed/series evaluation for this family.
class unsupported_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw domain_error(what);
}

}  // namespace detail
}  // namespace snt
