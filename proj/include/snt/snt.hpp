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

#include "snt/distributions.hpp"
#include "snt/engine.hpp"
#include "snt/errors.hpp"
#include "snt/fixed_point.hpp"
#include "snt/interp.hpp"
#include "snt/mixing.hpp"
#include "snt/parallel.hpp"
#include "snt/parse.hpp"
#include "snt/quadrature.hpp"
#include "snt/response.hpp"
#include "snt/rng.hpp"
#include "snt/sample.hpp"
#include "snt/special.hpp"
#include "snt/stats.hpp"
