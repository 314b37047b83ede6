// Copyright 2026 The hcurlmg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hcurlmg/mesh.hpp"

namespace hcurlmg {

// One measured quantity; the check passes when value <= limit.
struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::string problem = "lshape";
  int levels = 5;
};

// Suites: cdp, prolongation, kernel, scs, coloring, contraction, estimator.
// Unknown names throw ErrorKind::Configuration.
VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts = {});
const std::vector<std::string>& verify_suites();

// Mesh with `rounds` refinements of one randomly chosen leaf each.
Mesh random_refinement(Mesh mesh, int rounds, std::uint64_t seed);

// Refines the leaves touching the z axis until the forest has `levels`
// levels above the initial mesh.
Mesh axis_refinement(Mesh mesh, int levels);

}  // namespace hcurlmg
