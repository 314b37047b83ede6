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

#include <vector>

#include "hcurlmg/mesh.hpp"

namespace hcurlmg {

// Virtual refinement hierarchy T_0 < T_1 < ... < T_L reconstructed from the
// bisection forest. T_l holds every forest element of level l together with
// the leaves of level < l; T_L is the leaf mesh.
struct MeshHierarchy {
  std::vector<std::vector<TetId>> levels;
  // zones[l]: leaves of level >= l (the refinement zone omega_l).
  std::vector<std::vector<TetId>> zones;
  // Geometric mean of h_{l+1} / h_l with h_l the largest diameter among the
  // forest elements of level l.
  double theta_hat = 1.0;

  int finest_level() const { return static_cast<int>(levels.size()) - 1; }
};

MeshHierarchy virtual_hierarchy(const Mesh& mesh);

// Elements of the virtual mesh T_l, ascending ids.
std::vector<TetId> virtual_level(const Mesh& mesh, int level);

const std::vector<TetId>& refinement_zone(const MeshHierarchy& h, int level);

// Forest elements grouped by level: result[l] = { K : level(K) == l }.
std::vector<std::vector<TetId>> forest_generations(const Mesh& mesh);

}  // namespace hcurlmg
