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

#include "hcurlmg/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "hcurlmg/error.hpp"

namespace hcurlmg {

std::vector<TetId> virtual_level(const Mesh& mesh, int level) {
  std::vector<TetId> out;
  const auto tets = mesh.tets();
  for (TetId k = 0; k < static_cast<TetId>(tets.size()); ++k) {
    const Tet& t = tets[k];
    // No strictly finer element of level <= l inside K <=> K is a leaf or
    // its children are already beyond level l.
    if (t.level == level || (t.level < level && t.is_leaf())) out.push_back(k);
  }
  return out;
}

std::vector<std::vector<TetId>> forest_generations(const Mesh& mesh) {
  std::vector<std::vector<TetId>> gens(mesh.max_level() + 1);
  const auto tets = mesh.tets();
  for (TetId k = 0; k < static_cast<TetId>(tets.size()); ++k) gens[tets[k].level].push_back(k);
  return gens;
}

MeshHierarchy virtual_hierarchy(const Mesh& mesh) {
  MeshHierarchy h;
  const int L = mesh.max_level();
  h.levels.resize(L + 1);
  h.zones.resize(L + 1);
  const auto tets = mesh.tets();
  std::vector<double> width(L + 1, 0.0);
  for (TetId k = 0; k < static_cast<TetId>(tets.size()); ++k) {
    const Tet& t = tets[k];
    width[t.level] = std::max(width[t.level], mesh.geometry(k).diameter());
    if (t.is_leaf()) {
      for (int l = t.level; l <= L; ++l) h.levels[l].push_back(k);
      for (int l = 0; l <= t.level; ++l) h.zones[l].push_back(k);
    } else {
      h.levels[t.level].push_back(k);
    }
  }
  for (auto& lv : h.levels) std::sort(lv.begin(), lv.end());
  if (L > 0) h.theta_hat = std::pow(width[L] / width[0], 1.0 / L);
  return h;
}

const std::vector<TetId>& refinement_zone(const MeshHierarchy& h, int level) {
  if (level < 0 || level > h.finest_level()) {
    fail(ErrorKind::Precondition, "refinement_zone: level out of range");
  }
  return h.zones[level];
}

}  // namespace hcurlmg
