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

#include <array>
#include <span>
#include <vector>

#include "hcurlmg/mesh.hpp"

namespace hcurlmg {

struct FaceRecord {
  std::array<VertexId, 3> key;  // sorted vertex ids
  TetId tet;
  int face;
};

// Faces of `elements`, sorted by key so that matching faces are adjacent.
std::vector<FaceRecord> collect_faces(const Mesh& mesh, std::span<const TetId> elements);

}  // namespace hcurlmg
