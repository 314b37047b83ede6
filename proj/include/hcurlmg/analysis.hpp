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
#include <span>
#include <vector>

#include "hcurlmg/experiment.hpp"
#include "hcurlmg/multigrid.hpp"

namespace hcurlmg {

// Colors of vertex and edge dofs such that dofs sharing an element of the
// given set get different colors.
struct LevelColoring {
  std::vector<int> vertex_color;
  std::vector<int> edge_color;
  int num_vertex_colors = 0;
  int num_edge_colors = 0;
};
struct ColoringPartition {
  std::vector<LevelColoring> levels;
};

// First fit over ascending dof index; adjacency means a shared element.
LevelColoring greedy_coloring(const Mesh& mesh, std::span<const TetId> elements,
                              std::span<const VertexId> vertices, std::span<const EdgeKey> edges);
// Brute-force scan: every element of the set sees pairwise distinct colors.
bool coloring_is_valid(const Mesh& mesh, std::span<const TetId> elements, std::span<const VertexId> vertices,
                       std::span<const EdgeKey> edges, const LevelColoring& coloring);
// Colors B^l_V and B^l_U of every level with the level-l elements.
ColoringPartition color_levels(const Mesh& mesh, const MgHierarchy& mg);

struct ScsSample {
  int l = 0;
  int m = 0;
  double cosine = 0.0;
};
struct ScsResult {
  std::vector<ScsSample> samples;   // maximum per level pair (l < m)
  std::vector<double> by_distance;  // maximum per |l - m|, index 0 unused
  double q_hat = 0.0;               // fitted decay rate
  double c_hat = 0.0;               // fitted constant
  double max_disjoint = 0.0;        // largest cosine over disjoint-support pairs
  std::uint64_t seed = 0;
};

// Energy cosine |a(u, v)| / (|u|_A |v|_A) of fine coefficient vectors.
double energy_cosine(const SparseOperator& a, const Vector& u, const Vector& v);

// Random combinations inside single color classes of levels l and m
// (edge functions or gradients, chosen at random), `samples` draws per
// level pair; q_hat from a log-linear fit of the per-distance maxima.
ScsResult measure_scs(const MgHierarchy& mg, int samples, std::uint64_t seed);

struct UniformityRow {
  int stage = 0;
  int levels = 0;
  std::size_t n_el = 0;
  double contraction = 0.0;
};
// Adaptive loop from the unrefined initial mesh with a contraction estimate
// per stage.
std::vector<UniformityRow> uniformity_study(const ProblemPreset& problem, int stages, ExperimentOptions opts);

struct AblationRow {
  int stage = 0;
  int levels = 0;
  std::size_t n_el = 0;
  double hybrid = 0.0;      // contraction with nodal smoothing
  double edges_only = 0.0;  // contraction without it
};
// Both smoothers on the same sequence of adaptive meshes.
std::vector<AblationRow> ablation_study(const ProblemPreset& problem, int stages, ExperimentOptions opts);

}  // namespace hcurlmg
