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
#include <unordered_map>
#include <vector>

#include "hcurlmg/hierarchy.hpp"
#include "hcurlmg/mesh.hpp"
#include "hcurlmg/sparse.hpp"

namespace hcurlmg {

// Degrees of freedom of the lowest-order edge space U(T) and the linear
// Lagrange space V(T) on a conforming element set T (the leaves, or one
// level of the virtual hierarchy). Edges are oriented from the lower to the
// higher vertex id. Edges and vertices on Dirichlet faces carry no active
// dof; Dirichlet edges get their own numbering for boundary lifts.
class DofMap {
 public:
  DofMap(const Mesh& mesh, std::vector<TetId> elements);

  const Mesh& mesh() const { return *mesh_; }
  std::span<const TetId> elements() const { return elements_; }

  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_dirichlet_edges() const { return dirichlet_edges_.size(); }

  EdgeKey edge(int i) const { return edges_[i]; }
  VertexId vertex(int i) const { return vertices_[i]; }
  EdgeKey dirichlet_edge(int i) const { return dirichlet_edges_[i]; }
  // Position (in elements()) of one element owning Dirichlet edge i.
  std::size_t dirichlet_owner(int i) const { return dirichlet_owner_[i]; }
  std::span<const EdgeKey> edges() const { return edges_; }
  std::span<const VertexId> vertices() const { return vertices_; }

  // -1 when the edge / vertex is not an active dof.
  int edge_index(EdgeKey e) const;
  int vertex_index(VertexId v) const;

  // Per element (by position in elements()): active edge index, or
  // -1 - (dirichlet edge index) for edges on Gamma_D.
  const std::array<int, 6>& element_edges(std::size_t pos) const { return elem_edges_[pos]; }
  // +1 when the local edge orientation agrees with the global one.
  const std::array<double, 6>& element_signs(std::size_t pos) const { return elem_signs_[pos]; }
  // Active vertex index or -1.
  const std::array<int, 4>& element_vertices(std::size_t pos) const { return elem_verts_[pos]; }

 private:
  const Mesh* mesh_;
  std::vector<TetId> elements_;
  std::vector<EdgeKey> edges_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeKey> dirichlet_edges_;
  std::vector<std::size_t> dirichlet_owner_;
  std::unordered_map<EdgeKey, int> edge_index_;
  std::unordered_map<VertexId, int> vertex_index_;
  std::vector<std::array<int, 6>> elem_edges_;
  std::vector<std::array<double, 6>> elem_signs_;
  std::vector<std::array<int, 4>> elem_verts_;
};

// Whitney shape function of local edge `local_edge` at the point x.
Vec3 edge_shape(const TetGeometry& geom, int local_edge, const Vec3& x);

// Edge moments  int_E v . t ds  (5-point Gauss) for every active edge.
Vector edge_interpolate(const DofMap& dm, const VectorField& v);
// Edge moments for the Dirichlet edges; `inside` is the centroid of an
// element owning the edge.
Vector edge_interpolate_dirichlet(const DofMap& dm, const SidedVectorField& v);
// Exact moments of a gradient field grad(s) on the Dirichlet edges:
// s(head) - s(tail).
Vector potential_difference_dirichlet(const DofMap& dm, const SidedScalarField& s);

Vector nodal_interpolate(const DofMap& dm, const ScalarField& u);

// Evaluates u_h = sum_E x_E b_E at a point of the element at `pos`.
Vec3 evaluate_edge_function(const DofMap& dm, std::size_t pos, const Vector& x,
                            const std::array<double, 4>& lambda, const Vector* dirichlet = nullptr);
Vec3 evaluate_edge_curl(const DofMap& dm, std::size_t pos, const Vector& x,
                        const Vector* dirichlet = nullptr);

// Discrete gradient: nodal coefficients -> edge coefficients, entries +-1.
struct GradientMap {
  SparseOperator op;
};
GradientMap build_gradient_map(const DofMap& dm);

// Per-level index sets of basis functions supported in the closure of the
// refinement zone: indices into the level's DofMap.
struct LevelDofSets {
  std::vector<std::vector<int>> edges;
  std::vector<std::vector<int>> vertices;
};
LevelDofSets level_dof_sets(const MeshHierarchy& h, std::span<const DofMap> level_maps);

// Coefficients a(j, k) of the L2-dual basis psi_j = sum_k a(j, k) lambda_k.
Eigen::Matrix4d dual_basis(const TetGeometry& geom);

// Vertex -> element assignment; default picks the incident element of
// smallest level, ties broken by smallest id.
std::vector<TetId> default_assignment(const DofMap& dm);

// Local quasi-interpolation: coefficient at p = int_{K_p} psi_p u dx.
Vector quasi_interpolate(const DofMap& dm, std::span<const TetId> assignment, const ScalarField& u);
// Same for a linear finite element function given by its active nodal
// coefficients (zero on Gamma_D).
Vector quasi_interpolate(const DofMap& dm, std::span<const TetId> assignment, const Vector& u_h);

}  // namespace hcurlmg
