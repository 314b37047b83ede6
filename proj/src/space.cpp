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

#include "hcurlmg/space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "hcurlmg/error.hpp"
#include "hcurlmg/quadrature.hpp"

namespace hcurlmg {

DofMap::DofMap(const Mesh& mesh, std::vector<TetId> elements)
    : mesh_(&mesh), elements_(std::move(elements)) {
  std::vector<EdgeKey> all_edges;
  std::vector<VertexId> all_verts;
  std::unordered_set<EdgeKey> dir_edges;
  std::unordered_set<VertexId> dir_verts;
  all_edges.reserve(6 * elements_.size());
  all_verts.reserve(4 * elements_.size());
  for (TetId k : elements_) {
    if (k < 0 || k >= static_cast<TetId>(mesh.num_tets())) {
      fail(ErrorKind::Precondition, "DofMap: element id out of range");
    }
    const Tet& t = mesh.tet(k);
    for (int e = 0; e < 6; ++e) all_edges.push_back(t.local_edge(e));
    for (VertexId v : t.verts) all_verts.push_back(v);
    for (int f = 0; f < 4; ++f) {
      if (t.faces[f] != FaceKind::Dirichlet) continue;
      const auto& lf = kLocalFaces[f];
      for (int a = 0; a < 3; ++a) {
        dir_verts.insert(t.verts[lf[a]]);
        dir_edges.insert(edge_key(t.verts[lf[a]], t.verts[lf[(a + 1) % 3]]));
      }
    }
  }
  std::sort(all_edges.begin(), all_edges.end());
  all_edges.erase(std::unique(all_edges.begin(), all_edges.end()), all_edges.end());
  std::sort(all_verts.begin(), all_verts.end());
  all_verts.erase(std::unique(all_verts.begin(), all_verts.end()), all_verts.end());

  std::unordered_map<EdgeKey, int> dir_index;
  for (EdgeKey e : all_edges) {
    if (dir_edges.count(e)) {
      dir_index.emplace(e, static_cast<int>(dirichlet_edges_.size()));
      dirichlet_edges_.push_back(e);
    } else {
      edge_index_.emplace(e, static_cast<int>(edges_.size()));
      edges_.push_back(e);
    }
  }
  for (VertexId v : all_verts) {
    if (dir_verts.count(v)) continue;
    vertex_index_.emplace(v, static_cast<int>(vertices_.size()));
    vertices_.push_back(v);
  }

  dirichlet_owner_.assign(dirichlet_edges_.size(), 0);
  std::vector<bool> owned(dirichlet_edges_.size(), false);
  elem_edges_.resize(elements_.size());
  elem_signs_.resize(elements_.size());
  elem_verts_.resize(elements_.size());
  for (std::size_t pos = 0; pos < elements_.size(); ++pos) {
    const Tet& t = mesh.tet(elements_[pos]);
    for (int e = 0; e < 6; ++e) {
      const VertexId a = t.verts[kLocalEdges[e][0]];
      const VertexId b = t.verts[kLocalEdges[e][1]];
      const EdgeKey key = edge_key(a, b);
      elem_signs_[pos][e] = a < b ? 1.0 : -1.0;
      auto it = edge_index_.find(key);
      if (it != edge_index_.end()) {
        elem_edges_[pos][e] = it->second;
      } else {
        const int d = dir_index.at(key);
        elem_edges_[pos][e] = -1 - d;
        if (!owned[d]) {
          owned[d] = true;
          dirichlet_owner_[d] = pos;
        }
      }
    }
    for (int i = 0; i < 4; ++i) elem_verts_[pos][i] = vertex_index(t.verts[i]);
  }
}

int DofMap::edge_index(EdgeKey e) const {
  auto it = edge_index_.find(e);
  return it == edge_index_.end() ? -1 : it->second;
}

int DofMap::vertex_index(VertexId v) const {
  auto it = vertex_index_.find(v);
  return it == vertex_index_.end() ? -1 : it->second;
}

Vec3 edge_shape(const TetGeometry& geom, int local_edge, const Vec3& x) {
  if (local_edge < 0 || local_edge > 5) fail(ErrorKind::Precondition, "edge_shape: local edge out of range");
  return geom.edge_shape(local_edge, geom.barycentric(x));
}

namespace {

double segment_moment(const Vec3& a, const Vec3& b, const std::function<Vec3(const Vec3&)>& v) {
  const Vec3 t = b - a;
  double sum = 0.0;
  for (const auto& q : quad::gauss_legendre5()) sum += q.weight * v(a + q.t * t).dot(t);
  if (!std::isfinite(sum)) fail(ErrorKind::Evaluation, "edge moment is not finite");
  return sum;
}

}  // namespace

Vector edge_interpolate(const DofMap& dm, const VectorField& v) {
  const Mesh& mesh = dm.mesh();
  Vector out(dm.num_edges());
  for (std::size_t i = 0; i < dm.num_edges(); ++i) {
    const EdgeKey e = dm.edge(static_cast<int>(i));
    out[i] = segment_moment(mesh.vertex(edge_low(e)), mesh.vertex(edge_high(e)), v);
  }
  return out;
}

Vector edge_interpolate_dirichlet(const DofMap& dm, const SidedVectorField& v) {
  const Mesh& mesh = dm.mesh();
  Vector out(dm.num_dirichlet_edges());
  for (std::size_t i = 0; i < dm.num_dirichlet_edges(); ++i) {
    const EdgeKey e = dm.dirichlet_edge(static_cast<int>(i));
    const Vec3 inside = mesh.geometry(dm.elements()[dm.dirichlet_owner(static_cast<int>(i))]).centroid();
    out[i] = segment_moment(mesh.vertex(edge_low(e)), mesh.vertex(edge_high(e)),
                            [&](const Vec3& x) { return v(x, inside); });
  }
  return out;
}

Vector potential_difference_dirichlet(const DofMap& dm, const SidedScalarField& s) {
  const Mesh& mesh = dm.mesh();
  Vector out(dm.num_dirichlet_edges());
  for (std::size_t i = 0; i < dm.num_dirichlet_edges(); ++i) {
    const EdgeKey e = dm.dirichlet_edge(static_cast<int>(i));
    const Vec3 inside = mesh.geometry(dm.elements()[dm.dirichlet_owner(static_cast<int>(i))]).centroid();
    out[i] = s(mesh.vertex(edge_high(e)), inside) - s(mesh.vertex(edge_low(e)), inside);
    if (!std::isfinite(out[i])) fail(ErrorKind::Evaluation, "potential is not finite");
  }
  return out;
}

Vector nodal_interpolate(const DofMap& dm, const ScalarField& u) {
  Vector out(dm.num_vertices());
  for (std::size_t i = 0; i < dm.num_vertices(); ++i) {
    out[i] = u(dm.mesh().vertex(dm.vertex(static_cast<int>(i))));
  }
  return out;
}

Vec3 evaluate_edge_function(const DofMap& dm, std::size_t pos, const Vector& x,
                            const std::array<double, 4>& lambda, const Vector* dirichlet) {
  const TetGeometry g = dm.mesh().geometry(dm.elements()[pos]);
  const auto& idx = dm.element_edges(pos);
  const auto& sgn = dm.element_signs(pos);
  Vec3 u = Vec3::Zero();
  for (int e = 0; e < 6; ++e) {
    double c = 0.0;
    if (idx[e] >= 0) {
      c = x[idx[e]];
    } else if (dirichlet) {
      c = (*dirichlet)[-1 - idx[e]];
    }
    u += sgn[e] * c * g.edge_shape(e, lambda);
  }
  return u;
}

Vec3 evaluate_edge_curl(const DofMap& dm, std::size_t pos, const Vector& x, const Vector* dirichlet) {
  const TetGeometry g = dm.mesh().geometry(dm.elements()[pos]);
  const auto& idx = dm.element_edges(pos);
  const auto& sgn = dm.element_signs(pos);
  Vec3 c = Vec3::Zero();
  for (int e = 0; e < 6; ++e) {
    double coeff = 0.0;
    if (idx[e] >= 0) {
      coeff = x[idx[e]];
    } else if (dirichlet) {
      coeff = (*dirichlet)[-1 - idx[e]];
    }
    c += sgn[e] * coeff * g.edge_shape_curl(e);
  }
  return c;
}

GradientMap build_gradient_map(const DofMap& dm) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * dm.num_edges());
  for (std::size_t i = 0; i < dm.num_edges(); ++i) {
    const EdgeKey e = dm.edge(static_cast<int>(i));
    const int tail = dm.vertex_index(edge_low(e));
    const int head = dm.vertex_index(edge_high(e));
    if (head >= 0) trip.emplace_back(static_cast<int>(i), head, 1.0);
    if (tail >= 0) trip.emplace_back(static_cast<int>(i), tail, -1.0);
  }
  GradientMap g;
  g.op.matrix.resize(static_cast<Eigen::Index>(dm.num_edges()),
                     static_cast<Eigen::Index>(dm.num_vertices()));
  g.op.matrix.setFromTriplets(trip.begin(), trip.end());
  return g;
}

LevelDofSets level_dof_sets(const MeshHierarchy& h, std::span<const DofMap> level_maps) {
  if (level_maps.size() != h.levels.size()) {
    fail(ErrorKind::Precondition, "level_dof_sets: one DofMap per hierarchy level required");
  }
  LevelDofSets sets;
  sets.edges.resize(level_maps.size());
  sets.vertices.resize(level_maps.size());
  for (std::size_t l = 0; l < level_maps.size(); ++l) {
    const DofMap& dm = level_maps[l];
    std::vector<bool> edge_ok(dm.num_edges(), true);
    std::vector<bool> vert_ok(dm.num_vertices(), true);
    if (l > 0) {
      // Elements of T_l outside the refinement zone are exactly those of
      // level < l (leaves that were never refined that far).
      for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
        if (dm.mesh().tet(dm.elements()[pos]).level == static_cast<int>(l)) continue;
        for (int i : dm.element_edges(pos)) {
          if (i >= 0) edge_ok[i] = false;
        }
        for (int i : dm.element_vertices(pos)) {
          if (i >= 0) vert_ok[i] = false;
        }
      }
    }
    for (std::size_t i = 0; i < edge_ok.size(); ++i) {
      if (edge_ok[i]) sets.edges[l].push_back(static_cast<int>(i));
    }
    for (std::size_t i = 0; i < vert_ok.size(); ++i) {
      if (vert_ok[i]) sets.vertices[l].push_back(static_cast<int>(i));
    }
  }
  return sets;
}

Eigen::Matrix4d dual_basis(const TetGeometry& geom) {
  // Gram matrix of the barycentric coordinates: |K| (1 + delta_ij) / 20.
  Eigen::Matrix4d gram = Eigen::Matrix4d::Constant(geom.volume / 20.0);
  gram.diagonal().array() += geom.volume / 20.0;
  return gram.ldlt().solve(Eigen::Matrix4d::Identity());
}

std::vector<TetId> default_assignment(const DofMap& dm) {
  std::vector<TetId> out(dm.num_vertices(), -1);
  const Mesh& mesh = dm.mesh();
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const TetId k = dm.elements()[pos];
    for (int i : dm.element_vertices(pos)) {
      if (i < 0) continue;
      TetId& cur = out[i];
      if (cur < 0 || mesh.tet(k).level < mesh.tet(cur).level ||
          (mesh.tet(k).level == mesh.tet(cur).level && k < cur)) {
        cur = k;
      }
    }
  }
  return out;
}

namespace {

template <class Sample>
Vector quasi_interpolate_impl(const DofMap& dm, std::span<const TetId> assignment, Sample&& sample) {
  if (assignment.size() != dm.num_vertices()) {
    fail(ErrorKind::Precondition, "quasi_interpolate: assignment size mismatch");
  }
  const Mesh& mesh = dm.mesh();
  Vector out(dm.num_vertices());
  for (std::size_t i = 0; i < dm.num_vertices(); ++i) {
    const VertexId p = dm.vertex(static_cast<int>(i));
    const TetId k = assignment[i];
    if (k < 0 || k >= static_cast<TetId>(mesh.num_tets()) || !mesh.tet(k).has_vertex(p)) {
      fail(ErrorKind::Precondition, "quasi_interpolate: vertex assigned to a non-incident element");
    }
    const Tet& t = mesh.tet(k);
    int local = 0;
    while (t.verts[local] != p) ++local;
    const TetGeometry g = mesh.geometry(k);
    const Eigen::Matrix4d a = dual_basis(g);
    double sum = 0.0;
    for (const auto& q : quad::tet_degree5()) {
      double psi = 0.0;
      for (int m = 0; m < 4; ++m) psi += a(local, m) * q.lambda[m];
      sum += q.weight * psi * sample(k, g, q.lambda);
    }
    out[i] = g.volume * sum;
  }
  return out;
}

}  // namespace

Vector quasi_interpolate(const DofMap& dm, std::span<const TetId> assignment, const ScalarField& u) {
  return quasi_interpolate_impl(dm, assignment,
                                [&](TetId, const TetGeometry& g, const std::array<double, 4>& l) {
                                  const double v = u(g.point(l));
                                  if (!std::isfinite(v)) fail(ErrorKind::Evaluation, "non-finite sample");
                                  return v;
                                });
}

Vector quasi_interpolate(const DofMap& dm, std::span<const TetId> assignment, const Vector& u_h) {
  if (static_cast<std::size_t>(u_h.size()) != dm.num_vertices()) {
    fail(ErrorKind::Precondition, "quasi_interpolate: coefficient vector size mismatch");
  }
  const Mesh& mesh = dm.mesh();
  return quasi_interpolate_impl(dm, assignment,
                                [&](TetId k, const TetGeometry&, const std::array<double, 4>& l) {
                                  double v = 0.0;
                                  for (int m = 0; m < 4; ++m) {
                                    const int idx = dm.vertex_index(mesh.tet(k).verts[m]);
                                    if (idx >= 0) v += u_h[idx] * l[m];
                                  }
                                  return v;
                                });
}

}  // namespace hcurlmg
