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

#include "hcurlmg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcurlmg/error.hpp"
#include "mesh_internal.hpp"

namespace hcurlmg {

std::vector<FaceRecord> collect_faces(const Mesh& mesh, std::span<const TetId> elements) {
  std::vector<FaceRecord> faces;
  faces.reserve(4 * elements.size());
  for (TetId k : elements) {
    const Tet& t = mesh.tet(k);
    for (int f = 0; f < 4; ++f) {
      std::array<VertexId, 3> key{t.verts[kLocalFaces[f][0]], t.verts[kLocalFaces[f][1]],
                                  t.verts[kLocalFaces[f][2]]};
      std::sort(key.begin(), key.end());
      faces.push_back({key, k, f});
    }
  }
  std::sort(faces.begin(), faces.end(), [](const FaceRecord& a, const FaceRecord& b) {
    return a.key != b.key ? a.key < b.key : a.tet < b.tet;
  });
  return faces;
}

Mesh::Mesh(std::vector<Vec3> vertices, const std::vector<InitialTet>& tets,
           const std::vector<BoundaryFace>& dirichlet)
    : vertices_(std::move(vertices)) {
  const auto nv = static_cast<VertexId>(vertices_.size());
  for (const Vec3& p : vertices_) {
    if (!p.allFinite()) fail(ErrorKind::InvalidMesh, "non-finite vertex coordinate");
  }
  tets_.reserve(tets.size());
  for (const InitialTet& it : tets) {
    for (VertexId v : it.verts) {
      if (v < 0 || v >= nv) fail(ErrorKind::InvalidMesh, "vertex id out of range");
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (it.verts[i] == it.verts[j]) fail(ErrorKind::InvalidMesh, "repeated vertex in tetrahedron");
      }
    }
    if (it.type < 0 || it.type > 2) fail(ErrorKind::InvalidMesh, "element type must be 0, 1 or 2");
    Tet t;
    t.verts = it.verts;
    t.type = it.type;
    tets_.push_back(t);
  }
  num_roots_ = tets_.size();
  num_leaves_ = tets_.size();

  for (TetId k = 0; k < static_cast<TetId>(tets_.size()); ++k) {
    try {
      initial_volume_ += geometry(k).volume;
    } catch (const Error&) {
      fail(ErrorKind::InvalidMesh, "degenerate tetrahedron " + std::to_string(k));
    }
  }

  std::vector<TetId> all(tets_.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<TetId>(k);
  const auto faces = collect_faces(*this, all);
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i;
    while (j < faces.size() && faces[j].key == faces[i].key) ++j;
    if (j - i > 2) fail(ErrorKind::InvalidMesh, "face shared by more than two elements");
    const FaceKind kind = (j - i == 1) ? FaceKind::Neumann : FaceKind::Interior;
    for (std::size_t r = i; r < j; ++r) tets_[faces[r].tet].faces[faces[r].face] = kind;
    i = j;
  }
  for (const BoundaryFace& bf : dirichlet) {
    if (bf.tet < 0 || bf.tet >= static_cast<TetId>(tets_.size()) || bf.face < 0 || bf.face > 3) {
      fail(ErrorKind::InvalidMesh, "dirichlet face reference out of range");
    }
    FaceKind& kind = tets_[bf.tet].faces[bf.face];
    if (kind == FaceKind::Interior) fail(ErrorKind::InvalidMesh, "dirichlet flag on an interior face");
    kind = FaceKind::Dirichlet;
  }
  for (TetId k = 0; k < static_cast<TetId>(tets_.size()); ++k) attach_leaf(k);
}

std::vector<TetId> Mesh::leaves() const {
  std::vector<TetId> out;
  out.reserve(num_leaves_);
  for (TetId k = 0; k < static_cast<TetId>(tets_.size()); ++k) {
    if (tets_[k].is_leaf()) out.push_back(k);
  }
  return out;
}

std::array<Vec3, 4> Mesh::coordinates(TetId k) const {
  const Tet& t = tets_[k];
  return {vertices_[t.verts[0]], vertices_[t.verts[1]], vertices_[t.verts[2]],
          vertices_[t.verts[3]]};
}

TetGeometry Mesh::geometry(TetId k) const { return TetGeometry::from(coordinates(k)); }

std::span<const TetId> Mesh::edge_patch(EdgeKey e) const {
  auto it = edge_leaves_.find(e);
  if (it == edge_leaves_.end()) return {};
  return it->second;
}

void Mesh::attach_leaf(TetId k) {
  for (int e = 0; e < 6; ++e) edge_leaves_[tets_[k].local_edge(e)].push_back(k);
}

void Mesh::detach_leaf(TetId k) {
  for (int e = 0; e < 6; ++e) {
    auto it = edge_leaves_.find(tets_[k].local_edge(e));
    auto& list = it->second;
    list.erase(std::find(list.begin(), list.end(), k));
    if (list.empty()) edge_leaves_.erase(it);
  }
}

VertexId Mesh::midpoint(EdgeKey e, std::size_t& created) {
  auto it = midpoints_.find(e);
  if (it != midpoints_.end()) return it->second;
  const auto v = static_cast<VertexId>(vertices_.size());
  vertices_.push_back(0.5 * (vertices_[edge_low(e)] + vertices_[edge_high(e)]));
  midpoints_.emplace(e, v);
  ++created;
  return v;
}

std::pair<TetId, TetId> Mesh::bisect(TetId k) {
  if (k < 0 || k >= static_cast<TetId>(tets_.size()) || !tets_[k].is_leaf()) {
    fail(ErrorKind::Precondition, "bisect: element is not a leaf");
  }
  std::size_t created = 0;
  const VertexId m = midpoint(tets_[k].refinement_edge(), created);
  const Tet parent = tets_[k];
  const auto& v = parent.verts;

  Tet c0, c1;
  c0.verts = {v[0], v[2], v[3], m};
  if (parent.type == 0) {
    c1.verts = {v[1], v[3], v[2], m};
  } else {
    c1.verts = {v[1], v[2], v[3], m};
  }
  for (Tet* c : {&c0, &c1}) {
    c->type = (parent.type + 1) % 3;
    c->level = parent.level + 1;
    c->parent = k;
    // Child faces inherit the kind of the parent face containing them; the
    // face opposite the surviving refinement-edge vertex is the new interior
    // face (v2, v3, m).
    for (int f = 0; f < 4; ++f) {
      const VertexId opposite = c->verts[f];
      if (opposite == v[0] || opposite == v[1]) {
        c->faces[f] = FaceKind::Interior;
        continue;
      }
      int pf = 0;
      if (opposite == m) {
        // Face without m: (v0 or v1) plus v2, v3, i.e. opposite the other
        // refinement-edge vertex.
        pf = (c->verts[0] == v[0]) ? 1 : 0;
      } else {
        // Face contains m, hence lies in the parent face that avoids `opposite`.
        while (v[pf] != opposite) ++pf;
      }
      c->faces[f] = parent.faces[pf];
    }
  }

  detach_leaf(k);
  const auto id0 = static_cast<TetId>(tets_.size());
  tets_.push_back(c0);
  tets_.push_back(c1);
  tets_[k].children = {id0, id0 + 1};
  attach_leaf(id0);
  attach_leaf(id0 + 1);
  ++num_leaves_;
  max_level_ = std::max(max_level_, parent.level + 1);
  return {id0, id0 + 1};
}

RefinementReport Mesh::refine(std::span<const TetId> marked) {
  for (TetId k : marked) {
    if (k < 0 || k >= static_cast<TetId>(tets_.size()) || !tets_[k].is_leaf()) {
      fail(ErrorKind::Precondition, "refine: marked element is not a leaf");
    }
  }
  RefinementReport report;
  const std::size_t tets_before = tets_.size();
  const std::size_t verts_before = vertices_.size();
  std::vector<EdgeKey> stack;
  std::vector<TetId> patch;
  for (TetId k : marked) {
    if (!tets_[k].is_leaf()) continue;
    const int cap = depth_cap_override_ > 0 ? depth_cap_override_ : 3 * (max_level_ + 4);
    stack.assign(1, tets_[k].refinement_edge());
    while (!stack.empty()) {
      const EdgeKey e = stack.back();
      auto it = edge_leaves_.find(e);
      if (it == edge_leaves_.end()) {
        stack.pop_back();
        continue;
      }
      TetId incompatible = -1;
      for (TetId p : it->second) {
        if (tets_[p].refinement_edge() != e) {
          incompatible = p;
          break;
        }
      }
      if (incompatible >= 0) {
        stack.push_back(tets_[incompatible].refinement_edge());
        report.max_stack_depth = std::max(report.max_stack_depth, static_cast<int>(stack.size()));
        if (static_cast<int>(stack.size()) > cap) {
          fail(ErrorKind::ClosureDepth,
               "refinement closure exceeded depth cap " + std::to_string(cap) +
                   "; the initial mesh is not admissible for recursive bisection");
        }
        continue;
      }
      patch = it->second;
      for (TetId p : patch) {
        bisect(p);
        ++report.bisections;
      }
      stack.pop_back();
    }
  }
  report.new_tets = tets_.size() - tets_before;
  report.new_vertices = vertices_.size() - verts_before;
  return report;
}

RefinementReport Mesh::refine_uniform(int times) {
  RefinementReport total;
  for (int i = 0; i < times; ++i) {
    const auto leaves_now = leaves();
    const auto r = refine(leaves_now);
    total.new_tets += r.new_tets;
    total.new_vertices += r.new_vertices;
    total.bisections += r.bisections;
    total.max_stack_depth = std::max(total.max_stack_depth, r.max_stack_depth);
  }
  return total;
}

void Mesh::scale(double factor) {
  for (Vec3& p : vertices_) p *= factor;
  initial_volume_ *= factor * factor * factor;
}

CheckResult check_conformity(const Mesh& mesh, std::span<const TetId> elements) {
  const auto faces = collect_faces(mesh, elements);
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i;
    while (j < faces.size() && faces[j].key == faces[i].key) ++j;
    std::ostringstream msg;
    if (j - i > 2) {
      msg << "face shared by " << (j - i) << " elements";
      return {false, msg.str()};
    }
    for (std::size_t r = i; r < j; ++r) {
      const FaceKind kind = mesh.tet(faces[r].tet).faces[faces[r].face];
      const bool interior = kind == FaceKind::Interior;
      if (interior != (j - i == 2)) {
        msg << "element " << faces[r].tet << " face " << faces[r].face
            << (interior ? " is interior but unmatched (hanging node)" : " is boundary but shared");
        return {false, msg.str()};
      }
    }
    i = j;
  }
  double vol = 0.0;
  for (TetId k : elements) vol += mesh.geometry(k).volume;
  if (std::abs(vol - mesh.initial_volume()) > 1e-12 * mesh.initial_volume()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "volume " << vol << " differs from initial volume " << mesh.initial_volume();
    return {false, msg.str()};
  }
  return {};
}

CheckResult check_face_levels(const Mesh& mesh) {
  const auto leaves = mesh.leaves();
  const auto faces = collect_faces(mesh, leaves);
  auto contains = [](const std::array<VertexId, 3>& f, EdgeKey e) {
    const VertexId a = edge_low(e), b = edge_high(e);
    const bool ha = f[0] == a || f[1] == a || f[2] == a;
    const bool hb = f[0] == b || f[1] == b || f[2] == b;
    return ha && hb;
  };
  for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
    if (faces[i].key != faces[i + 1].key) continue;
    const Tet& k1 = mesh.tet(faces[i].tet);
    const Tet& k2 = mesh.tet(faces[i + 1].tet);
    const EdgeKey r1 = k1.refinement_edge(), r2 = k2.refinement_edge();
    const bool k1_has_r2 = k1.has_vertex(edge_low(r2)) && k1.has_vertex(edge_high(r2));
    const bool k2_has_r1 = k2.has_vertex(edge_low(r1)) && k2.has_vertex(edge_high(r1));
    std::ostringstream msg;
    msg << "elements " << faces[i].tet << " and " << faces[i + 1].tet << ": ";
    if (k1_has_r2 && k2_has_r1 && r1 != r2) {
      msg << "mutually contained refinement edges differ";
      return {false, msg.str()};
    }
    const bool f1 = contains(faces[i].key, r1);
    const bool f2 = contains(faces[i].key, r2);
    int expected = 0;  // level(k1) - level(k2)
    if (f1 && !f2) expected = 1;
    if (!f1 && f2) expected = -1;
    if (k1.level - k2.level != expected) {
      msg << "level difference " << (k1.level - k2.level) << ", expected " << expected;
      return {false, msg.str()};
    }
  }
  return {};
}

MeshQuality mesh_quality(const Mesh& mesh) {
  MeshQuality q;
  const auto leaves = mesh.leaves();
  q.ratio.reserve(leaves.size());
  q.width.reserve(leaves.size());
  for (TetId k : leaves) {
    TetGeometry g;
    try {
      g = mesh.geometry(k);
    } catch (const Error&) {
      fail(ErrorKind::InvalidMesh, "degenerate leaf " + std::to_string(k));
    }
    const double d = g.diameter();
    q.width.push_back(d);
    q.ratio.push_back(d / g.inradius());
    q.max_ratio = std::max(q.max_ratio, q.ratio.back());
  }
  return q;
}

}  // namespace hcurlmg
