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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hcurlmg/geometry.hpp"

namespace hcurlmg {

using VertexId = std::int32_t;
using TetId = std::int32_t;

// Unordered vertex pair packed as (low << 32) | high.
using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}
inline VertexId edge_low(EdgeKey e) { return static_cast<VertexId>(e >> 32); }
inline VertexId edge_high(EdgeKey e) { return static_cast<VertexId>(e & 0xffffffffu); }

enum class FaceKind : std::uint8_t { Interior, Dirichlet, Neumann };

// A tetrahedron of the refinement forest. The refinement edge joins local
// vertices 0 and 1; face i is opposite local vertex i.
struct Tet {
  std::array<VertexId, 4> verts{};
  int type = 0;
  int level = 0;
  TetId parent = -1;
  std::array<TetId, 2> children{-1, -1};
  std::array<FaceKind, 4> faces{};

  bool is_leaf() const { return children[0] < 0; }
  EdgeKey refinement_edge() const { return edge_key(verts[0], verts[1]); }
  EdgeKey local_edge(int e) const {
    return edge_key(verts[kLocalEdges[e][0]], verts[kLocalEdges[e][1]]);
  }
  bool has_vertex(VertexId v) const {
    return verts[0] == v || verts[1] == v || verts[2] == v || verts[3] == v;
  }
};

struct InitialTet {
  std::array<VertexId, 4> verts;
  int type = 0;
};

struct BoundaryFace {
  TetId tet;
  int face;
};

struct RefinementReport {
  std::size_t new_tets = 0;
  std::size_t new_vertices = 0;
  std::size_t bisections = 0;
  int max_stack_depth = 0;
};

// Tetrahedral mesh with the complete bisection forest. Leaves form the
// current conforming mesh; interior forest nodes are kept so that the
// virtual refinement hierarchy can be reconstructed.
class Mesh {
 public:
  Mesh() = default;

  // Faces that occur once are boundary faces: Dirichlet when listed in
  // `dirichlet`, Neumann otherwise. Throws ErrorKind::InvalidMesh on
  // degenerate elements, repeated vertices or faces shared by > 2 elements.
  Mesh(std::vector<Vec3> vertices, const std::vector<InitialTet>& tets,
       const std::vector<BoundaryFace>& dirichlet);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_tets() const { return tets_.size(); }
  std::size_t num_leaves() const { return num_leaves_; }
  std::size_t num_roots() const { return num_roots_; }

  const Vec3& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const Tet& tet(TetId k) const { return tets_[k]; }
  std::span<const Tet> tets() const { return tets_; }

  // Current leaves in ascending id order.
  std::vector<TetId> leaves() const;
  int max_level() const { return max_level_; }
  double initial_volume() const { return initial_volume_; }

  TetGeometry geometry(TetId k) const;
  std::array<Vec3, 4> coordinates(TetId k) const;

  // Leaves sharing the edge; empty once the edge has been bisected.
  std::span<const TetId> edge_patch(EdgeKey e) const;

  // Single bisection without conformity closure. Returns (Child[0], Child[1]).
  std::pair<TetId, TetId> bisect(TetId k);

  // Bisects every marked leaf at least once and restores conformity by
  // recursively refining refinement patches.
  RefinementReport refine(std::span<const TetId> marked);
  RefinementReport refine_uniform(int times = 1);

  // Overrides the closure stack cap; <= 0 restores the default
  // 3 * (max_level + 4).
  void set_closure_depth_cap(int cap) { depth_cap_override_ = cap; }

  // Multiplies every coordinate by `factor`.
  void scale(double factor);

 private:
  std::vector<Vec3> vertices_;
  std::vector<Tet> tets_;
  std::unordered_map<EdgeKey, std::vector<TetId>> edge_leaves_;
  std::unordered_map<EdgeKey, VertexId> midpoints_;
  std::size_t num_leaves_ = 0;
  std::size_t num_roots_ = 0;
  int max_level_ = 0;
  int depth_cap_override_ = 0;
  double initial_volume_ = 0.0;

  void attach_leaf(TetId k);
  void detach_leaf(TetId k);
  VertexId midpoint(EdgeKey e, std::size_t& created);
};

struct CheckResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Face-pairing scan: every face of `elements` occurs once (and is a boundary
// face) or twice with identical vertex triples (and is interior); the volumes
// add up to the initial volume to relative 1e-12.
CheckResult check_conformity(const Mesh& mesh, std::span<const TetId> elements);

// For every pair of leaves sharing a face, checks the refinement-edge / level
// relations that recursive bisection guarantees on admissible initial meshes.
CheckResult check_face_levels(const Mesh& mesh);

struct MeshQuality {
  double max_ratio = 0.0;      // max over leaves of diam(K) / inradius(K)
  std::vector<double> ratio;   // per leaf, in leaves() order
  std::vector<double> width;   // h_K = diam(K)
};
MeshQuality mesh_quality(const Mesh& mesh);

// ASCII format: "vertices N", N coordinate lines, "tets M", M lines
// "v0 v1 v2 v3 type", "dirichlet F", F lines "tet localface". The writer
// emits the current leaves; coordinates use 17 significant digits.
void write_mesh(const Mesh& mesh, std::ostream& out);
Mesh read_mesh(std::istream& in);
void write_mesh_file(const Mesh& mesh, const std::string& path);
Mesh read_mesh_file(const std::string& path);

// Initial meshes. Every axis-aligned cube is split into six Kuhn tetrahedra
// of type 0 whose refinement edge is the cube diagonal; all boundary faces
// are Dirichlet when `dirichlet` is set.
Mesh make_box(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi, bool dirichlet = true);
// (-1,1)^3 minus (0,1) x (-1,0) x (-1,1), built from six unit cubes.
Mesh make_lshape(bool dirichlet = true);
// (-1,1)^3 slit along {(x,0,z): 0 <= x < 1}. Vertices on the slit are
// duplicated for the elements below it so the two slit faces are distinct
// boundary faces.
Mesh make_crack(bool dirichlet = true);
Mesh make_single_tet(const std::array<Vec3, 4>& pts, int type = 0, bool dirichlet = false);

}  // namespace hcurlmg
