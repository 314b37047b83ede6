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

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include <doctest.h>

#include "hcurlmg/error.hpp"
#include "hcurlmg/hierarchy.hpp"
#include "hcurlmg/mesh.hpp"
#include "hcurlmg/verify.hpp"

using namespace hcurlmg;

namespace {

const std::array<Vec3, 4> kRefTet{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};

double leaf_volume(const Mesh& m) {
  double v = 0.0;
  for (TetId k : m.leaves()) v += m.geometry(k).volume;
  return v;
}

bool is_descendant(const Mesh& m, TetId k, TetId root) {
  for (; k >= 0; k = m.tet(k).parent) {
    if (k == root) return true;
  }
  return false;
}

// Edge lengths scaled by the longest one, sorted: a congruence class up to
// scaling (and reflection).
std::array<long long, 6> shape_signature(const Mesh& m, TetId k) {
  const auto g = m.geometry(k);
  std::array<double, 6> len{};
  for (int e = 0; e < 6; ++e) len[e] = g.edge_vector(e).norm();
  std::sort(len.begin(), len.end());
  std::array<long long, 6> sig{};
  for (int e = 0; e < 6; ++e) sig[e] = std::llround(len[e] / len[5] * 1e8);
  return sig;
}

}  // namespace

TEST_CASE("bisection of a type-0 element follows the renumbering rule") {
  Mesh m = make_single_tet(kRefTet, 0);
  const auto parent = m.tet(0).verts;
  const auto [c0, c1] = m.bisect(0);
  const VertexId mid = static_cast<VertexId>(m.num_vertices()) - 1;
  CHECK((m.vertex(mid) - Vec3(0.5, 0, 0)).norm() == doctest::Approx(0.0));
  CHECK(m.tet(c0).verts == std::array<VertexId, 4>{parent[0], parent[2], parent[3], mid});
  CHECK(m.tet(c1).verts == std::array<VertexId, 4>{parent[1], parent[3], parent[2], mid});
  CHECK(m.tet(c0).type == 1);
  CHECK(m.tet(c1).type == 1);
  CHECK_FALSE(m.tet(0).is_leaf());
  CHECK(m.tet(c0).level == 1);
}

TEST_CASE("bisection of a type-1 element keeps the order of the second child") {
  Mesh m = make_single_tet(kRefTet, 1);
  const auto parent = m.tet(0).verts;
  const auto [c0, c1] = m.bisect(0);
  const VertexId mid = static_cast<VertexId>(m.num_vertices()) - 1;
  CHECK(m.tet(c0).verts == std::array<VertexId, 4>{parent[0], parent[2], parent[3], mid});
  CHECK(m.tet(c1).verts == std::array<VertexId, 4>{parent[1], parent[2], parent[3], mid});
  CHECK(m.tet(c1).type == 2);
}

TEST_CASE("bisecting a non-leaf is a precondition violation") {
  Mesh m = make_single_tet(kRefTet, 0);
  m.bisect(0);
  try {
    m.bisect(0);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
}

TEST_CASE("degenerate elements are rejected") {
  const std::array<Vec3, 4> flat{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)};
  CHECK_THROWS_AS(make_single_tet(flat), Error);
}

TEST_CASE("two generations of bisection conserve volume") {
  Mesh m = make_single_tet(kRefTet, 0);
  const auto [a, b] = m.bisect(0);
  m.bisect(a);
  m.bisect(b);
  CHECK(m.num_leaves() == 4);
  CHECK(leaf_volume(m) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("uniform refinement raises every leaf level by one without closure") {
  Mesh m = make_box(1, 1, 1, Vec3(0, 0, 0), Vec3(1, 1, 1));
  for (int r = 1; r <= 3; ++r) {
    const std::size_t before = m.num_leaves();
    const auto rep = m.refine_uniform(1);
    CHECK(m.num_leaves() == 2 * before);
    CHECK(rep.bisections == before);
    for (TetId k : m.leaves()) CHECK(m.tet(k).level == r);
    CHECK(check_conformity(m, m.leaves()).ok);
  }
}

TEST_CASE("marking one interior element triggers a conforming closure") {
  Mesh m = make_box(2, 2, 2, Vec3(0, 0, 0), Vec3(1, 1, 1));
  const Vec3 center(0.5, 0.5, 0.5);
  TetId interior = -1;
  for (TetId k : m.leaves()) {
    for (VertexId v : m.tet(k).verts) {
      if ((m.vertex(v) - center).norm() < 1e-12) interior = k;
    }
    if (interior >= 0) break;
  }
  REQUIRE(interior >= 0);
  const auto rep = m.refine(std::span<const TetId>(&interior, 1));
  CHECK(rep.bisections > 1);
  const auto conf = check_conformity(m, m.leaves());
  CHECK_MESSAGE(conf.ok, conf.message);
  const auto lv = check_face_levels(m);
  CHECK_MESSAGE(lv.ok, lv.message);
  CHECK(leaf_volume(m) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random local refinement keeps conformity, volume and face-level relations") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Mesh m = random_refinement(make_lshape(), 60, seed);
    CHECK(check_conformity(m, m.leaves()).ok);
    CHECK(check_face_levels(m).ok);
    CHECK(std::abs(leaf_volume(m) - m.initial_volume()) <= 1e-12 * m.initial_volume());
    for (std::size_t k = 0; k < m.num_tets(); ++k) {
      const Tet& t = m.tet(static_cast<TetId>(k));
      if (t.parent >= 0) CHECK(t.level == m.tet(t.parent).level + 1);
    }
  }
}

TEST_CASE("virtual hierarchy after one uniform refinement") {
  Mesh m = make_box(1, 1, 1, Vec3(0, 0, 0), Vec3(1, 1, 1));
  m.refine_uniform(1);
  const MeshHierarchy h = virtual_hierarchy(m);
  REQUIRE(h.finest_level() == 1);
  CHECK(h.levels[0].size() == 6);
  auto leaves = m.leaves();
  auto top = h.levels[1];
  std::sort(leaves.begin(), leaves.end());
  std::sort(top.begin(), top.end());
  CHECK(top == leaves);
  CHECK(refinement_zone(h, 1).size() == m.num_leaves());
  CHECK(refinement_zone(h, 0).size() == m.num_leaves());
}

TEST_CASE("local refinement leaves the coarse mesh untouched outside the refined region") {
  Mesh m = make_box(4, 1, 1, Vec3(0, 0, 0), Vec3(4, 1, 1));
  for (int round = 0; round < 3; ++round) {
    std::vector<TetId> corner;
    for (TetId k : m.leaves()) {
      if (m.tet(k).has_vertex(0)) corner.push_back(k);
    }
    m.refine(corner);
  }
  const MeshHierarchy h = virtual_hierarchy(m);
  CHECK(h.finest_level() == m.max_level());

  std::set<TetId> refined_roots, untouched_roots;
  for (TetId r = 0; r < static_cast<TetId>(m.num_roots()); ++r) {
    (m.tet(r).is_leaf() ? untouched_roots : refined_roots).insert(r);
  }
  REQUIRE_FALSE(untouched_roots.empty());
  for (int l = 0; l <= h.finest_level(); ++l) {
    std::set<TetId> outside;
    for (TetId k : h.levels[l]) {
      bool inside = false;
      for (TetId r : refined_roots) inside = inside || is_descendant(m, k, r);
      if (!inside) outside.insert(k);
    }
    CHECK(outside == untouched_roots);
    CHECK(check_conformity(m, h.levels[l]).ok);
  }
}

TEST_CASE("refinement zones of a single-corner refinement") {
  Mesh m = make_box(2, 2, 2, Vec3(0, 0, 0), Vec3(1, 1, 1));
  std::vector<TetId> corner;
  for (TetId k : m.leaves()) {
    if (m.tet(k).has_vertex(0)) corner.push_back(k);
  }
  m.refine(corner);
  const MeshHierarchy h = virtual_hierarchy(m);
  std::vector<TetId> expected;
  for (TetId k : m.leaves()) {
    if (m.tet(k).level >= 1) expected.push_back(k);
  }
  auto zone = refinement_zone(h, 1);
  std::sort(zone.begin(), zone.end());
  std::sort(expected.begin(), expected.end());
  CHECK(zone == expected);
  CHECK(zone.size() < m.num_leaves());
  for (int l = 1; l <= h.finest_level(); ++l) {
    const auto& outer = refinement_zone(h, l - 1);
    for (TetId k : refinement_zone(h, l)) CHECK(std::find(outer.begin(), outer.end(), k) != outer.end());
  }
}

TEST_CASE("shape ratio of the regular tetrahedron") {
  const double s = 1.0;
  const std::array<Vec3, 4> reg{Vec3(0, 0, 0), Vec3(s, 0, 0), Vec3(s / 2, s * std::sqrt(3.0) / 2, 0),
                                Vec3(s / 2, s * std::sqrt(3.0) / 6, s * std::sqrt(2.0 / 3.0))};
  const Mesh m = make_single_tet(reg);
  // inradius = s / sqrt(24), diameter = s.
  CHECK(mesh_quality(m).max_ratio == doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));
}

TEST_CASE("shape ratio is scale invariant") {
  Mesh m = random_refinement(make_lshape(), 20, 5);
  const auto before = mesh_quality(m).ratio;
  m.scale(2.0);
  const auto after = mesh_quality(m).ratio;
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
}

TEST_CASE("bisection of a Kuhn element produces finitely many similarity classes") {
  Mesh m = make_box(1, 1, 1, Vec3(0, 0, 0), Vec3(1, 1, 1));
  double max_ratio_3 = 0.0, max_ratio_9 = 0.0;
  std::set<std::array<long long, 6>> classes;
  for (int r = 0; r <= 9; ++r) {
    if (r > 0) m.refine_uniform(1);
    const double q = mesh_quality(m).max_ratio;
    if (r <= 3) max_ratio_3 = std::max(max_ratio_3, q);
    max_ratio_9 = std::max(max_ratio_9, q);
    if (r <= 8) {
      for (TetId k : m.leaves()) classes.insert(shape_signature(m, k));
    }
  }
  CHECK(max_ratio_9 == doctest::Approx(max_ratio_3).epsilon(1e-10));
  CHECK(classes.size() <= 36);
  MESSAGE("similarity classes over 8 refinements: " << classes.size());
}

TEST_CASE("mesh text format round trip") {
  const Mesh m = random_refinement(make_crack(), 15, 9);
  std::stringstream buf;
  write_mesh(m, buf);
  const Mesh r = read_mesh(buf);
  CHECK(r.num_leaves() == m.num_leaves());
  CHECK(r.num_vertices() == m.num_vertices());
  CHECK(leaf_volume(r) == doctest::Approx(leaf_volume(m)).epsilon(1e-14));
  CHECK(check_conformity(r, r.leaves()).ok);
  std::size_t dir_m = 0, dir_r = 0;
  for (TetId k : m.leaves()) {
    for (FaceKind f : m.tet(k).faces) dir_m += f == FaceKind::Dirichlet;
  }
  for (TetId k : r.leaves()) {
    for (FaceKind f : r.tet(k).faces) dir_r += f == FaceKind::Dirichlet;
  }
  CHECK(dir_m == dir_r);
  std::stringstream again;
  write_mesh(r, again);
  CHECK(again.str() == buf.str());
}

TEST_CASE("malformed mesh text is an io error") {
  std::stringstream bad("vertices 3\n0 0 0\n");
  try {
    read_mesh(bad);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("preset domains have the expected volume") {
  CHECK(make_lshape().initial_volume() == doctest::Approx(6.0));
  CHECK(make_crack().initial_volume() == doctest::Approx(8.0));
  const Mesh crack = make_crack();
  CHECK(check_conformity(crack, crack.leaves()).ok);
}
