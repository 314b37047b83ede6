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
#include <map>
#include <random>
#include <set>
#include <vector>

#include <Eigen/SparseCholesky>
#include <doctest.h>

#include "hcurlmg/assembly.hpp"
#include "hcurlmg/error.hpp"
#include "hcurlmg/estimator.hpp"
#include "hcurlmg/mesh.hpp"
#include "hcurlmg/problems.hpp"
#include "hcurlmg/quadrature.hpp"
#include "hcurlmg/space.hpp"
#include "hcurlmg/verify.hpp"

using namespace hcurlmg;

namespace {

Vec3 zero_field(const Vec3&) { return Vec3::Zero(); }
double zero_scalar(const Vec3&) { return 0.0; }

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::size_t position_of(const DofMap& dm, TetId k) {
  const auto els = dm.elements();
  return static_cast<std::size_t>(std::find(els.begin(), els.end(), k) - els.begin());
}

}  // namespace

TEST_CASE("constant fields have zero indicators") {
  const Mesh m = random_refinement(make_lshape(false), 20, 1);
  const DofMap dm(m, m.leaves());
  const Vec3 c(0.2, 1.0, -0.7);
  auto f = [&](const Vec3&) { return c; };
  const Vector x = edge_interpolate(dm, f);
  const EstimatorReport r = estimate(dm, x, nullptr, f, zero_scalar);
  CHECK(r.eta_max <= 1e-12);
  CHECK(r.eta_h <= 1e-12);
}

TEST_CASE("face terms of two elements agree with a closed-form face integral") {
  const std::vector<Vec3> verts{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(0.9, 0.8, 0.7)};
  const std::vector<InitialTet> tets{{{0, 1, 2, 3}, 0}, {{1, 2, 3, 4}, 0}};
  const Mesh m(verts, tets, {});
  const DofMap dm(m, m.leaves());
  const Vector x = random_vector(static_cast<Eigen::Index>(dm.num_edges()), 3);
  const EstimatorReport r = estimate(dm, x, nullptr, zero_field, zero_scalar);

  const std::array<VertexId, 3> face{1, 2, 3};
  const Triangle tri = triangle(verts[1], verts[2], verts[3]);
  const std::size_t pa = position_of(dm, 0), pb = position_of(dm, 1);
  const TetGeometry ga = m.geometry(0), gb = m.geometry(1);
  // [u_h] is linear on the face: int |j|^2 = area/12 (sum |j_i|^2 + |sum j_i|^2)
  Vec3 sum = Vec3::Zero();
  double sq = 0.0;
  for (VertexId v : face) {
    const Vec3 j = evaluate_edge_function(dm, pa, x, ga.barycentric(verts[v])) -
                   evaluate_edge_function(dm, pb, x, gb.barycentric(verts[v]));
    sum += j;
    sq += j.squaredNorm();
  }
  const double jump_u = tri.area / 12.0 * (sq + sum.squaredNorm());
  const Vec3 dc = evaluate_edge_curl(dm, pa, x) - evaluate_edge_curl(dm, pb, x);
  const double jump_curl = dc.cross(tri.normal.normalized()).squaredNorm() * tri.area;

  for (std::size_t pos : {pa, pb}) {
    const TetGeometry g = m.geometry(dm.elements()[pos]);
    double mass = 0.0;
    for (const auto& q : quad::tet_degree5()) {
      mass += q.weight * g.volume * evaluate_edge_function(dm, pos, x, q.lambda).squaredNorm();
    }
    const double h = g.diameter();
    const double expected = h * h * mass + 0.5 * h * (jump_u + jump_curl);
    CHECK(r.eta[pos] * r.eta[pos] == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(r.eta_h * r.eta_h == doctest::Approx(r.eta[0] * r.eta[0] + r.eta[1] * r.eta[1]).epsilon(1e-12));
}

TEST_CASE("tangential traces of edge functions are continuous") {
  const Mesh m = random_refinement(make_lshape(false), 25, 2);
  const DofMap dm(m, m.leaves());
  const Vector x = random_vector(static_cast<Eigen::Index>(dm.num_edges()), 4);
  std::map<std::array<VertexId, 3>, std::vector<std::size_t>> faces;
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const Tet& t = m.tet(dm.elements()[pos]);
    for (const auto& lf : kLocalFaces) {
      std::array<VertexId, 3> key{t.verts[lf[0]], t.verts[lf[1]], t.verts[lf[2]]};
      std::sort(key.begin(), key.end());
      faces[key].push_back(pos);
    }
  }
  double worst = 0.0;
  int interior = 0;
  for (const auto& [key, owners] : faces) {
    if (owners.size() != 2) continue;
    ++interior;
    const Triangle tri = triangle(m.vertex(key[0]), m.vertex(key[1]), m.vertex(key[2]));
    const Vec3 n = tri.normal.normalized();
    const Vec3 p = (m.vertex(key[0]) + 2.0 * m.vertex(key[1]) + 3.0 * m.vertex(key[2])) / 6.0;
    const TetGeometry ga = m.geometry(dm.elements()[owners[0]]);
    const TetGeometry gb = m.geometry(dm.elements()[owners[1]]);
    const Vec3 j = evaluate_edge_function(dm, owners[0], x, ga.barycentric(p)) -
                   evaluate_edge_function(dm, owners[1], x, gb.barycentric(p));
    worst = std::max(worst, j.cross(n).norm());
  }
  CHECK(interior > 0);
  CHECK(worst <= 1e-12);
}

TEST_CASE("indicators are absolutely homogeneous") {
  const Mesh m = random_refinement(make_lshape(false), 15, 5);
  const DofMap dm(m, m.leaves());
  const Vector x = random_vector(static_cast<Eigen::Index>(dm.num_edges()), 6);
  auto f = [](const Vec3& p) { return Vec3(p[1], p[2] * p[2], 1.0); };
  const EstimatorReport r1 = estimate(dm, x, nullptr, f, zero_scalar);
  const double s = -2.5;
  const EstimatorReport r2 = estimate(dm, s * x, nullptr, [&](const Vec3& p) -> Vec3 { return s * f(p); }, zero_scalar);
  for (std::size_t i = 0; i < r1.eta.size(); ++i) {
    CHECK(r2.eta[i] == doctest::Approx(std::abs(s) * r1.eta[i]).epsilon(1e-12));
  }
}

TEST_CASE("indicators only see the element and its face neighbours") {
  const Mesh m = random_refinement(make_lshape(false), 30, 7);
  const DofMap dm(m, m.leaves());
  const Vector x = random_vector(static_cast<Eigen::Index>(dm.num_edges()), 8);
  const EstimatorReport r = estimate(dm, x, nullptr, zero_field, zero_scalar);
  const std::size_t pos = 0;
  const Tet& t = m.tet(dm.elements()[pos]);
  std::set<int> near;
  for (std::size_t q = 0; q < dm.elements().size(); ++q) {
    const Tet& o = m.tet(dm.elements()[q]);
    bool touches = false;
    for (VertexId v : o.verts) touches = touches || t.has_vertex(v);
    if (!touches) continue;
    for (int e : dm.element_edges(q)) near.insert(e);
  }
  int far = -1;
  for (int e = 0; e < static_cast<int>(dm.num_edges()); ++e) {
    if (!near.count(e)) {
      far = e;
      break;
    }
  }
  REQUIRE(far >= 0);
  Vector y = x;
  y[far] += 10.0;
  const EstimatorReport r2 = estimate(dm, y, nullptr, zero_field, zero_scalar);
  CHECK(r2.eta[pos] == r.eta[pos]);
  CHECK(r2.eta_h != r.eta_h);
}

TEST_CASE("missing divergence is a configuration error") {
  const Mesh m = make_lshape();
  const DofMap dm(m, m.leaves());
  const Vector x = Vector::Zero(static_cast<Eigen::Index>(dm.num_edges()));
  try {
    estimate(dm, x, nullptr, zero_field, ScalarField{});
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
}

TEST_CASE("maximum strategy marking") {
  EstimatorReport r;
  r.elements = {10, 11, 12, 13};
  SUBCASE("theta = 1 marks the maximizers") {
    r.eta = {1.0, 3.0, 3.0, 2.0};
    r.eta_max = 3.0;
    CHECK(mark(r, 1.0) == std::vector<TetId>{11, 12});
    CHECK(mark(r, 0.5) == std::vector<TetId>{11, 12, 13});
  }
  SUBCASE("flat indicators mark everything") {
    r.eta = {2.0, 2.0, 2.0, 2.0};
    r.eta_max = 2.0;
    for (double theta : {0.1, 0.5, 1.0}) CHECK(mark(r, theta).size() == 4);
  }
  SUBCASE("zero indicators mark nothing") {
    r.eta = {0.0, 0.0, 0.0, 0.0};
    r.eta_max = 0.0;
    CHECK(mark(r, 0.5).empty());
  }
  SUBCASE("theta outside (0, 1] is rejected") {
    r.eta = {1.0, 1.0, 1.0, 1.0};
    r.eta_max = 1.0;
    CHECK_THROWS_AS(mark(r, 0.0), Error);
    CHECK_THROWS_AS(mark(r, 1.5), Error);
  }
}

TEST_CASE("first marks on the L-shape touch the reentrant edge") {
  const ProblemPreset p = lshape_problem();
  const Mesh m = p.build();
  const DofMap dm(m, m.leaves());
  const Vector lift = potential_difference_dirichlet(dm, p.potential);
  const AssembledSystem sys = assemble(dm, p.f, &lift);
  const Eigen::SparseMatrix<double> col = sys.a.matrix;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(col);
  const Vector x = ldlt.solve(sys.b);
  const EstimatorReport r = estimate(dm, x, &lift, p.f, p.div_f);
  auto touches_axis = [&](TetId k) {
    for (VertexId v : m.tet(k).verts) {
      if (std::hypot(m.vertex(v)[0], m.vertex(v)[1]) < 1e-12) return true;
    }
    return false;
  };
  for (double theta : {0.75, 1.0}) {
    const auto marked = mark(r, theta);
    REQUIRE_FALSE(marked.empty());
    for (TetId k : marked) CHECK(touches_axis(k));
  }
  // At theta = 0.5 a few elements of the first layer next to the axis are
  // marked as well: every mark lies within one element diameter of it.
  const auto marked = mark(r, 0.5);
  std::size_t on_axis = 0;
  for (TetId k : marked) {
    const TetGeometry g = m.geometry(k);
    CHECK(std::hypot(g.centroid()[0], g.centroid()[1]) <= g.diameter());
    on_axis += touches_axis(k);
  }
  CHECK(2 * on_axis > marked.size());
}
