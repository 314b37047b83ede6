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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "hcurlmg/error.hpp"
#include "hcurlmg/hierarchy.hpp"
#include "hcurlmg/mesh.hpp"
#include "hcurlmg/quadrature.hpp"
#include "hcurlmg/space.hpp"
#include "hcurlmg/verify.hpp"
#include "oracles.hpp"

using namespace hcurlmg;

namespace {

const std::array<Vec3, 4> kSkewTet{Vec3(0, 0, 0), Vec3(2, 0, 0), Vec3(0.5, 1, 0), Vec3(1.0 / 3, 0.25, 1.5)};

// Path integral of local shape e along local edge f by 5-point Gauss.
double path_integral(const TetGeometry& g, int e, int f) {
  const auto [i, j] = kLocalEdges[f];
  double s = 0.0;
  for (const auto& q : quad::gauss_legendre5()) {
    std::array<double, 4> lam{};
    lam[i] = 1.0 - q.t;
    lam[j] = q.t;
    s += q.weight * g.edge_shape(e, lam).dot(g.edge_vector(f));
  }
  return s;
}

double max_entry(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("edge shape functions are dual to the edge moments") {
  for (const auto& pts : {std::array<Vec3, 4>{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}, kSkewTet}) {
    const TetGeometry g = TetGeometry::from(pts);
    Eigen::Matrix<double, 6, 6> d;
    for (int e = 0; e < 6; ++e) {
      for (int f = 0; f < 6; ++f) d(e, f) = path_integral(g, e, f);
    }
    CHECK(max_entry(d - Eigen::Matrix<double, 6, 6>::Identity()) <= 1e-13);
  }
}

TEST_CASE("curl of an edge shape function matches central differences") {
  const TetGeometry g = TetGeometry::from(kSkewTet);
  const Vec3 x0 = g.centroid();
  const double h = 1e-4;
  for (int e = 0; e < 6; ++e) {
    auto w = [&](const Vec3& x) {
      const auto lam = g.barycentric(x);
      return g.edge_shape(e, lam);
    };
    Eigen::Matrix3d jac;
    for (int c = 0; c < 3; ++c) {
      Vec3 dx = Vec3::Zero();
      dx[c] = h;
      jac.col(c) = (w(x0 + dx) - w(x0 - dx)) / (2 * h);
    }
    const Vec3 curl(jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1));
    CHECK((curl - g.edge_shape_curl(e)).norm() <= 1e-9 * (1.0 + curl.norm()));
    const auto [i, j] = kLocalEdges[e];
    CHECK((g.edge_shape_curl(e) - 2.0 * g.grad[i].cross(g.grad[j])).norm() <= 1e-12);
  }
}

TEST_CASE("edge interpolation of a constant field is exact") {
  const Mesh m = make_single_tet(kSkewTet);
  const DofMap dm(m, m.leaves());
  const Vec3 c(0.3, -1.2, 2.0);
  const Vector x = edge_interpolate(dm, [&](const Vec3&) { return c; });
  for (std::size_t i = 0; i < dm.num_edges(); ++i) {
    const EdgeKey e = dm.edge(static_cast<int>(i));
    CHECK(x[i] == doctest::Approx(c.dot(m.vertex(edge_high(e)) - m.vertex(edge_low(e)))).epsilon(1e-14));
  }
  for (const auto& lam : {std::array<double, 4>{0.1, 0.2, 0.3, 0.4}, std::array<double, 4>{0.7, 0.1, 0.1, 0.1}}) {
    CHECK((evaluate_edge_function(dm, 0, x, lam) - c).norm() <= 1e-13);
  }
}

TEST_CASE("edge moments of a rotational field") {
  const Mesh m = make_single_tet(kSkewTet);
  const DofMap dm(m, m.leaves());
  const Vector x = edge_interpolate(dm, [](const Vec3& p) -> Vec3 { return Vec3(-p[1], p[0], 0.0) / 2.0; });
  for (std::size_t i = 0; i < dm.num_edges(); ++i) {
    const EdgeKey e = dm.edge(static_cast<int>(i));
    const Vec3 a = m.vertex(edge_low(e)), b = m.vertex(edge_high(e));
    // linear field: the midpoint rule is exact; equals (a x b)_z / 2
    const double exact = 0.5 * (a[0] * b[1] - a[1] * b[0]);
    CHECK(x[i] == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("gradient map of a single element") {
  const Mesh m = make_single_tet(kSkewTet);
  const DofMap dm(m, m.leaves());
  const GradientMap g = build_gradient_map(dm);
  REQUIRE(g.op.rows() == 6);
  REQUIRE(g.op.cols() == 4);
  const Vector ones = Vector::Ones(4);
  CHECK((g.op * ones).norm() == doctest::Approx(0.0));
  for (int i = 0; i < 6; ++i) {
    const EdgeKey e = dm.edge(i);
    CHECK(g.op.matrix.coeff(i, dm.vertex_index(edge_high(e))) == 1.0);
    CHECK(g.op.matrix.coeff(i, dm.vertex_index(edge_low(e))) == -1.0);
  }
}

TEST_CASE("commuting diagram for a quadratic potential") {
  const Mesh m = random_refinement(make_lshape(false), 30, 4);
  const DofMap dm(m, m.leaves());
  auto s = [](const Vec3& p) { return p[0] * p[0] + p[1] * p[2]; };
  auto grad_s = [](const Vec3& p) { return Vec3(2 * p[0], p[2], p[1]); };
  const Vector ie = edge_interpolate(dm, grad_s);
  const Vector gn = build_gradient_map(dm).op * nodal_interpolate(dm, s);
  CHECK((ie - gn).norm() <= 1e-12 * ie.norm());
}

TEST_CASE("nodal interpolation of constants and linears") {
  const Mesh m = random_refinement(make_lshape(false), 10, 2);
  const DofMap dm(m, m.leaves());
  const Vector one = nodal_interpolate(dm, [](const Vec3&) { return 1.0; });
  CHECK(one.size() == static_cast<Eigen::Index>(m.num_vertices()));
  CHECK((one - Vector::Ones(one.size())).norm() == 0.0);
  // P1 reproduces linears: at the centroid of every element, the average of
  // the vertex values equals the value.
  auto lin = [](const Vec3& p) { return 1.5 - p[0] + 0.25 * p[1] + 3.0 * p[2]; };
  const Vector c = nodal_interpolate(dm, lin);
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const auto& vi = dm.element_vertices(pos);
    const double avg = 0.25 * (c[vi[0]] + c[vi[1]] + c[vi[2]] + c[vi[3]]);
    CHECK(avg == doctest::Approx(lin(m.geometry(dm.elements()[pos]).centroid())).epsilon(1e-13));
  }
}

TEST_CASE("partition of unity of the barycentric coordinates") {
  const TetGeometry g = TetGeometry::from(kSkewTet);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::array<double, 4> w{u(rng), u(rng), u(rng), u(rng)};
    const double sum = w[0] + w[1] + w[2] + w[3];
    for (double& x : w) x /= sum;
    const auto lam = g.barycentric(g.point(w));
    CHECK(lam[0] + lam[1] + lam[2] + lam[3] == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < 4; ++i) CHECK(lam[i] == doctest::Approx(w[i]).epsilon(1e-12));
  }
}

TEST_CASE("level dof sets") {
  SUBCASE("uniform refinement keeps every dof") {
    Mesh m = make_box(1, 1, 1, Vec3(0, 0, 0), Vec3(1, 1, 1), false);
    m.refine_uniform(2);
    const MeshHierarchy h = virtual_hierarchy(m);
    std::vector<DofMap> maps;
    for (const auto& lv : h.levels) maps.emplace_back(m, lv);
    const LevelDofSets sets = level_dof_sets(h, maps);
    for (int l = 0; l <= h.finest_level(); ++l) {
      CHECK(sets.edges[l].size() == maps[l].num_edges());
      CHECK(sets.vertices[l].size() == maps[l].num_vertices());
    }
  }
  SUBCASE("single-corner refinement keeps the vertices inside the refined patch") {
    Mesh m = make_box(2, 2, 2, Vec3(0, 0, 0), Vec3(1, 1, 1), false);
    std::vector<TetId> corner;
    for (TetId k : m.leaves()) {
      if (m.tet(k).has_vertex(0)) corner.push_back(k);
    }
    m.refine(corner);
    const MeshHierarchy h = virtual_hierarchy(m);
    std::vector<DofMap> maps;
    for (const auto& lv : h.levels) maps.emplace_back(m, lv);
    const LevelDofSets sets = level_dof_sets(h, maps);
    const DofMap& d1 = maps[1];
    std::vector<int> expected;
    for (std::size_t i = 0; i < d1.num_vertices(); ++i) {
      const VertexId v = d1.vertex(static_cast<int>(i));
      bool all_new = true;
      for (TetId k : d1.elements()) {
        if (m.tet(k).has_vertex(v) && m.tet(k).level < 1) all_new = false;
      }
      if (all_new) expected.push_back(static_cast<int>(i));
    }
    CHECK(sets.vertices[1] == expected);
    CHECK(sets.vertices[1].size() < d1.num_vertices());
    CHECK(sets.edges[1].size() < d1.num_edges());
    CHECK_FALSE(sets.vertices[1].empty());
  }
}

TEST_CASE("dual basis of the barycentric coordinates") {
  for (const auto& pts : {std::array<Vec3, 4>{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}, kSkewTet}) {
    const TetGeometry g = TetGeometry::from(pts);
    const Eigen::Matrix4d a = dual_basis(g);
    for (int j = 0; j < 4; ++j) {
      double integral = 0.0;
      for (int k = 0; k < 4; ++k) {
        CHECK(a(j, k) * g.volume == doctest::Approx(j == k ? 16.0 : -4.0).epsilon(1e-12));
        integral += a(j, k) * g.volume / 4.0;
      }
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
      // ||psi_j||^2 = sum_k a_jk int psi_j lambda_k = a_jj
      CHECK(g.volume * a(j, j) == doctest::Approx(oracle::kDualNormScaled).epsilon(1e-12));
    }
  }
  const std::array<Vec3, 4> flat{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)};
  CHECK_THROWS_AS(TetGeometry::from(flat), Error);
}

TEST_CASE("quasi-interpolation") {
  const Mesh m = random_refinement(make_lshape(false), 40, 8);
  REQUIRE(m.max_level() >= 3);
  const DofMap dm(m, m.leaves());
  const auto assignment = default_assignment(dm);

  SUBCASE("constants") {
    const Vector q = quasi_interpolate(dm, assignment, [](const Vec3&) { return 1.0; });
    CHECK((q - Vector::Ones(q.size())).norm() <= 1e-12 * std::sqrt(double(q.size())));
  }
  SUBCASE("projection onto the linear space") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vector uh(static_cast<Eigen::Index>(dm.num_vertices()));
    for (auto& v : uh) v = d(rng);
    CHECK((quasi_interpolate(dm, assignment, uh) - uh).norm() <= 1e-12 * uh.norm());
  }
  SUBCASE("L2 stability on random quadratics") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 8; ++t) {
      std::array<double, 10> c{};
      for (double& x : c) x = d(rng);
      auto u = [&](const Vec3& p) {
        return c[0] + c[1] * p[0] + c[2] * p[1] + c[3] * p[2] + c[4] * p[0] * p[0] + c[5] * p[1] * p[1] +
               c[6] * p[2] * p[2] + c[7] * p[0] * p[1] + c[8] * p[1] * p[2] + c[9] * p[0] * p[2];
      };
      const Vector q = quasi_interpolate(dm, assignment, u);
      double nu = 0.0, nq = 0.0;
      for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
        const TetGeometry g = m.geometry(dm.elements()[pos]);
        const auto& vi = dm.element_vertices(pos);
        for (const auto& qp : quad::tet_degree5()) {
          const double uv = u(g.point(qp.lambda));
          double qv = 0.0;
          for (int i = 0; i < 4; ++i) qv += qp.lambda[i] * q[vi[i]];
          nu += qp.weight * g.volume * uv * uv;
          nq += qp.weight * g.volume * qv * qv;
        }
      }
      worst = std::max(worst, std::sqrt(nq / nu));
    }
    CHECK(worst <= 10.0);
    MESSAGE("measured L2 stability constant " << worst);
  }
  SUBCASE("assignment to a non-incident element is rejected") {
    auto bad = assignment;
    const VertexId v0 = dm.vertex(0);
    for (TetId k : dm.elements()) {
      if (!m.tet(k).has_vertex(v0)) {
        bad[0] = k;
        break;
      }
    }
    CHECK_THROWS_AS(quasi_interpolate(dm, bad, [](const Vec3&) { return 1.0; }), Error);
  }
}
