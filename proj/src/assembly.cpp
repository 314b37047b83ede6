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

#include "hcurlmg/assembly.hpp"

#include <cmath>

#include "hcurlmg/error.hpp"
#include "hcurlmg/quadrature.hpp"

namespace hcurlmg {

ElementMatrices element_matrices(const TetGeometry& geom) {
  ElementMatrices em;
  const auto& g = geom.grad;
  std::array<std::array<double, 4>, 4> gg;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) gg[a][b] = g[a].dot(g[b]);
  auto lam = [&](int a, int b) { return geom.volume * (a == b ? 2.0 : 1.0) / 20.0; };
  std::array<Vec3, 6> curls;
  for (int e = 0; e < 6; ++e) curls[e] = geom.edge_shape_curl(e);
  for (int e = 0; e < 6; ++e) {
    const int i = kLocalEdges[e][0], j = kLocalEdges[e][1];
    for (int f = 0; f < 6; ++f) {
      const int k = kLocalEdges[f][0], l = kLocalEdges[f][1];
      em.mass(e, f) = lam(i, k) * gg[j][l] - lam(i, l) * gg[j][k] - lam(j, k) * gg[i][l] +
                      lam(j, l) * gg[i][k];
      em.curl(e, f) = geom.volume * curls[e].dot(curls[f]);
    }
  }
  return em;
}

Eigen::Matrix4d element_laplacian(const TetGeometry& geom) {
  Eigen::Matrix4d s;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s(a, b) = geom.volume * geom.grad[a].dot(geom.grad[b]);
  return s;
}

namespace {

void load_element(const TetGeometry& geom, const VectorField& f, std::array<double, 6>& out) {
  out.fill(0.0);
  for (const auto& q : quad::tet_degree5()) {
    const Vec3 fx = f(geom.point(q.lambda));
    if (!fx.allFinite()) fail(ErrorKind::Evaluation, "non-finite source sample");
    for (int e = 0; e < 6; ++e) out[e] += q.weight * fx.dot(geom.edge_shape(e, q.lambda));
  }
  for (double& v : out) v *= geom.volume;
}

}  // namespace

AssembledSystem assemble(const DofMap& dm, const VectorField& f, const Vector* dirichlet) {
  if (dirichlet && static_cast<std::size_t>(dirichlet->size()) != dm.num_dirichlet_edges()) {
    fail(ErrorKind::Precondition, "assemble: Dirichlet vector size mismatch");
  }
  const auto n = static_cast<Eigen::Index>(dm.num_edges());
  std::vector<Eigen::Triplet<double>> tc, tm;
  tc.reserve(36 * dm.elements().size());
  tm.reserve(36 * dm.elements().size());
  AssembledSystem sys;
  sys.b = Vector::Zero(n);
  std::array<double, 6> local_load;
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const TetGeometry geom = dm.mesh().geometry(dm.elements()[pos]);
    const ElementMatrices em = element_matrices(geom);
    const auto& idx = dm.element_edges(pos);
    const auto& sgn = dm.element_signs(pos);
    if (f) load_element(geom, f, local_load);
    for (int e = 0; e < 6; ++e) {
      if (idx[e] < 0) continue;
      if (f) sys.b[idx[e]] += sgn[e] * local_load[e];
      for (int g = 0; g < 6; ++g) {
        const double s = sgn[e] * sgn[g];
        if (idx[g] >= 0) {
          tc.emplace_back(idx[e], idx[g], s * em.curl(e, g));
          tm.emplace_back(idx[e], idx[g], s * em.mass(e, g));
        } else if (dirichlet) {
          sys.b[idx[e]] -= s * (em.curl(e, g) + em.mass(e, g)) * (*dirichlet)[-1 - idx[g]];
        }
      }
    }
  }
  sys.curl.matrix.resize(n, n);
  sys.curl.matrix.setFromTriplets(tc.begin(), tc.end());
  sys.mass.matrix.resize(n, n);
  sys.mass.matrix.setFromTriplets(tm.begin(), tm.end());
  sys.a.matrix = sys.curl.matrix + sys.mass.matrix;
  sys.curl.symmetric = sys.mass.symmetric = sys.a.symmetric = true;
  return sys;
}

Vector assemble_load(const DofMap& dm, const VectorField& f) {
  Vector b = Vector::Zero(static_cast<Eigen::Index>(dm.num_edges()));
  std::array<double, 6> local;
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    load_element(dm.mesh().geometry(dm.elements()[pos]), f, local);
    const auto& idx = dm.element_edges(pos);
    const auto& sgn = dm.element_signs(pos);
    for (int e = 0; e < 6; ++e) {
      if (idx[e] >= 0) b[idx[e]] += sgn[e] * local[e];
    }
  }
  return b;
}

SparseOperator assemble_nodal_laplacian(const DofMap& dm, const SparseOperator& a,
                                        const GradientMap& g) {
  const auto ne = static_cast<Eigen::Index>(dm.num_edges());
  const auto nv = static_cast<Eigen::Index>(dm.num_vertices());
  if (a.rows() != ne || a.cols() != ne || g.op.rows() != ne || g.op.cols() != nv) {
    fail(ErrorKind::Precondition, "assemble_nodal_laplacian: dimension mismatch");
  }
  SparseOperator out;
  const SparseMatrix gt = g.op.matrix.transpose();
  out.matrix = gt * (a.matrix * g.op.matrix);
  out.matrix.prune(0.0);
  out.symmetric = a.symmetric;
  return out;
}

}  // namespace hcurlmg
