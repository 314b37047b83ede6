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

#include "hcurlmg/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "hcurlmg/error.hpp"
#include "hcurlmg/quadrature.hpp"
#include "mesh_internal.hpp"

namespace hcurlmg {

EstimatorReport estimate(const DofMap& dm, const Vector& u_h, const Vector* dirichlet,
                         const VectorField& f, const ScalarField& div_f) {
  if (!f || !div_f) fail(ErrorKind::Configuration, "estimator needs f and div f");
  require(u_h.size() == static_cast<Eigen::Index>(dm.num_edges()), ErrorKind::Precondition,
          "estimate: coefficient vector size mismatch");
  const Mesh& mesh = dm.mesh();
  const auto elems = dm.elements();
  const std::size_t n = elems.size();
  std::vector<TetGeometry> geoms;
  geoms.reserve(n);
  std::vector<double> volume_term(n), face_term(n, 0.0);
  for (std::size_t pos = 0; pos < n; ++pos) {
    geoms.push_back(mesh.geometry(elems[pos]));
    const TetGeometry& g = geoms.back();
    double acc = 0.0;
    for (const auto& q : quad::tet_degree5()) {
      const Vec3 x = g.point(q.lambda);
      const Vec3 r = f(x) - evaluate_edge_function(dm, pos, u_h, q.lambda, dirichlet);
      const double d = div_f(x);
      acc += q.weight * (r.squaredNorm() + d * d);
    }
    volume_term[pos] = acc * g.volume;
  }

  std::vector<int> pos_of(mesh.num_tets(), -1);
  for (std::size_t pos = 0; pos < n; ++pos) pos_of[elems[pos]] = static_cast<int>(pos);
  const auto faces = collect_faces(mesh, elems);
  for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
    if (faces[i].key != faces[i + 1].key) continue;
    const auto p1 = static_cast<std::size_t>(pos_of[faces[i].tet]);
    const auto p2 = static_cast<std::size_t>(pos_of[faces[i + 1].tet]);
    const auto& k = faces[i].key;
    const Vec3 a = mesh.vertex(k[0]), b = mesh.vertex(k[1]), c = mesh.vertex(k[2]);
    const Triangle tri = triangle(a, b, c);
    const Vec3 jc = (evaluate_edge_curl(dm, p1, u_h, dirichlet) - evaluate_edge_curl(dm, p2, u_h, dirichlet))
                        .cross(tri.normal);
    double ju = 0.0;
    for (const auto& q : quad::triangle_degree4()) {
      const Vec3 x = q.lambda[0] * a + q.lambda[1] * b + q.lambda[2] * c;
      const Vec3 jump = evaluate_edge_function(dm, p1, u_h, geoms[p1].barycentric(x), dirichlet) -
                        evaluate_edge_function(dm, p2, u_h, geoms[p2].barycentric(x), dirichlet);
      ju += q.weight * jump.squaredNorm();
    }
    const double term = (ju + jc.squaredNorm()) * tri.area;
    face_term[p1] += term;
    face_term[p2] += term;
    ++i;
  }

  EstimatorReport rep;
  rep.elements.assign(elems.begin(), elems.end());
  rep.eta.resize(n);
  double sum = 0.0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const double h = geoms[pos].diameter();
    const double e2 = h * h * volume_term[pos] + 0.5 * h * face_term[pos];
    rep.eta[pos] = std::sqrt(e2);
    sum += e2;
    rep.eta_max = std::max(rep.eta_max, rep.eta[pos]);
  }
  rep.eta_h = std::sqrt(sum);
  return rep;
}

std::vector<TetId> mark(const EstimatorReport& report, double theta) {
  require(theta > 0.0 && theta <= 1.0, ErrorKind::Configuration, "theta must lie in (0, 1]");
  require(!report.eta.empty(), ErrorKind::Precondition, "mark: empty estimator report");
  std::vector<TetId> out;
  if (!(report.eta_max > 0.0)) return out;
  const double cut = theta * report.eta_max;
  for (std::size_t i = 0; i < report.eta.size(); ++i) {
    if (report.eta[i] >= cut) out.push_back(report.elements[i]);
  }
  return out;
}

}  // namespace hcurlmg
