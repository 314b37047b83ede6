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

#include "hcurlmg/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hcurlmg/error.hpp"

namespace hcurlmg {

TetGeometry TetGeometry::from(const std::array<Vec3, 4>& pts) {
  TetGeometry g;
  g.x = pts;
  const Vec3 e1 = pts[1] - pts[0];
  const Vec3 e2 = pts[2] - pts[0];
  const Vec3 e3 = pts[3] - pts[0];
  const double det = e1.dot(e2.cross(e3));
  const double scale = std::max({e1.norm(), e2.norm(), e3.norm()});
  if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale * scale) {
    fail(ErrorKind::InvalidElement, "degenerate tetrahedron");
  }
  g.signed_volume = det / 6.0;
  g.volume = std::abs(g.signed_volume);
  // Rows of the inverse Jacobian are the gradients of lambda_1..3.
  g.grad[1] = e2.cross(e3) / det;
  g.grad[2] = e3.cross(e1) / det;
  g.grad[3] = e1.cross(e2) / det;
  g.grad[0] = -(g.grad[1] + g.grad[2] + g.grad[3]);
  return g;
}

std::array<double, 4> TetGeometry::barycentric(const Vec3& p) const {
  std::array<double, 4> l;
  const Vec3 d = p - x[0];
  l[1] = grad[1].dot(d);
  l[2] = grad[2].dot(d);
  l[3] = grad[3].dot(d);
  l[0] = 1.0 - l[1] - l[2] - l[3];
  return l;
}

double TetGeometry::diameter() const {
  double d = 0.0;
  for (const auto& e : kLocalEdges) d = std::max(d, (x[e[1]] - x[e[0]]).norm());
  return d;
}

double TetGeometry::surface_area() const {
  double s = 0.0;
  for (const auto& f : kLocalFaces) s += triangle(x[f[0]], x[f[1]], x[f[2]]).area;
  return s;
}

Vec3 TetGeometry::edge_shape(int e, const std::array<double, 4>& lambda) const {
  const int i = kLocalEdges[e][0];
  const int j = kLocalEdges[e][1];
  return lambda[i] * grad[j] - lambda[j] * grad[i];
}

Vec3 TetGeometry::edge_shape_curl(int e) const {
  const int i = kLocalEdges[e][0];
  const int j = kLocalEdges[e][1];
  return 2.0 * grad[i].cross(grad[j]);
}

Triangle triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a);
  const double len = n.norm();
  return {len > 0.0 ? Vec3(n / len) : Vec3::Zero(), 0.5 * len};
}

}  // namespace hcurlmg
