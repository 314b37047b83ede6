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
#include <functional>

#include <Eigen/Dense>

namespace hcurlmg {

using Vec3 = Eigen::Vector3d;

using ScalarField = std::function<double(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

// Vector field evaluated at `x` with `inside` a point in the open element
// the sample belongs to. Slit domains use it to select the branch of a
// field that is discontinuous across the slit.
using SidedVectorField = std::function<Vec3(const Vec3& x, const Vec3& inside)>;
using SidedScalarField = std::function<double(const Vec3& x, const Vec3& inside)>;

// Local edge i of a tetrahedron joins local vertices kLocalEdges[i][0] ->
// kLocalEdges[i][1]. Edge 0 is the refinement edge.
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Local face i is opposite local vertex i.
inline constexpr std::array<std::array<int, 3>, 4> kLocalFaces{
    {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}}};

// Affine data of one tetrahedron: vertex coordinates, gradients of the
// barycentric coordinates and |K|.
struct TetGeometry {
  std::array<Vec3, 4> x;
  std::array<Vec3, 4> grad;
  double signed_volume = 0.0;
  double volume = 0.0;

  // Throws ErrorKind::InvalidElement for a (numerically) degenerate element.
  static TetGeometry from(const std::array<Vec3, 4>& pts);

  Vec3 point(const std::array<double, 4>& lambda) const {
    return lambda[0] * x[0] + lambda[1] * x[1] + lambda[2] * x[2] + lambda[3] * x[3];
  }
  std::array<double, 4> barycentric(const Vec3& p) const;
  Vec3 centroid() const { return 0.25 * (x[0] + x[1] + x[2] + x[3]); }

  double diameter() const;
  double surface_area() const;
  double inradius() const { return 3.0 * volume / surface_area(); }

  // Whitney edge function lambda_i grad(lambda_j) - lambda_j grad(lambda_i) for
  // local edge e, oriented from its first to its second local vertex.
  Vec3 edge_shape(int e, const std::array<double, 4>& lambda) const;
  // 2 grad(lambda_i) x grad(lambda_j); constant on the element.
  Vec3 edge_shape_curl(int e) const;
  Vec3 edge_vector(int e) const { return x[kLocalEdges[e][1]] - x[kLocalEdges[e][0]]; }
};

// Unit normal and area of the triangle (a, b, c); normal follows the
// right-hand rule.
struct Triangle {
  Vec3 normal;
  double area;
};
Triangle triangle(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace hcurlmg
