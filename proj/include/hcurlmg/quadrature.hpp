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
#include <span>

namespace hcurlmg::quad {

// Weights of the tetrahedron and triangle rules sum to one; scale by the
// measure of the cell.
struct TetPoint {
  std::array<double, 4> lambda;
  double weight;
};
struct TriPoint {
  std::array<double, 3> lambda;
  double weight;
};
struct SegPoint {
  double t;  // in [0, 1]
  double weight;
};

// 14-point symmetric rule, exact for polynomials of degree 5.
std::span<const TetPoint> tet_degree5();

// 6-point symmetric rule, exact for polynomials of degree 4.
std::span<const TriPoint> triangle_degree4();

// 5-point Gauss-Legendre on [0, 1], exact for degree 9.
std::span<const SegPoint> gauss_legendre5();

}  // namespace hcurlmg::quad
