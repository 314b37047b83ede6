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

#include "hcurlmg/geometry.hpp"
#include "hcurlmg/space.hpp"
#include "hcurlmg/sparse.hpp"

namespace hcurlmg {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

// Element matrices of (curl u, curl v) and (u, v) for the six Whitney
// functions in local orientation. Both are exact (closed form).
struct ElementMatrices {
  Matrix6d curl;
  Matrix6d mass;
};
ElementMatrices element_matrices(const TetGeometry& geom);

// P1 stiffness  int grad(lambda_i) . grad(lambda_j)  on one element.
Eigen::Matrix4d element_laplacian(const TetGeometry& geom);

// Galerkin system of a(u, v) = (curl u, curl v) + (u, v) on the active
// edges. With `dirichlet` (values on dm's Dirichlet edges) the lift is moved
// to the right-hand side.
struct AssembledSystem {
  SparseOperator curl;
  SparseOperator mass;
  SparseOperator a;
  Vector b;
};
AssembledSystem assemble(const DofMap& dm, const VectorField& f, const Vector* dirichlet = nullptr);

// Load vector  int f . b_E dx  (14-point rule, degree 5).
Vector assemble_load(const DofMap& dm, const VectorField& f);

// G^T A G: the operator of a(.,.) restricted to gradients of nodal
// functions. The curl-curl part drops out, so this equals the P1 Laplacian.
SparseOperator assemble_nodal_laplacian(const DofMap& dm, const SparseOperator& a,
                                        const GradientMap& g);

}  // namespace hcurlmg
