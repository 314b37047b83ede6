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

#include <iosfwd>

#include <Eigen/Sparse>

namespace hcurlmg {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;
using Vector = Eigen::VectorXd;

// Compressed-row operator. `symmetric` records that the operator was
// assembled from a symmetric bilinear form.
struct SparseOperator {
  SparseMatrix matrix;
  bool symmetric = false;

  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
  Vector operator*(const Vector& x) const { return matrix * x; }
};

double max_abs(const SparseMatrix& m);
// max |a_ij - a_ji|
double max_asymmetry(const SparseMatrix& m);

// Matrix Market coordinate format ("general", 1-based indices).
void write_matrix_market(const SparseOperator& op, std::ostream& out);

}  // namespace hcurlmg
