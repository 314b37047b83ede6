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

#include "hcurlmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hcurlmg {

double max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) v = std::max(v, std::abs(it.value()));
  }
  return v;
}

double max_asymmetry(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  return max_abs(m - t);
}

void write_matrix_market(const SparseOperator& op, std::ostream& out) {
  const SparseMatrix& m = op.matrix;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  char buf[96];
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, static_cast<int>(it.col()) + 1,
                    it.value());
      out << buf;
    }
  }
}

}  // namespace hcurlmg
