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

#include <vector>

#include "hcurlmg/geometry.hpp"
#include "hcurlmg/space.hpp"

namespace hcurlmg {

struct EstimatorReport {
  std::vector<TetId> elements;  // dm.elements() order
  std::vector<double> eta;      // eta_T per element
  double eta_h = 0.0;
  double eta_max = 0.0;
};

// Residual estimator
//   eta_T^2 = h_T^2 (||f - u_h||^2 + ||div f||^2)
//           + h_T / 2 * sum over interior faces F of T of
//               ||[u_h]_F||^2 + ||[curl u_h x n]_F||^2
// with h_T the diameter. u_h is given by its active coefficients plus the
// optional Dirichlet values. div u_h vanishes on every element.
EstimatorReport estimate(const DofMap& dm, const Vector& u_h, const Vector* dirichlet,
                         const VectorField& f, const ScalarField& div_f);

// Maximum strategy: { T : eta_T >= theta * eta_max }; empty when eta_max = 0.
std::vector<TetId> mark(const EstimatorReport& report, double theta);

}  // namespace hcurlmg
