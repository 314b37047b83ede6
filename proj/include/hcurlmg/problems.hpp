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

#include <string>

#include "hcurlmg/geometry.hpp"
#include "hcurlmg/mesh.hpp"

namespace hcurlmg {

// Model problem curl curl u + u = f with exact solution u = grad s,
// s = r^{1/2} sin(phi / 2) in cylindrical coordinates around the z axis, and
// Dirichlet data taken from u on the whole boundary.
struct ProblemPreset {
  std::string name;
  Mesh (*build)();
  // s with the branch of phi selected by a point inside the element.
  SidedScalarField potential;
  VectorField u;
  VectorField curl_u;
  VectorField f;
  ScalarField div_f;
  // ||u||_{H(curl)} in closed form.
  double norm_hcurl = 0.0;
};

// (-1,1)^3 minus (0,1) x (-1,0) x (-1,1); phi in [0, 3 pi / 2].
ProblemPreset lshape_problem();
// (-1,1)^3 slit along {y = 0, x >= 0}; phi in (0, 2 pi).
ProblemPreset crack_problem();
// "lshape" or "crack"; throws ErrorKind::Configuration otherwise.
ProblemPreset problem_by_name(const std::string& name);

}  // namespace hcurlmg
