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

#include "hcurlmg/problems.hpp"

#include <cmath>
#include <numbers>

#include "hcurlmg/error.hpp"

namespace hcurlmg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle(const Vec3& x) {
  double phi = std::atan2(x[1], x[0]);
  if (phi < 0.0) phi += kTwoPi;
  return phi;
}

// On the slit the branch follows the side of the element.
double crack_angle(const Vec3& x, const Vec3& inside) {
  if (x[1] == 0.0 && x[0] > 0.0) return inside[1] > 0.0 ? 0.0 : kTwoPi;
  return angle(x);
}

double potential(double r, double phi) { return std::sqrt(r) * std::sin(0.5 * phi); }

Vec3 gradient(const Vec3& x) {
  const double r = std::hypot(x[0], x[1]);
  const double phi = angle(x);
  const double c = 0.5 / std::sqrt(r);
  return Vec3(-c * std::sin(0.5 * phi), c * std::cos(0.5 * phi), 0.0);
}

ProblemPreset common(std::string name, Mesh (*build)(), double quadrants) {
  ProblemPreset p;
  p.name = std::move(name);
  p.build = build;
  p.u = gradient;
  p.f = gradient;
  p.curl_u = [](const Vec3&) { return Vec3::Zero(); };
  p.div_f = [](const Vec3&) { return 0.0; };
  // |u|^2 = 1 / (4 r); each unit quadrant of height 2 contributes asinh(1).
  p.norm_hcurl = std::sqrt(quadrants * std::asinh(1.0));
  return p;
}

}  // namespace

ProblemPreset lshape_problem() {
  ProblemPreset p = common("lshape", [] { return make_lshape(true); }, 3.0);
  p.potential = [](const Vec3& x, const Vec3&) { return potential(std::hypot(x[0], x[1]), angle(x)); };
  return p;
}

ProblemPreset crack_problem() {
  ProblemPreset p = common("crack", [] { return make_crack(true); }, 4.0);
  p.potential = [](const Vec3& x, const Vec3& inside) {
    return potential(std::hypot(x[0], x[1]), crack_angle(x, inside));
  };
  return p;
}

ProblemPreset problem_by_name(const std::string& name) {
  if (name == "lshape") return lshape_problem();
  if (name == "crack") return crack_problem();
  fail(ErrorKind::Configuration, "unknown problem '" + name + "'");
}

}  // namespace hcurlmg
