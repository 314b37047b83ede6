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

#include "hcurlmg/quadrature.hpp"

#include <vector>

namespace hcurlmg::quad {
namespace {

std::vector<TetPoint> make_tet14() {
  // Weights below are relative to the reference volume 1/6.
  constexpr double a1 = 0.0927352503108912, w1 = 0.01224884051939366;
  constexpr double a2 = 0.3108859192633006, w2 = 0.01878132095300264;
  constexpr double b = 0.0455037041256496, w3 = 0.007091003462846911;
  std::vector<TetPoint> pts;
  for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    for (int k = 0; k < 4; ++k) {
      TetPoint p{{a, a, a, a}, 6.0 * w};
      p.lambda[k] = 1.0 - 3.0 * a;
      pts.push_back(p);
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      TetPoint p{{0.5 - b, 0.5 - b, 0.5 - b, 0.5 - b}, 6.0 * w3};
      p.lambda[i] = b;
      p.lambda[j] = b;
      pts.push_back(p);
    }
  }
  return pts;
}

std::vector<TriPoint> make_tri6() {
  constexpr double a = 0.445948490915965, wa = 0.223381589678011;
  constexpr double b = 0.091576213509771, wb = 0.109951743655322;
  std::vector<TriPoint> pts;
  for (auto [c, w] : {std::pair{a, wa}, std::pair{b, wb}}) {
    for (int k = 0; k < 3; ++k) {
      TriPoint p{{c, c, c}, w};
      p.lambda[k] = 1.0 - 2.0 * c;
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

std::span<const TetPoint> tet_degree5() {
  static const std::vector<TetPoint> rule = make_tet14();
  return rule;
}

std::span<const TriPoint> triangle_degree4() {
  static const std::vector<TriPoint> rule = make_tri6();
  return rule;
}

std::span<const SegPoint> gauss_legendre5() {
  static const std::array<SegPoint, 5> rule = [] {
    constexpr double x1 = 0.5384693101056831, x2 = 0.9061798459386640;
    constexpr double w0 = 0.5688888888888889, w1 = 0.4786286704993665,
                     w2 = 0.2369268850561891;
    return std::array<SegPoint, 5>{{{0.5 * (1.0 - x2), 0.5 * w2},
                                    {0.5 * (1.0 - x1), 0.5 * w1},
                                    {0.5, 0.5 * w0},
                                    {0.5 * (1.0 + x1), 0.5 * w1},
                                    {0.5 * (1.0 + x2), 0.5 * w2}}};
  }();
  return rule;
}

}  // namespace hcurlmg::quad
