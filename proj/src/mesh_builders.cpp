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

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "hcurlmg/error.hpp"
#include "hcurlmg/mesh.hpp"

namespace hcurlmg {
namespace {

using Cell = std::array<int, 3>;

// Returns true when the lattice point of `cell` must use a duplicated vertex.
using DuplicateRule = std::function<bool(const Cell& point, const Cell& cell)>;

Mesh build_from_cubes(const std::vector<Cell>& cells, const Vec3& origin, const Vec3& h,
                      bool dirichlet, const DuplicateRule& duplicate) {
  std::map<std::tuple<int, int, int, bool>, VertexId> ids;
  std::vector<Vec3> vertices;
  std::vector<InitialTet> tets;
  auto vertex = [&](const Cell& p, const Cell& cell) {
    const bool dup = duplicate && duplicate(p, cell);
    auto [it, inserted] =
        ids.emplace(std::tuple{p[0], p[1], p[2], dup}, static_cast<VertexId>(vertices.size()));
    if (inserted) {
      vertices.emplace_back(origin[0] + h[0] * p[0], origin[1] + h[1] * p[1],
                            origin[2] + h[2] * p[2]);
    }
    return it->second;
  };
  static constexpr std::array<std::array<int, 3>, 6> kAxisOrders{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const Cell& c : cells) {
    for (const auto& axes : kAxisOrders) {
      // Monotone lattice path P0 -> P1 -> P2 -> P3 through the cube; the
      // diagonal P0 P3 is the refinement edge.
      std::array<Cell, 4> path;
      path[0] = c;
      for (int s = 0; s < 3; ++s) {
        path[s + 1] = path[s];
        path[s + 1][axes[s]] += 1;
      }
      InitialTet t;
      t.verts = {vertex(path[0], c), vertex(path[3], c), vertex(path[2], c), vertex(path[1], c)};
      t.type = 0;
      tets.push_back(t);
    }
  }
  Mesh probe(vertices, tets, {});
  std::vector<BoundaryFace> dir;
  if (dirichlet) {
    for (TetId k = 0; k < static_cast<TetId>(probe.num_tets()); ++k) {
      for (int f = 0; f < 4; ++f) {
        if (probe.tet(k).faces[f] != FaceKind::Interior) dir.push_back({k, f});
      }
    }
  }
  return Mesh(std::move(vertices), tets, dir);
}

}  // namespace

Mesh make_box(int nx, int ny, int nz, const Vec3& lo, const Vec3& hi, bool dirichlet) {
  if (nx < 1 || ny < 1 || nz < 1) fail(ErrorKind::Precondition, "make_box: empty box");
  std::vector<Cell> cells;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) cells.push_back({i, j, k});
  const Vec3 h((hi[0] - lo[0]) / nx, (hi[1] - lo[1]) / ny, (hi[2] - lo[2]) / nz);
  return build_from_cubes(cells, lo, h, dirichlet, nullptr);
}

Mesh make_lshape(bool dirichlet) {
  std::vector<Cell> cells;
  for (int k = -1; k <= 0; ++k)
    for (int j = -1; j <= 0; ++j)
      for (int i = -1; i <= 0; ++i) {
        if (i == 0 && j == -1) continue;
        cells.push_back({i, j, k});
      }
  return build_from_cubes(cells, Vec3::Zero(), Vec3::Ones(), dirichlet, nullptr);
}

Mesh make_crack(bool dirichlet) {
  std::vector<Cell> cells;
  for (int k = -1; k <= 0; ++k)
    for (int j = -1; j <= 0; ++j)
      for (int i = -1; i <= 0; ++i) cells.push_back({i, j, k});
  auto below_slit = [](const Cell& p, const Cell& cell) {
    return cell[1] == -1 && p[1] == 0 && p[0] > 0;
  };
  return build_from_cubes(cells, Vec3::Zero(), Vec3::Ones(), dirichlet, below_slit);
}

Mesh make_single_tet(const std::array<Vec3, 4>& pts, int type, bool dirichlet) {
  std::vector<Vec3> vertices(pts.begin(), pts.end());
  std::vector<BoundaryFace> dir;
  if (dirichlet) {
    for (int f = 0; f < 4; ++f) dir.push_back({0, f});
  }
  return Mesh(std::move(vertices), {InitialTet{{0, 1, 2, 3}, type}}, dir);
}

}  // namespace hcurlmg
