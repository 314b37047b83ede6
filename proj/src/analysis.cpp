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

#include "hcurlmg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "hcurlmg/assembly.hpp"
#include "hcurlmg/error.hpp"
#include "hcurlmg/estimator.hpp"

namespace hcurlmg {

namespace {

// First-fit coloring of items given, per element, the list of item indices
// (-1 = not colored) it touches.
std::vector<int> first_fit(std::size_t n, const std::vector<std::vector<int>>& incident,
                           const std::vector<std::array<int, 6>>& element_items, int& colors) {
  std::vector<int> color(n, -1);
  std::vector<int> stamp;
  colors = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int pos : incident[i]) {
      for (int j : element_items[pos]) {
        if (j < 0 || color[j] < 0) continue;
        if (static_cast<std::size_t>(color[j]) >= stamp.size()) stamp.resize(color[j] + 1, -1);
        stamp[color[j]] = static_cast<int>(i);
      }
    }
    int c = 0;
    while (c < static_cast<int>(stamp.size()) && stamp[c] == static_cast<int>(i)) ++c;
    color[i] = c;
    colors = std::max(colors, c + 1);
  }
  return color;
}

}  // namespace

LevelColoring greedy_coloring(const Mesh& mesh, std::span<const TetId> elements,
                              std::span<const VertexId> vertices, std::span<const EdgeKey> edges) {
  std::unordered_map<VertexId, int> vidx;
  std::unordered_map<EdgeKey, int> eidx;
  for (std::size_t i = 0; i < vertices.size(); ++i) vidx.emplace(vertices[i], static_cast<int>(i));
  for (std::size_t i = 0; i < edges.size(); ++i) eidx.emplace(edges[i], static_cast<int>(i));
  std::vector<std::array<int, 6>> vitems(elements.size()), eitems(elements.size());
  std::vector<std::vector<int>> vinc(vertices.size()), einc(edges.size());
  for (std::size_t pos = 0; pos < elements.size(); ++pos) {
    const Tet& t = mesh.tet(elements[pos]);
    vitems[pos].fill(-1);
    for (int a = 0; a < 4; ++a) {
      const auto it = vidx.find(t.verts[a]);
      if (it == vidx.end()) continue;
      vitems[pos][a] = it->second;
      vinc[it->second].push_back(static_cast<int>(pos));
    }
    for (int e = 0; e < 6; ++e) {
      const auto it = eidx.find(t.local_edge(e));
      eitems[pos][e] = it == eidx.end() ? -1 : it->second;
      if (it != eidx.end()) einc[it->second].push_back(static_cast<int>(pos));
    }
  }
  LevelColoring out;
  out.vertex_color = first_fit(vertices.size(), vinc, vitems, out.num_vertex_colors);
  out.edge_color = first_fit(edges.size(), einc, eitems, out.num_edge_colors);
  return out;
}

bool coloring_is_valid(const Mesh& mesh, std::span<const TetId> elements, std::span<const VertexId> vertices,
                       std::span<const EdgeKey> edges, const LevelColoring& coloring) {
  if (coloring.vertex_color.size() != vertices.size() || coloring.edge_color.size() != edges.size()) return false;
  std::unordered_map<VertexId, int> vcol;
  std::unordered_map<EdgeKey, int> ecol;
  for (std::size_t i = 0; i < vertices.size(); ++i) vcol.emplace(vertices[i], coloring.vertex_color[i]);
  for (std::size_t i = 0; i < edges.size(); ++i) ecol.emplace(edges[i], coloring.edge_color[i]);
  for (TetId k : elements) {
    const Tet& t = mesh.tet(k);
    std::vector<int> seen;
    for (VertexId v : t.verts) {
      if (const auto it = vcol.find(v); it != vcol.end()) seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    seen.clear();
    for (int e = 0; e < 6; ++e) {
      if (const auto it = ecol.find(t.local_edge(e)); it != ecol.end()) seen.push_back(it->second);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

ColoringPartition color_levels(const Mesh& mesh, const MgHierarchy& mg) {
  ColoringPartition p;
  for (int l = 0; l <= mg.finest_level(); ++l) {
    p.levels.push_back(greedy_coloring(mesh, mg.level_elements(l), mg.level_vertices(l), mg.level_edges(l)));
  }
  return p;
}

double energy_cosine(const SparseOperator& a, const Vector& u, const Vector& v) {
  const double uu = u.dot(a.matrix * u);
  const double vv = v.dot(a.matrix * v);
  if (!(uu > 0.0) || !(vv > 0.0)) return 0.0;
  return std::min(1.0, std::abs(u.dot(a.matrix * v)) / std::sqrt(uu * vv));
}

ScsResult measure_scs(const MgHierarchy& mg, int samples, std::uint64_t seed) {
  const int top = mg.finest_level();
  require(top >= 2, ErrorKind::Precondition, "measure_scs needs at least three levels");
  require(samples > 0, ErrorKind::Configuration, "measure_scs needs samples > 0");
  const Mesh& mesh = mg.fine_dofs().mesh();
  const ColoringPartition colors = color_levels(mesh, mg);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  // One random function from a single color class of level l.
  auto draw = [&](int l) {
    const auto& lc = colors.levels[l];
    const bool nodal = !mg.level_vertices(l).empty() && (rng() & 1u);
    const auto& col = nodal ? lc.vertex_color : lc.edge_color;
    const int ncol = nodal ? lc.num_vertex_colors : lc.num_edge_colors;
    const int c = static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(ncol, 1)));
    Vector x = Vector::Zero(static_cast<Eigen::Index>(col.size()));
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == c) x[static_cast<Eigen::Index>(i)] = coeff(rng);
    }
    return nodal ? mg.lift_gradients(l, x) : mg.lift_edges(l, x);
  };

  ScsResult res;
  res.seed = seed;
  res.by_distance.assign(static_cast<std::size_t>(top) + 1, 0.0);
  for (int l = 0; l <= top; ++l) {
    if (mg.level_edges(l).empty()) continue;
    for (int m = l + 1; m <= top; ++m) {
      if (mg.level_edges(m).empty()) continue;
      ScsSample s{l, m, 0.0};
      for (int k = 0; k < samples; ++k) {
        s.cosine = std::max(s.cosine, energy_cosine(mg.fine_operator(), draw(l), draw(m)));
      }
      res.samples.push_back(s);
      res.by_distance[m - l] = std::max(res.by_distance[m - l], s.cosine);
    }
  }

  // log(cos_d) = log C + d log q over distances with a positive maximum.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int d = 1; d <= top; ++d) {
    if (!(res.by_distance[d] > 0.0)) continue;
    const double y = std::log(res.by_distance[d]);
    sx += d;
    sy += y;
    sxx += double(d) * d;
    sxy += d * y;
    ++n;
  }
  if (n >= 2) {
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    res.q_hat = std::exp(slope);
    res.c_hat = std::exp((sy - slope * sx) / n);
  }

  // Single basis functions of two levels whose supports are separated.
  struct Box {
    Vec3 lo, hi;
  };
  auto support_boxes = [&](int l) {
    std::unordered_map<EdgeKey, Box> boxes;
    const auto& keys = mg.level_edges(l);
    std::unordered_map<EdgeKey, int> wanted;
    for (std::size_t i = 0; i < keys.size(); ++i) wanted.emplace(keys[i], static_cast<int>(i));
    for (TetId k : mg.level_elements(l)) {
      const auto x = mesh.coordinates(k);
      Box b{x[0], x[0]};
      for (const auto& p : x) {
        b.lo = b.lo.cwiseMin(p);
        b.hi = b.hi.cwiseMax(p);
      }
      for (int e = 0; e < 6; ++e) {
        const EdgeKey key = mesh.tet(k).local_edge(e);
        if (!wanted.count(key)) continue;
        auto [it, fresh] = boxes.emplace(key, b);
        if (!fresh) {
          it->second.lo = it->second.lo.cwiseMin(b.lo);
          it->second.hi = it->second.hi.cwiseMax(b.hi);
        }
      }
    }
    return boxes;
  };
  const int l = 0, m = top;
  const auto bl = support_boxes(l), bm = support_boxes(m);
  const auto& kl = mg.level_edges(l);
  const auto& km = mg.level_edges(m);
  int found = 0;
  for (int tries = 0; tries < 50 * samples && found < samples && !kl.empty() && !km.empty(); ++tries) {
    const auto i = static_cast<Eigen::Index>(rng() % kl.size());
    const auto j = static_cast<Eigen::Index>(rng() % km.size());
    const Box& a = bl.at(kl[i]);
    const Box& b = bm.at(km[j]);
    const bool apart = (a.lo.array() > b.hi.array() + 1e-9).any() || (b.lo.array() > a.hi.array() + 1e-9).any();
    if (!apart) continue;
    Vector u = Vector::Zero(static_cast<Eigen::Index>(kl.size()));
    Vector v = Vector::Zero(static_cast<Eigen::Index>(km.size()));
    u[i] = 1.0;
    v[j] = 1.0;
    res.max_disjoint = std::max(res.max_disjoint, energy_cosine(mg.fine_operator(), mg.lift_edges(l, u),
                                                                mg.lift_edges(m, v)));
    ++found;
  }
  return res;
}

std::vector<UniformityRow> uniformity_study(const ProblemPreset& problem, int stages, ExperimentOptions opts) {
  require(stages > 0, ErrorKind::Configuration, "uniformity study needs stages > 0");
  opts.max_stages = stages;
  if (opts.contraction_iterations <= 0) opts.contraction_iterations = 12;
  std::vector<UniformityRow> out;
  for (const auto& r : run_adaptive(problem, opts)) out.push_back({r.n_it, r.levels, r.n_el, r.contraction});
  return out;
}

std::vector<AblationRow> ablation_study(const ProblemPreset& problem, int stages, ExperimentOptions opts) {
  require(stages > 0, ErrorKind::Configuration, "ablation study needs stages > 0");
  opts.max_stages = stages;
  opts.nodal_smoothing = true;
  if (opts.contraction_iterations <= 0) opts.contraction_iterations = 12;
  // The marking only depends on the discrete solution, so one run provides
  // the meshes; the edge-only smoother is evaluated on each of them.
  std::vector<AblationRow> out;
  Mesh mesh = problem.build();
  for (int i = 0; i < opts.initial_refinements; ++i) mesh.refine_uniform(1);
  MgOptions hybrid{opts.pre_smoothing, opts.post_smoothing, true};
  MgOptions edges_only{opts.pre_smoothing, opts.post_smoothing, false};
  SolveOptions so;
  so.reduction = opts.reduction;
  so.max_iterations = opts.max_iterations;
  for (int stage = 0; stage < stages; ++stage) {
    const DofMap dm(mesh, mesh.leaves());
    const Vector lift = potential_difference_dirichlet(dm, problem.potential);
    const AssembledSystem sys = assemble(dm, problem.f, &lift);
    const MgHierarchy mg(dm, sys.a, hybrid);
    const MgHierarchy mg_edges(dm, sys.a, edges_only);
    AblationRow row;
    row.stage = stage;
    row.levels = mg.finest_level();
    row.n_el = dm.elements().size();
    row.hybrid = estimate_contraction(mg, opts.contraction_iterations, opts.seed);
    row.edges_only = estimate_contraction(mg_edges, opts.contraction_iterations, opts.seed);
    out.push_back(row);
    Vector x;
    solve(mg, sys.b, x, so);
    const auto marked = mark(estimate(dm, x, &lift, problem.f, problem.div_f), opts.theta);
    if (marked.empty()) break;
    mesh.refine(marked);
  }
  return out;
}

}  // namespace hcurlmg
