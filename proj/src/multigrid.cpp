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

#include "hcurlmg/multigrid.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <ostream>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

#include "hcurlmg/assembly.hpp"
#include "hcurlmg/error.hpp"
#include "hcurlmg/hierarchy.hpp"

namespace hcurlmg {

namespace {

constexpr double kDropTolerance = 1e-12;

double local_sign(const Tet& t, int e) {
  return t.verts[kLocalEdges[e][0]] < t.verts[kLocalEdges[e][1]] ? 1.0 : -1.0;
}

// Moments of the six local Whitney functions of `geom` (global orientation
// via `t`) along the straight edge a -> b. The functions are linear, so the
// midpoint rule is exact.
std::array<double, 6> edge_moments(const TetGeometry& geom, const Tet& t, const Vec3& a,
                                   const Vec3& b) {
  const auto lam = geom.barycentric(0.5 * (a + b));
  std::array<double, 6> w;
  for (int e = 0; e < 6; ++e) w[e] = local_sign(t, e) * geom.edge_shape(e, lam).dot(b - a);
  return w;
}

using RowEntries = std::vector<std::vector<std::pair<int, double>>>;

template <class Csr>
void compress(RowEntries& rows, Csr& out, bool drop_small) {
  out.ptr.assign(1, 0);
  out.col.clear();
  out.val.clear();
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < row.size();) {
      const int c = row[k].first;
      double v = 0.0;
      for (; k < row.size() && row[k].first == c; ++k) v += row[k].second;
      if (drop_small && std::abs(v) <= kDropTolerance) continue;
      out.col.push_back(c);
      out.val.push_back(v);
    }
    out.ptr.push_back(static_cast<int>(out.col.size()));
  }
}

}  // namespace

Prolongation build_prolongation(const DofMap& coarse, const DofMap& fine) {
  const Mesh& mesh = fine.mesh();
  if (&coarse.mesh() != &mesh) fail(ErrorKind::Hierarchy, "prolongation: meshes differ");
  std::vector<int> coarse_pos(mesh.num_tets(), -1);
  for (std::size_t i = 0; i < coarse.elements().size(); ++i) {
    coarse_pos[coarse.elements()[i]] = static_cast<int>(i);
  }
  std::vector<Eigen::Triplet<double>> te, tv;
  std::vector<char> edge_done(fine.num_edges(), 0), vert_done(fine.num_vertices(), 0);
  for (std::size_t pos = 0; pos < fine.elements().size(); ++pos) {
    TetId k = fine.elements()[pos];
    while (k >= 0 && coarse_pos[k] < 0) k = mesh.tet(k).parent;
    if (k < 0) fail(ErrorKind::Hierarchy, "prolongation: fine element outside the coarse mesh");
    const std::size_t cpos = static_cast<std::size_t>(coarse_pos[k]);
    const Tet& ct = mesh.tet(k);
    const TetGeometry geom = mesh.geometry(k);
    const auto& cidx = coarse.element_edges(cpos);
    const auto& cverts = coarse.element_vertices(cpos);
    const Tet& ft = mesh.tet(fine.elements()[pos]);
    const auto& fidx = fine.element_edges(pos);
    for (int e = 0; e < 6; ++e) {
      const int row = fidx[e];
      if (row < 0 || edge_done[row]) continue;
      edge_done[row] = 1;
      const EdgeKey key = ft.local_edge(e);
      const auto w = edge_moments(geom, ct, mesh.vertex(edge_low(key)), mesh.vertex(edge_high(key)));
      for (int g = 0; g < 6; ++g) {
        if (cidx[g] >= 0 && std::abs(w[g]) > kDropTolerance) te.emplace_back(row, cidx[g], w[g]);
      }
    }
    const auto& fverts = fine.element_vertices(pos);
    for (int a = 0; a < 4; ++a) {
      const int row = fverts[a];
      if (row < 0 || vert_done[row]) continue;
      vert_done[row] = 1;
      const auto lam = geom.barycentric(mesh.vertex(ft.verts[a]));
      for (int b = 0; b < 4; ++b) {
        if (cverts[b] >= 0 && std::abs(lam[b]) > kDropTolerance) tv.emplace_back(row, cverts[b], lam[b]);
      }
    }
  }
  Prolongation p;
  p.edges.matrix.resize(static_cast<Eigen::Index>(fine.num_edges()),
                        static_cast<Eigen::Index>(coarse.num_edges()));
  p.edges.matrix.setFromTriplets(te.begin(), te.end());
  p.nodes.matrix.resize(static_cast<Eigen::Index>(fine.num_vertices()),
                        static_cast<Eigen::Index>(coarse.num_vertices()));
  p.nodes.matrix.setFromTriplets(tv.begin(), tv.end());
  return p;
}

MgHierarchy::MgHierarchy(const DofMap& fine, const SparseOperator& a, MgOptions options)
    : fine_(&fine), a_(&a), options_(options) {
  require(options.pre_smoothing >= 0 && options.post_smoothing >= 0, ErrorKind::Configuration,
          "smoothing counts must be non-negative");
  const auto n = static_cast<Eigen::Index>(fine.num_edges());
  require(a.rows() == n && a.cols() == n, ErrorKind::Precondition,
          "multigrid: operator does not match the dof map");
  const Mesh& mesh = fine.mesh();

  // Every edge of the forest, Dirichlet status and the smallest level of a
  // leaf containing it.
  std::vector<EdgeKey> keys;
  keys.reserve(6 * mesh.num_tets());
  for (const Tet& t : mesh.tets()) {
    for (int e = 0; e < 6; ++e) keys.push_back(t.local_edge(e));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::unordered_map<EdgeKey, int> key_index;
  key_index.reserve(keys.size() * 2);
  for (std::size_t i = 0; i < keys.size(); ++i) key_index.emplace(keys[i], static_cast<int>(i));

  std::vector<char> dirichlet_edge(keys.size(), 0);
  std::vector<char> dirichlet_vertex(mesh.num_vertices(), 0);
  std::vector<int> min_leaf_edge(keys.size(), INT_MAX);
  std::vector<int> min_leaf_vertex(mesh.num_vertices(), INT_MAX);
  for (const Tet& t : mesh.tets()) {
    for (int f = 0; f < 4; ++f) {
      if (t.faces[f] != FaceKind::Dirichlet) continue;
      const auto& lf = kLocalFaces[f];
      for (int i = 0; i < 3; ++i) {
        dirichlet_vertex[t.verts[lf[i]]] = 1;
        dirichlet_edge[key_index.at(edge_key(t.verts[lf[i]], t.verts[lf[(i + 1) % 3]]))] = 1;
      }
    }
    if (!t.is_leaf()) continue;
    for (int e = 0; e < 6; ++e) {
      int& m = min_leaf_edge[key_index.at(t.local_edge(e))];
      m = std::min(m, t.level);
    }
    for (VertexId v : t.verts) min_leaf_vertex[v] = std::min(min_leaf_vertex[v], t.level);
  }

  // Slots: non-Dirichlet forest edges in key order.
  std::vector<int> slot_of(keys.size(), -1);
  std::vector<EdgeKey> slot_key;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (dirichlet_edge[i]) continue;
    slot_of[i] = static_cast<int>(slot_key.size());
    slot_key.push_back(keys[i]);
  }
  num_slots_ = static_cast<int>(slot_key.size());
  auto slot = [&](EdgeKey k) { return slot_of[key_index.at(k)]; };

  fine_slot_.resize(fine.num_edges());
  for (std::size_t i = 0; i < fine.num_edges(); ++i) {
    const auto it = key_index.find(fine.edge(static_cast<int>(i)));
    const int s = it == key_index.end() ? -1 : slot_of[it->second];
    require(s >= 0, ErrorKind::Hierarchy, "multigrid: fine edge missing from the forest");
    fine_slot_[i] = s;
  }

  const auto gens = forest_generations(mesh);
  levels_.resize(gens.size());
  std::vector<int> row_of_slot(num_slots_, -1);
  std::vector<int> row_of_vertex(mesh.num_vertices(), -1);
  std::vector<char> slot_seen(num_slots_, 0);

  for (std::size_t l = 0; l < gens.size(); ++l) {
    Level& lv = levels_[l];
    const int level = static_cast<int>(l);
    lv.elements = gens[l];

    for (TetId k : lv.elements) {
      const Tet& t = mesh.tet(k);
      for (int e = 0; e < 6; ++e) {
        const int ki = key_index.at(t.local_edge(e));
        if (slot_of[ki] >= 0 && min_leaf_edge[ki] >= level) lv.edge_slots.push_back(slot_of[ki]);
      }
      for (VertexId v : t.verts) {
        if (!dirichlet_vertex[v] && min_leaf_vertex[v] >= level) lv.nodes.push_back(v);
      }
    }
    std::sort(lv.edge_slots.begin(), lv.edge_slots.end());
    lv.edge_slots.erase(std::unique(lv.edge_slots.begin(), lv.edge_slots.end()), lv.edge_slots.end());
    std::sort(lv.nodes.begin(), lv.nodes.end());
    lv.nodes.erase(std::unique(lv.nodes.begin(), lv.nodes.end()), lv.nodes.end());
    for (std::size_t i = 0; i < lv.edge_slots.size(); ++i) {
      row_of_slot[lv.edge_slots[i]] = static_cast<int>(i);
      lv.edge_keys.push_back(slot_key[lv.edge_slots[i]]);
    }
    for (std::size_t i = 0; i < lv.nodes.size(); ++i) row_of_vertex[lv.nodes[i]] = static_cast<int>(i);

    RowEntries arows(lv.edge_slots.size()), lrows(lv.nodes.size()), irows(lv.nodes.size());
    for (TetId k : lv.elements) {
      const Tet& t = mesh.tet(k);
      const TetGeometry geom = mesh.geometry(k);
      const ElementMatrices em = element_matrices(geom);
      std::array<int, 6> s;
      std::array<double, 6> sg;
      for (int e = 0; e < 6; ++e) {
        s[e] = slot(t.local_edge(e));
        sg[e] = local_sign(t, e);
      }
      for (int e = 0; e < 6; ++e) {
        const int r = s[e] < 0 ? -1 : row_of_slot[s[e]];
        if (r < 0) continue;
        for (int g = 0; g < 6; ++g) {
          if (s[g] >= 0) arows[r].emplace_back(s[g], sg[e] * sg[g] * (em.curl(e, g) + em.mass(e, g)));
        }
      }
      const Eigen::Matrix4d lap = element_laplacian(geom);
      for (int a = 0; a < 4; ++a) {
        const int r = row_of_vertex[t.verts[a]];
        if (r < 0) continue;
        for (int b = 0; b < 4; ++b) {
          const int c = row_of_vertex[t.verts[b]];
          if (c >= 0) lrows[r].emplace_back(c, lap(a, b));
        }
      }
      for (int e = 0; e < 6; ++e) {
        const EdgeKey key = t.local_edge(e);
        for (VertexId p : {edge_low(key), edge_high(key)}) {
          const int r = row_of_vertex[p];
          if (r < 0) continue;
          const int er = s[e] < 0 ? -1 : row_of_slot[s[e]];
          require(er >= 0, ErrorKind::Hierarchy, "multigrid: nodal support outside the level edges");
          irows[r].emplace_back(er, p == edge_high(key) ? 1.0 : -1.0);
        }
      }
    }
    compress(arows, lv.a, false);
    compress(lrows, lv.lap, false);
    for (auto& row : irows) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    lv.incidence.ptr.assign(1, 0);
    for (const auto& row : irows) {
      for (const auto& [c, v] : row) {
        lv.incidence.col.push_back(c);
        lv.incidence.val.push_back(v);
      }
      lv.incidence.ptr.push_back(static_cast<int>(lv.incidence.col.size()));
    }
    auto diagonal = [](const Csr& m, auto&& column_is_row) {
      std::vector<double> d(m.rows(), 0.0);
      for (int i = 0; i < m.rows(); ++i) {
        for (int k = m.ptr[i]; k < m.ptr[i + 1]; ++k) {
          if (column_is_row(i, m.col[k])) d[i] = m.val[k];
        }
        require(d[i] > 0.0, ErrorKind::Setup, "multigrid: non-positive diagonal entry");
      }
      return d;
    };
    lv.a_diag = diagonal(lv.a, [&](int i, int c) { return c == lv.edge_slots[i]; });
    lv.lap_diag = diagonal(lv.lap, [](int i, int c) { return c == i; });

    if (l > 0) {
      RowEntries trows;
      for (TetId k : gens[l - 1]) {
        const Tet& t = mesh.tet(k);
        if (t.is_leaf()) continue;
        const int bs = slot(t.refinement_edge());
        if (bs >= 0) lv.bisected.push_back(bs);
        const VertexId m = mesh.tet(t.children[0]).verts[3];
        const TetGeometry geom = mesh.geometry(k);
        for (VertexId v : t.verts) {
          const EdgeKey key = edge_key(v, m);
          const int ns = slot(key);
          if (ns < 0 || slot_seen[ns]) continue;
          slot_seen[ns] = 1;
          const auto w = edge_moments(geom, t, mesh.vertex(edge_low(key)), mesh.vertex(edge_high(key)));
          std::vector<std::pair<int, double>> row;
          for (int g = 0; g < 6; ++g) {
            const int cs = slot(t.local_edge(g));
            if (cs >= 0 && std::abs(w[g]) > kDropTolerance) row.emplace_back(cs, w[g]);
          }
          lv.new_slots.push_back(ns);
          trows.push_back(std::move(row));
        }
      }
      std::sort(lv.bisected.begin(), lv.bisected.end());
      lv.bisected.erase(std::unique(lv.bisected.begin(), lv.bisected.end()), lv.bisected.end());
      compress(trows, lv.transfer, true);
    }

    for (int s : lv.edge_slots) row_of_slot[s] = -1;
    for (VertexId v : lv.nodes) row_of_vertex[v] = -1;
  }

  // Exact solve on T_0.
  const Level& l0 = levels_.front();
  coarse_slots_ = l0.edge_slots;
  const auto nc = static_cast<Eigen::Index>(coarse_slots_.size());
  if (nc > 0) {
    std::vector<int> pos(num_slots_, -1);
    for (Eigen::Index i = 0; i < nc; ++i) pos[coarse_slots_[i]] = static_cast<int>(i);
    Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(nc, nc);
    for (int i = 0; i < l0.a.rows(); ++i) {
      for (int k = l0.a.ptr[i]; k < l0.a.ptr[i + 1]; ++k) a0(i, pos[l0.a.col[k]]) += l0.a.val[k];
    }
    coarse_.compute(a0);
    require(coarse_.info() == Eigen::Success && coarse_.vectorD().minCoeff() > 0.0, ErrorKind::Setup,
            "multigrid: coarse operator is not positive definite");
  }
}

void MgHierarchy::smooth(const Level& lv, const std::vector<double>& rhs, std::vector<double>& e,
                         bool forward, std::vector<double>& work) const {
  const int ne = lv.a.rows();
  auto residual = [&](int i) {
    double s = rhs[i];
    for (int k = lv.a.ptr[i]; k < lv.a.ptr[i + 1]; ++k) s -= lv.a.val[k] * e[lv.a.col[k]];
    return s;
  };
  auto nodal = [&] {
    const int nv = lv.lap.rows();
    if (!options_.nodal_smoothing || nv == 0) return;
    work.resize(static_cast<std::size_t>(ne + 2 * nv));
    double* res = work.data();
    double* s = res + ne;
    double* y = s + nv;
    for (int i = 0; i < ne; ++i) res[i] = residual(i);
    for (int p = 0; p < nv; ++p) {
      double acc = 0.0;
      for (int k = lv.incidence.ptr[p]; k < lv.incidence.ptr[p + 1]; ++k) {
        acc += lv.incidence.val[k] * res[lv.incidence.col[k]];
      }
      s[p] = acc;
      y[p] = 0.0;
    }
    for (int step = 0; step < nv; ++step) {
      const int p = forward ? step : nv - 1 - step;
      double acc = s[p];
      for (int k = lv.lap.ptr[p]; k < lv.lap.ptr[p + 1]; ++k) {
        if (lv.lap.col[k] != p) acc -= lv.lap.val[k] * y[lv.lap.col[k]];
      }
      y[p] = acc / lv.lap_diag[p];
    }
    for (int p = 0; p < nv; ++p) {
      for (int k = lv.incidence.ptr[p]; k < lv.incidence.ptr[p + 1]; ++k) {
        e[lv.edge_slots[lv.incidence.col[k]]] += lv.incidence.val[k] * y[p];
      }
    }
  };
  auto edges = [&] {
    for (int step = 0; step < ne; ++step) {
      const int i = forward ? step : ne - 1 - step;
      e[lv.edge_slots[i]] += residual(i) / lv.a_diag[i];
    }
  };
  if (forward) {
    nodal();
    edges();
  } else {
    edges();
    nodal();
  }
}

void MgHierarchy::restrict_to(const Level& lv, std::vector<double>& r) const {
  for (int s : lv.bisected) r[s] = 0.0;
  for (int i = 0; i < lv.transfer.rows(); ++i) {
    const double ri = r[lv.new_slots[i]];
    for (int k = lv.transfer.ptr[i]; k < lv.transfer.ptr[i + 1]; ++k) {
      r[lv.transfer.col[k]] += lv.transfer.val[k] * ri;
    }
  }
}

void MgHierarchy::prolongate_to(const Level& lv, std::vector<double>& e) const {
  for (int i = 0; i < lv.transfer.rows(); ++i) {
    double v = 0.0;
    for (int k = lv.transfer.ptr[i]; k < lv.transfer.ptr[i + 1]; ++k) {
      v += lv.transfer.val[k] * e[lv.transfer.col[k]];
    }
    e[lv.new_slots[i]] = v;
  }
}

Vector MgHierarchy::slots_to_fine(const std::vector<double>& e) const {
  Vector x(static_cast<Eigen::Index>(fine_slot_.size()));
  for (std::size_t i = 0; i < fine_slot_.size(); ++i) x[static_cast<Eigen::Index>(i)] = e[fine_slot_[i]];
  return x;
}

void MgHierarchy::cycle(Vector& x, const Vector& b, int pre, int post) const {
  const auto n = static_cast<Eigen::Index>(fine_slot_.size());
  require(x.size() == n && b.size() == n, ErrorKind::Precondition, "cycle: size mismatch");
  const Vector r = b - a_->matrix * x;
  std::vector<double> rs(num_slots_, 0.0), e(num_slots_, 0.0), z, work;
  if (pre > 0) z.assign(num_slots_, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) rs[fine_slot_[i]] = r[i];

  const int top = finest_level();
  std::vector<std::vector<double>> saved(top + 1), corr(top + 1);
  for (int l = top; l >= 1; --l) {
    const Level& lv = levels_[l];
    const int nr = lv.a.rows();
    saved[l].resize(nr);
    for (int i = 0; i < nr; ++i) saved[l][i] = rs[lv.edge_slots[i]];
    if (pre > 0) {
      for (int s = 0; s < pre; ++s) smooth(lv, saved[l], z, false, work);
      corr[l].resize(nr);
      for (int i = 0; i < nr; ++i) {
        const double zi = z[lv.edge_slots[i]];
        corr[l][i] = zi;
        if (zi == 0.0) continue;
        for (int k = lv.a.ptr[i]; k < lv.a.ptr[i + 1]; ++k) rs[lv.a.col[k]] -= lv.a.val[k] * zi;
      }
      for (int s : lv.edge_slots) z[s] = 0.0;
    }
    restrict_to(lv, rs);
  }

  if (!coarse_slots_.empty()) {
    Eigen::VectorXd r0(static_cast<Eigen::Index>(coarse_slots_.size()));
    for (std::size_t i = 0; i < coarse_slots_.size(); ++i) r0[static_cast<Eigen::Index>(i)] = rs[coarse_slots_[i]];
    const Eigen::VectorXd e0 = coarse_.solve(r0);
    for (std::size_t i = 0; i < coarse_slots_.size(); ++i) e[coarse_slots_[i]] = e0[static_cast<Eigen::Index>(i)];
  }

  for (int l = 1; l <= top; ++l) {
    const Level& lv = levels_[l];
    prolongate_to(lv, e);
    if (pre > 0) {
      for (int i = 0; i < lv.a.rows(); ++i) e[lv.edge_slots[i]] += corr[l][i];
    }
    for (int s = 0; s < post; ++s) smooth(lv, saved[l], e, true, work);
  }
  x += slots_to_fine(e);
}

std::size_t MgHierarchy::work_units(int pre, int post) const {
  std::size_t w = coarse_slots_.size();
  for (std::size_t l = 1; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    w += static_cast<std::size_t>(pre + post) *
         (lv.edge_slots.size() + (options_.nodal_smoothing ? lv.nodes.size() : 0));
  }
  return w;
}

Vector MgHierarchy::lift_edges(int l, const Vector& coeffs) const {
  require(l >= 0 && l <= finest_level(), ErrorKind::Precondition, "lift_edges: level out of range");
  const Level& lv = levels_[l];
  require(coeffs.size() == static_cast<Eigen::Index>(lv.edge_slots.size()), ErrorKind::Precondition,
          "lift_edges: size mismatch");
  std::vector<double> e(num_slots_, 0.0);
  for (std::size_t i = 0; i < lv.edge_slots.size(); ++i) e[lv.edge_slots[i]] = coeffs[static_cast<Eigen::Index>(i)];
  for (int m = l + 1; m <= finest_level(); ++m) prolongate_to(levels_[m], e);
  return slots_to_fine(e);
}

Vector MgHierarchy::lift_gradients(int l, const Vector& coeffs) const {
  require(l >= 0 && l <= finest_level(), ErrorKind::Precondition, "lift_gradients: level out of range");
  const Level& lv = levels_[l];
  require(coeffs.size() == static_cast<Eigen::Index>(lv.nodes.size()), ErrorKind::Precondition,
          "lift_gradients: size mismatch");
  Vector ec = Vector::Zero(static_cast<Eigen::Index>(lv.edge_slots.size()));
  for (int p = 0; p < lv.incidence.rows(); ++p) {
    for (int k = lv.incidence.ptr[p]; k < lv.incidence.ptr[p + 1]; ++k) {
      ec[lv.incidence.col[k]] += lv.incidence.val[k] * coeffs[p];
    }
  }
  return lift_edges(l, ec);
}

SolveReport solve(const MgHierarchy& mg, const Vector& b, Vector& x, const SolveOptions& opts) {
  const SparseMatrix& a = mg.fine_operator().matrix;
  require(b.size() == a.rows(), ErrorKind::Precondition, "solve: size mismatch");
  require(opts.reduction > 0.0 && opts.max_iterations >= 0, ErrorKind::Configuration,
          "solve: invalid tolerance or iteration limit");
  SolveReport rep;
  const auto& o = mg.options();
  const int sym = std::max({o.pre_smoothing, o.post_smoothing, 1});
  rep.work_units = opts.mode == SolveMode::Pcg ? mg.work_units(sym, sym) : mg.work_units();
  for (int l = 0; l <= mg.finest_level(); ++l) {
    if (l == 0) {
      rep.level_work.push_back(mg.level_edges(0).size());
      continue;
    }
    const int sweeps = opts.mode == SolveMode::Pcg ? 2 * sym : o.pre_smoothing + o.post_smoothing;
    rep.level_work.push_back(static_cast<std::size_t>(sweeps) *
                             (mg.level_edges(l).size() + (o.nodal_smoothing ? mg.level_vertices(l).size() : 0)));
  }

  x = Vector::Zero(b.size());
  const double r0 = b.norm();
  rep.residuals.push_back(r0);
  if (r0 == 0.0) {
    rep.converged = true;
    return rep;
  }
  auto record = [&](double rn) {
    rep.contraction.push_back(rn / rep.residuals.back());
    rep.residuals.push_back(rn);
    ++rep.iterations;
    return rn <= opts.reduction * r0;
  };

  if (opts.mode == SolveMode::Iteration) {
    while (rep.iterations < opts.max_iterations) {
      mg.cycle(x, b);
      if (record((b - a * x).norm())) {
        rep.converged = true;
        break;
      }
    }
    return rep;
  }

  Vector r = b;
  auto precondition = [&](const Vector& rr) {
    Vector z = Vector::Zero(rr.size());
    mg.cycle(z, rr, sym, sym);
    return z;
  };
  Vector z = precondition(r);
  Vector p = z;
  double rz = r.dot(z);
  while (rep.iterations < opts.max_iterations) {
    if (!(rz > 0.0)) {
      rep.negative_curvature = true;
      break;
    }
    const Vector ap = a * p;
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) {
      rep.negative_curvature = true;
      break;
    }
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    if (record(r.norm())) {
      rep.converged = true;
      break;
    }
    z = precondition(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return rep;
}

double estimate_contraction(const MgHierarchy& mg, int iterations, std::uint64_t seed) {
  const SparseMatrix& a = mg.fine_operator().matrix;
  const auto n = a.rows();
  if (n == 0 || iterations <= 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = dist(rng);
  const Vector zero = Vector::Zero(n);
  const int pre = mg.options().pre_smoothing, post = mg.options().post_smoothing;
  double ex = x.dot(a * x);
  x /= std::sqrt(ex);
  ex = 1.0;
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector y = x;
    mg.cycle(y, zero, pre, post);
    const double ey = y.dot(a * y);
    estimate = std::sqrt(std::max(ey, 0.0) / ex);
    if (!(ey > 1e-300)) break;
    Vector w = y;
    mg.cycle(w, zero, post, pre);
    const double ew = w.dot(a * w);
    if (!(ew > 1e-300)) break;
    x = w / std::sqrt(ew);
    ex = 1.0;
  }
  return estimate;
}

void write_solve_summary_csv(std::span<const SolveSummaryRow> rows, std::ostream& out) {
  out << "level,n_elements,n_dofs,iters,contraction_estimate,work_units\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{:.6g},{}\n", r.level, r.n_elements, r.n_dofs, r.iterations,
                       r.contraction_estimate, r.work_units);
  }
}

}  // namespace hcurlmg
