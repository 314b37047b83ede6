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

#include "hcurlmg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hcurlmg/analysis.hpp"
#include "hcurlmg/assembly.hpp"
#include "hcurlmg/error.hpp"
#include "hcurlmg/estimator.hpp"
#include "hcurlmg/experiment.hpp"
#include "hcurlmg/multigrid.hpp"
#include "hcurlmg/quadrature.hpp"
#include "mesh_internal.hpp"

namespace hcurlmg {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"cdp",      "prolongation", "kernel",   "scs",
                                              "coloring", "contraction",  "estimator"};
  return names;
}

Mesh random_refinement(Mesh mesh, int rounds, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int r = 0; r < rounds; ++r) {
    const auto leaves = mesh.leaves();
    const TetId k = leaves[rng() % leaves.size()];
    mesh.refine(std::span<const TetId>(&k, 1));
  }
  return mesh;
}

Mesh axis_refinement(Mesh mesh, int levels) {
  while (mesh.max_level() < levels) {
    std::vector<TetId> marked;
    for (TetId k : mesh.leaves()) {
      for (VertexId v : mesh.tet(k).verts) {
        const Vec3& x = mesh.vertex(v);
        if (std::hypot(x[0], x[1]) < 1e-12) {
          marked.push_back(k);
          break;
        }
      }
    }
    require(!marked.empty(), ErrorKind::Precondition, "axis_refinement: no leaf touches the z axis");
    mesh.refine(marked);
  }
  return mesh;
}

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { report_.suite = std::move(name); }
  void check(std::string name, double value, double limit) {
    report_.checks.push_back({std::move(name), value, limit, value <= limit});
  }
  VerifyReport take() { return std::move(report_); }

 private:
  VerifyReport report_;
};

Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

double rel(double diff, double scale) { return scale > 0.0 ? diff / scale : diff; }

// Random cubic polynomial and its gradient.
struct Cubic {
  std::vector<std::array<int, 3>> powers;
  std::vector<double> coeffs;
  explicit Cubic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 3; ++j)
        for (int k = 0; i + j + k <= 3; ++k) {
          powers.push_back({i, j, k});
          coeffs.push_back(d(rng));
        }
  }
  double value(const Vec3& x) const {
    double s = 0.0;
    for (std::size_t t = 0; t < powers.size(); ++t) {
      s += coeffs[t] * std::pow(x[0], powers[t][0]) * std::pow(x[1], powers[t][1]) * std::pow(x[2], powers[t][2]);
    }
    return s;
  }
  Vec3 gradient(const Vec3& x) const {
    Vec3 g = Vec3::Zero();
    for (std::size_t t = 0; t < powers.size(); ++t) {
      for (int c = 0; c < 3; ++c) {
        const int p = powers[t][c];
        if (p == 0) continue;
        double term = coeffs[t] * p;
        for (int o = 0; o < 3; ++o) term *= std::pow(x[o], o == c ? p - 1 : powers[t][o]);
        g[c] += term;
      }
    }
    return g;
  }
};

Mesh refined_preset(const std::string& problem, int rounds, std::uint64_t seed, bool dirichlet) {
  Mesh m = problem == "crack" ? make_crack(dirichlet) : make_lshape(dirichlet);
  m.refine_uniform(1);
  return random_refinement(std::move(m), rounds, seed);
}

VerifyReport suite_cdp(const VerifyOptions& o) {
  Suite s("cdp");
  std::mt19937_64 rng(o.seed);
  const Mesh free_mesh = refined_preset(o.problem, 40, o.seed, false);
  const DofMap dm(free_mesh, free_mesh.leaves());
  for (int trial = 0; trial < 3; ++trial) {
    const Cubic p(rng);
    const Vector ie = edge_interpolate(dm, [&](const Vec3& x) { return p.gradient(x); });
    const Vector gn = build_gradient_map(dm).op * nodal_interpolate(dm, [&](const Vec3& x) { return p.value(x); });
    s.check("edge interpolant of grad s equals G times nodal interpolant of s (cubic " +
                std::to_string(trial) + ")",
            rel((ie - gn).norm(), ie.norm()), 1e-12);
  }

  const auto assignment = default_assignment(dm);
  const Vector lin = nodal_interpolate(dm, [](const Vec3& x) { return 0.3 - x[0] + 2.0 * x[1] + 0.5 * x[2]; });
  const Vector q_lin = quasi_interpolate(dm, assignment, [](const Vec3& x) { return 0.3 - x[0] + 2.0 * x[1] + 0.5 * x[2]; });
  s.check("quasi-interpolation reproduces linear functions", rel((q_lin - lin).norm(), lin.norm()), 1e-12);

  const Mesh bc_mesh = refined_preset(o.problem, 40, o.seed + 1, true);
  const DofMap dmd(bc_mesh, bc_mesh.leaves());
  const Vector uh = random_vector(static_cast<Eigen::Index>(dmd.num_vertices()), rng);
  const Vector quh = quasi_interpolate(dmd, default_assignment(dmd), uh);
  s.check("quasi-interpolation is a projection: Q u_h = u_h", rel((quh - uh).norm(), uh.norm()), 1e-12);
  return s.take();
}

VerifyReport suite_kernel(const VerifyOptions& o) {
  Suite s("kernel");
  std::mt19937_64 rng(o.seed);
  const Mesh m = refined_preset(o.problem, 40, o.seed, true);
  const DofMap dm(m, m.leaves());
  const AssembledSystem sys = assemble(dm, nullptr);
  const GradientMap g = build_gradient_map(dm);
  double row_sum = 0.0;
  for (Eigen::Index i = 0; i < sys.curl.matrix.rows(); ++i) {
    double r = 0.0;
    for (SparseMatrix::InnerIterator it(sys.curl.matrix, i); it; ++it) r += std::abs(it.value());
    row_sum = std::max(row_sum, r);
  }
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Vector gx = g.op * random_vector(static_cast<Eigen::Index>(dm.num_vertices()), rng);
    const Vector r = sys.curl * gx;
    worst = std::max(worst, rel(r.lpNorm<Eigen::Infinity>(), row_sum * gx.lpNorm<Eigen::Infinity>()));
  }
  s.check("curl-curl operator annihilates discrete gradients", worst, 1e-12);

  const SparseOperator gag = assemble_nodal_laplacian(dm, sys.a, g);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const Eigen::Matrix4d lap = element_laplacian(m.geometry(dm.elements()[pos]));
    const auto& v = dm.element_vertices(pos);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (v[a] >= 0 && v[b] >= 0) trip.emplace_back(v[a], v[b], lap(a, b));
  }
  SparseMatrix lap(gag.rows(), gag.cols());
  lap.setFromTriplets(trip.begin(), trip.end());
  s.check("G^T A G equals the linear Lagrange stiffness matrix",
          rel(max_abs(SparseMatrix(gag.matrix - lap)), max_abs(lap)), 1e-12);
  s.check("system matrix is symmetric", rel(max_asymmetry(sys.a.matrix), max_abs(sys.a.matrix)), 1e-14);

  // A single-space splitting (L = 0) is an exact solver.
  const ProblemPreset p = problem_by_name(o.problem);
  const Mesh coarse = p.build();
  const DofMap dc(coarse, coarse.leaves());
  const AssembledSystem sc = assemble(dc, [](const Vec3& x) { return Vec3(1.0 + x[2], x[0] * x[1], -x[1]); });
  const MgHierarchy mg(dc, sc.a);
  Vector x = Vector::Zero(sc.b.size());
  ssc_step(mg, x, sc.b);
  s.check("one SSC step on a single space solves exactly", rel((sc.b - sc.a * x).norm(), sc.b.norm()), 1e-12);
  return s.take();
}

VerifyReport suite_prolongation(const VerifyOptions& o) {
  Suite s("prolongation");
  std::mt19937_64 rng(o.seed);
  const Mesh m = refined_preset(o.problem, 60, o.seed, true);
  const MeshHierarchy h = virtual_hierarchy(m);
  std::vector<DofMap> dms;
  for (const auto& level : h.levels) dms.emplace_back(m, level);
  std::vector<SparseOperator> ops;
  for (const auto& dm : dms) ops.push_back(assemble(dm, nullptr).a);

  double energy = 0.0, identity = 0.0, half = 0.0, pointwise = 0.0;
  for (int l = 0; l + 1 < static_cast<int>(dms.size()); ++l) {
    const DofMap& c = dms[l];
    const DofMap& f = dms[l + 1];
    const Prolongation p = build_prolongation(c, f);
    for (int trial = 0; trial < 3; ++trial) {
      const Vector v = random_vector(static_cast<Eigen::Index>(c.num_edges()), rng);
      const Vector pv = p.edges * v;
      const double ec = v.dot(ops[l] * v);
      energy = std::max(energy, rel(std::abs(ec - pv.dot(ops[l + 1] * pv)), ec));
    }
    // Rows of fine edges that exist on the coarse mesh are unit rows; the
    // halves of a bisected coarse edge get weight +-1/2 from it (the sign
    // follows the global orientations).
    for (Eigen::Index i = 0; i < p.edges.rows(); ++i) {
      const EdgeKey e = f.edge(static_cast<int>(i));
      const int ci = c.edge_index(e);
      for (SparseMatrix::InnerIterator it(p.edges.matrix, i); it; ++it) {
        if (ci >= 0) {
          identity = std::max(identity, std::abs(it.value() - (it.col() == ci ? 1.0 : 0.0)));
        } else {
          const EdgeKey ce = c.edge(static_cast<int>(it.col()));
          const VertexId a = edge_low(e), b = edge_high(e);
          const bool shares_end = a == edge_low(ce) || a == edge_high(ce) || b == edge_low(ce) || b == edge_high(ce);
          const Vec3 mid = 0.5 * (m.vertex(edge_low(ce)) + m.vertex(edge_high(ce)));
          const bool at_mid = (m.vertex(a) - mid).norm() < 1e-14 || (m.vertex(b) - mid).norm() < 1e-14;
          if (shares_end && at_mid) half = std::max(half, std::abs(std::abs(it.value()) - 0.5));
        }
      }
      if (ci >= 0 && p.edges.matrix.row(i).nonZeros() != 1) identity = std::max(identity, 1.0);
    }
    // The prolongated function coincides with the coarse one pointwise.
    std::vector<int> cpos(m.num_tets(), -1);
    for (std::size_t i = 0; i < c.elements().size(); ++i) cpos[c.elements()[i]] = static_cast<int>(i);
    const Vector v = random_vector(static_cast<Eigen::Index>(c.num_edges()), rng);
    const Vector pv = p.edges * v;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double scale = 0.0, diff = 0.0;
    for (std::size_t pos = 0; pos < f.elements().size(); ++pos) {
      TetId k = f.elements()[pos];
      while (cpos[k] < 0) k = m.tet(k).parent;
      std::array<double, 4> lam{u01(rng), u01(rng), u01(rng), u01(rng)};
      const double sum = lam[0] + lam[1] + lam[2] + lam[3];
      for (double& x : lam) x /= sum;
      const Vec3 x = m.geometry(f.elements()[pos]).point(lam);
      const Vec3 fine = evaluate_edge_function(f, pos, pv, lam);
      const Vec3 coarse =
          evaluate_edge_function(c, static_cast<std::size_t>(cpos[k]), v, m.geometry(k).barycentric(x));
      scale = std::max(scale, coarse.norm());
      diff = std::max(diff, (fine - coarse).norm());
    }
    pointwise = std::max(pointwise, rel(diff, scale));
  }
  s.check("energy identity a(Pv, Pv) = v^T A_l v", energy, 1e-12);
  s.check("unrefined edges get identity rows", identity, 1e-14);
  s.check("half edges get weight 1/2", half, 1e-14);
  s.check("prolongation reproduces coarse functions pointwise", pointwise, 1e-12);

  // The in-place transfer chain of the multigrid hierarchy agrees with the
  // level operators assembled on the virtual meshes.
  const DofMap& fine = dms.back();
  const MgHierarchy mg(fine, ops.back());
  double lift_energy = 0.0, lift_grad = 0.0;
  for (int l = 0; l <= mg.finest_level(); ++l) {
    const DofMap& dl = dms[l];
    const auto& keys = mg.level_edges(l);
    if (keys.empty()) continue;
    const Vector c = random_vector(static_cast<Eigen::Index>(keys.size()), rng);
    Vector full = Vector::Zero(static_cast<Eigen::Index>(dl.num_edges()));
    for (std::size_t i = 0; i < keys.size(); ++i) full[dl.edge_index(keys[i])] = c[static_cast<Eigen::Index>(i)];
    const Vector u = mg.lift_edges(l, c);
    const double el = full.dot(ops[l] * full);
    lift_energy = std::max(lift_energy, rel(std::abs(el - u.dot(ops.back() * u)), el));

    const auto& nodes = mg.level_vertices(l);
    if (nodes.empty()) continue;
    const Vector y = random_vector(static_cast<Eigen::Index>(nodes.size()), rng);
    Vector yfull = Vector::Zero(static_cast<Eigen::Index>(dl.num_vertices()));
    for (std::size_t i = 0; i < nodes.size(); ++i) yfull[dl.vertex_index(nodes[i])] = y[static_cast<Eigen::Index>(i)];
    const Vector gy = build_gradient_map(dl).op * yfull;
    Vector gc(static_cast<Eigen::Index>(keys.size()));
    for (std::size_t i = 0; i < keys.size(); ++i) gc[static_cast<Eigen::Index>(i)] = gy[dl.edge_index(keys[i])];
    const Vector a = mg.lift_gradients(l, y);
    const Vector b = mg.lift_edges(l, gc);
    lift_grad = std::max(lift_grad, rel((a - b).norm(), b.norm()));
  }
  s.check("multigrid level functions keep their level energy", lift_energy, 1e-12);
  s.check("multigrid nodal corrections are discrete gradients", lift_grad, 1e-12);
  return s.take();
}

VerifyReport suite_scs(const VerifyOptions& o) {
  Suite s("scs");
  const ProblemPreset p = problem_by_name(o.problem);
  const Mesh m = axis_refinement(p.build(), std::max(o.levels, 2));
  const DofMap dm(m, m.leaves());
  const SparseOperator a = assemble(dm, nullptr).a;
  const MgHierarchy mg(dm, a);
  const ScsResult r = measure_scs(mg, 20, o.seed);
  double max_cos = 0.0;
  for (const auto& smp : r.samples) max_cos = std::max(max_cos, smp.cosine);
  s.check("cosines lie in [0, 1]", max_cos, 1.0);
  s.check("fitted decay rate q_hat", r.q_hat > 0.0 ? r.q_hat : 1.0, 0.95);
  s.check("disjoint-support cosine", r.max_disjoint, 1e-12);

  std::mt19937_64 rng(o.seed);
  const Vector u = mg.lift_edges(0, random_vector(static_cast<Eigen::Index>(mg.level_edges(0).size()), rng));
  const int top = mg.finest_level();
  const Vector v = mg.lift_edges(top, random_vector(static_cast<Eigen::Index>(mg.level_edges(top).size()), rng));
  const double c = energy_cosine(a, u, v);
  s.check("cosine is symmetric", std::abs(c - energy_cosine(a, v, u)), 1e-14);
  s.check("cosine is scale invariant", std::abs(c - energy_cosine(a, -3.5 * u, 0.25 * v)), 1e-12);
  Vector unit = Vector::Zero(static_cast<Eigen::Index>(mg.level_edges(top).size()));
  unit[0] = 1.0;
  const Vector w = mg.lift_edges(top, unit);
  s.check("same single-dof subspace gives cosine 1", std::abs(1.0 - energy_cosine(a, w, w)), 1e-12);
  return s.take();
}

VerifyReport suite_coloring(const VerifyOptions& o) {
  Suite s("coloring");
  const Mesh single = make_single_tet({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
  const Tet& t = single.tet(0);
  std::vector<EdgeKey> edges;
  for (int e = 0; e < 6; ++e) edges.push_back(t.local_edge(e));
  std::sort(edges.begin(), edges.end());
  const std::vector<VertexId> verts{0, 1, 2, 3};
  const std::vector<TetId> elems{0};
  const LevelColoring c1 = greedy_coloring(single, elems, verts, edges);
  s.check("single tet needs 4 vertex and 6 edge colors",
          std::abs(c1.num_vertex_colors - 4.0) + std::abs(c1.num_edge_colors - 6.0), 0.0);

  const ProblemPreset p = problem_by_name(o.problem);
  const Mesh m = random_refinement(axis_refinement(p.build(), std::max(o.levels, 1)), 40, o.seed);
  const DofMap dm(m, m.leaves());
  const MgHierarchy mg(dm, assemble(dm, nullptr).a);
  const ColoringPartition part = color_levels(m, mg);
  int invalid = 0, most = 0;
  for (int l = 0; l <= mg.finest_level(); ++l) {
    const auto& lc = part.levels[l];
    if (!coloring_is_valid(m, mg.level_elements(l), mg.level_vertices(l), mg.level_edges(l), lc)) ++invalid;
    most = std::max({most, lc.num_vertex_colors, lc.num_edge_colors});
  }
  s.check("every level coloring is valid", invalid, 0.0);
  s.check("color count bound", most, 64.0);

  int lo = 1 << 30, hi = 0;
  for (int r = 3; r <= 9; r += 3) {
    Mesh b = make_box(1, 1, 1, Vec3::Zero(), Vec3::Ones(), false);
    b.refine_uniform(r);
    const DofMap db(b, b.leaves());
    const auto leaves = b.leaves();
    const LevelColoring c = greedy_coloring(b, leaves, db.vertices(), db.edges());
    lo = std::min(lo, c.num_vertex_colors + c.num_edge_colors);
    hi = std::max(hi, c.num_vertex_colors + c.num_edge_colors);
  }
  s.check("color counts do not grow under uniform refinement", hi - lo, 0.0);
  return s.take();
}

VerifyReport suite_contraction(const VerifyOptions& o) {
  Suite s("contraction");
  ExperimentOptions eo;
  eo.seed = o.seed;
  eo.initial_refinements = 0;
  eo.contraction_iterations = 12;
  const auto rows = uniformity_study(problem_by_name(o.problem), std::max(o.levels, 1) + 1, eo);
  s.check("L = 0 estimate", rows.front().contraction, 1e-10);
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.contraction);
  s.check("largest contraction estimate over " + std::to_string(rows.size()) + " stages", worst, 0.95);
  return s.take();
}

VerifyReport suite_estimator(const VerifyOptions& o) {
  Suite s("estimator");
  std::mt19937_64 rng(o.seed);
  const Mesh m = random_refinement(make_box(2, 2, 2, Vec3(-1, -1, -1), Vec3(1, 1, 1), false), 30, o.seed);
  const DofMap dm(m, m.leaves());
  const Vec3 c(0.3, -1.2, 0.7);
  const VectorField fc = [&](const Vec3&) { return c; };
  const ScalarField zero = [](const Vec3&) { return 0.0; };
  const Vector uc = edge_interpolate(dm, fc);
  s.check("constant field with matching source gives eta = 0", estimate(dm, uc, nullptr, fc, zero).eta_max, 1e-12);

  const VectorField f = [](const Vec3& x) { return Vec3(x[1] * x[2], 1.0 - x[0], x[0] * x[1]); };
  const ScalarField divf = [](const Vec3& x) { return x[0] + x[1] + x[2]; };
  const Vector uh = random_vector(static_cast<Eigen::Index>(dm.num_edges()), rng);
  const EstimatorReport base = estimate(dm, uh, nullptr, f, divf);
  const double sc = -2.5;
  const EstimatorReport scaled = estimate(dm, sc * uh, nullptr, [&](const Vec3& x) { return Vec3(sc * f(x)); },
                                          [&](const Vec3& x) { return sc * divf(x); });
  double hom = 0.0;
  for (std::size_t i = 0; i < base.eta.size(); ++i) hom = std::max(hom, std::abs(scaled.eta[i] - std::abs(sc) * base.eta[i]));
  s.check("estimator is absolutely homogeneous", rel(hom, std::abs(sc) * base.eta_max), 1e-12);
  double sum = 0.0;
  for (double e : base.eta) sum += e * e;
  s.check("eta_h^2 is the sum of squares", rel(std::abs(base.eta_h * base.eta_h - sum), sum), 1e-12);

  // Tangential traces of conforming edge functions are continuous.
  std::vector<int> pos_of(m.num_tets(), -1);
  for (std::size_t i = 0; i < dm.elements().size(); ++i) pos_of[dm.elements()[i]] = static_cast<int>(i);
  const auto faces = collect_faces(m, dm.elements());
  double tang = 0.0, scale = 0.0;
  for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
    if (faces[i].key != faces[i + 1].key) continue;
    const auto p1 = static_cast<std::size_t>(pos_of[faces[i].tet]);
    const auto p2 = static_cast<std::size_t>(pos_of[faces[i + 1].tet]);
    const Vec3 a = m.vertex(faces[i].key[0]), b = m.vertex(faces[i].key[1]), cc = m.vertex(faces[i].key[2]);
    const Vec3 n = triangle(a, b, cc).normal;
    for (const auto& q : quad::triangle_degree4()) {
      const Vec3 x = q.lambda[0] * a + q.lambda[1] * b + q.lambda[2] * cc;
      const Vec3 u1 = evaluate_edge_function(dm, p1, uh, m.geometry(faces[i].tet).barycentric(x));
      const Vec3 u2 = evaluate_edge_function(dm, p2, uh, m.geometry(faces[i + 1].tet).barycentric(x));
      tang = std::max(tang, (u1 - u2).cross(n).norm());
      scale = std::max(scale, u1.norm());
    }
    ++i;
  }
  s.check("tangential part of the face jump vanishes", rel(tang, scale), 1e-12);

  const auto top = mark(base, 1.0);
  std::size_t argmax = 0;
  for (double e : base.eta) argmax += e == base.eta_max ? 1 : 0;
  s.check("theta = 1 marks exactly the maximizers", std::abs(double(top.size()) - double(argmax)), 0.0);
  EstimatorReport flat = base;
  std::fill(flat.eta.begin(), flat.eta.end(), 1.0);
  flat.eta_max = 1.0;
  s.check("equal indicators mark every element", std::abs(double(mark(flat, 0.3).size()) - double(flat.eta.size())), 0.0);

  // Locality: changing one coefficient only affects the elements around the
  // edge and their face neighbours.
  const int dof = static_cast<int>(rng() % dm.num_edges());
  Vector up = uh;
  up[dof] += 1.0;
  const EstimatorReport pert = estimate(dm, up, nullptr, f, divf);
  const EdgeKey e = dm.edge(dof);
  std::set<TetId> near;
  for (std::size_t i = 0; i < dm.elements().size(); ++i) {
    const Tet& t = m.tet(dm.elements()[i]);
    if (t.has_vertex(edge_low(e)) && t.has_vertex(edge_high(e))) near.insert(dm.elements()[i]);
  }
  std::set<TetId> ring = near;
  for (std::size_t i = 0; i + 1 < faces.size(); ++i) {
    if (faces[i].key != faces[i + 1].key) continue;
    if (near.count(faces[i].tet)) ring.insert(faces[i + 1].tet);
    if (near.count(faces[i + 1].tet)) ring.insert(faces[i].tet);
  }
  double far = 0.0;
  for (std::size_t i = 0; i < dm.elements().size(); ++i) {
    if (!ring.count(dm.elements()[i])) far = std::max(far, std::abs(pert.eta[i] - base.eta[i]));
  }
  s.check("far indicators are unchanged by a local perturbation", far, 0.0);
  return s.take();
}

}  // namespace

VerifyReport run_verify(const std::string& suite, const VerifyOptions& opts) {
  if (suite == "cdp") return suite_cdp(opts);
  if (suite == "prolongation") return suite_prolongation(opts);
  if (suite == "kernel") return suite_kernel(opts);
  if (suite == "scs") return suite_scs(opts);
  if (suite == "coloring") return suite_coloring(opts);
  if (suite == "contraction") return suite_contraction(opts);
  if (suite == "estimator") return suite_estimator(opts);
  fail(ErrorKind::Configuration, "unknown verification suite '" + suite + "'");
}

}  // namespace hcurlmg
