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

#include "hcurlmg/experiment.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "hcurlmg/assembly.hpp"
#include "hcurlmg/error.hpp"
#include "hcurlmg/estimator.hpp"
#include "hcurlmg/quadrature.hpp"

namespace hcurlmg {

double relative_error(const DofMap& dm, const Vector& u_h, const Vector* dirichlet,
                      const ProblemPreset& problem) {
  const Mesh& mesh = dm.mesh();
  double err = 0.0;
  for (std::size_t pos = 0; pos < dm.elements().size(); ++pos) {
    const TetGeometry g = mesh.geometry(dm.elements()[pos]);
    const Vec3 curl_h = evaluate_edge_curl(dm, pos, u_h, dirichlet);
    double acc = 0.0;
    for (const auto& q : quad::tet_degree5()) {
      const Vec3 x = g.point(q.lambda);
      acc += q.weight * ((problem.u(x) - evaluate_edge_function(dm, pos, u_h, q.lambda, dirichlet)).squaredNorm() +
                         (problem.curl_u(x) - curl_h).squaredNorm());
    }
    err += acc * g.volume;
  }
  return std::sqrt(err) / problem.norm_hcurl;
}

std::vector<ExperimentRow> run_adaptive(const ProblemPreset& problem, const ExperimentOptions& opts,
                                        const std::function<void(const ExperimentRow&)>& on_row) {
  require(opts.theta > 0.0 && opts.theta <= 1.0, ErrorKind::Configuration, "theta must lie in (0, 1]");
  require(opts.reduction > 0.0 && opts.reduction < 1.0, ErrorKind::Configuration,
          "reduction must lie in (0, 1)");
  require(opts.initial_refinements >= 0, ErrorKind::Configuration, "initial refinements must be >= 0");
  Mesh mesh = problem.build();
  for (int i = 0; i < opts.initial_refinements; ++i) {
    if (mesh.num_leaves() * 2 > opts.max_elements) break;
    mesh.refine_uniform(1);
  }
  MgOptions mgo;
  mgo.pre_smoothing = opts.pre_smoothing;
  mgo.post_smoothing = opts.post_smoothing;
  mgo.nodal_smoothing = opts.nodal_smoothing;
  SolveOptions so;
  so.reduction = opts.reduction;
  so.max_iterations = opts.max_iterations;
  so.mode = opts.mode;

  std::vector<ExperimentRow> rows;
  for (int stage = 0;; ++stage) {
    const DofMap dm(mesh, mesh.leaves());
    const Vector lift = potential_difference_dirichlet(dm, problem.potential);
    const AssembledSystem sys = assemble(dm, problem.f, &lift);
    const MgHierarchy mg(dm, sys.a, mgo);
    Vector x;
    const SolveReport rep = solve(mg, sys.b, x, so);

    ExperimentRow row;
    row.n_it = stage;
    row.n_el = dm.elements().size();
    row.n_dofs = dm.num_edges();
    row.mg_iters = rep.iterations;
    row.work_units = rep.work_units;
    row.levels = mg.finest_level();
    row.converged = rep.converged;
    if (!rep.converged) {
      const Eigen::SparseMatrix<double> a(sys.a.matrix);
      const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> direct(a);
      require(direct.info() == Eigen::Success, ErrorKind::Setup, "direct fallback failed");
      x = direct.solve(sys.b);
    }
    if (opts.contraction_iterations > 0) {
      row.contraction = estimate_contraction(mg, opts.contraction_iterations, opts.seed);
    }
    row.e_rel = relative_error(dm, x, &lift, problem);
    const EstimatorReport est = estimate(dm, x, &lift, problem.f, problem.div_f);
    row.eta_h = est.eta_h;
    row.eta_max = est.eta_max;
    rows.push_back(row);
    if (on_row) on_row(row);

    if (opts.max_stages > 0 && stage + 1 >= opts.max_stages) break;
    if (mesh.num_leaves() >= opts.max_elements) break;
    const auto marked = mark(est, opts.theta);
    if (marked.empty()) break;
    Mesh next = mesh;
    next.refine(marked);
    if (next.num_leaves() > opts.max_elements) break;
    mesh = std::move(next);
  }
  return rows;
}

void write_experiment_csv_header(std::ostream& out, std::uint64_t seed) {
  out << "# seed=" << seed << "\n";
  out << "n_it,n_el,n_dofs,e_rel,eta_h,mg_iters,contraction,work_units\n";
}

void write_experiment_csv_row(std::ostream& out, const ExperimentRow& r) {
  out << fmt::format("{},{},{},{:.6e},{:.6e},{},{:.6f},{}\n", r.n_it, r.n_el, r.n_dofs, r.e_rel, r.eta_h,
                     r.mg_iters, r.contraction, r.work_units);
}

}  // namespace hcurlmg
