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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hcurlmg/space.hpp"
#include "hcurlmg/sparse.hpp"

namespace hcurlmg {

// Transfer from a coarse to a nested fine element set. Entry (e, E) of the
// edge map is the moment of the coarse basis function b_E along the fine
// edge e; the nodal map evaluates coarse hat functions at fine vertices.
struct Prolongation {
  SparseOperator edges;
  SparseOperator nodes;
};
Prolongation build_prolongation(const DofMap& coarse, const DofMap& fine);

struct MgOptions {
  int pre_smoothing = 0;
  int post_smoothing = 1;
  // Relaxation on gradients of new nodal basis functions (hybrid smoother).
  bool nodal_smoothing = true;
};

// Local multigrid for the edge element system on the leaf mesh. Level l
// relaxes only the basis functions of the virtual mesh T_l supported in the
// refinement zone omega_l, first along gradients of new hat functions, then
// along new edge functions; level 0 is solved exactly.
//
// Level operators are assembled directly on the forest elements of level l,
// which equals the Galerkin product since the bilinear form is integrated
// exactly. All level vectors share one array indexed by "slots": every
// non-Dirichlet edge of the forest owns one slot, and transfers only touch
// the slots of edges created or removed between consecutive levels. The
// cost of a cycle is therefore proportional to the forest size.
class MgHierarchy {
 public:
  MgHierarchy(const DofMap& fine, const SparseOperator& a, MgOptions options = {});

  int finest_level() const { return static_cast<int>(levels_.size()) - 1; }
  const MgOptions& options() const { return options_; }
  const SparseOperator& fine_operator() const { return *a_; }
  const DofMap& fine_dofs() const { return *fine_; }
  std::size_t size() const { return fine_->num_edges(); }

  // x <- x + B (b - A x) for one V-cycle with the configured smoothing.
  void cycle(Vector& x, const Vector& b) const {
    cycle(x, b, options_.pre_smoothing, options_.post_smoothing);
  }
  // Pre-smoothing sweeps run in reverse order, post-smoothing sweeps in
  // forward order, so cycle(pre=k, post=m) is the energy adjoint of
  // cycle(pre=m, post=k).
  void cycle(Vector& x, const Vector& b, int pre, int post) const;

  // Smoothed dofs per cycle: sum over levels of relaxed edges and vertices
  // (times the number of sweeps) plus the coarse dimension.
  std::size_t work_units(int pre, int post) const;
  std::size_t work_units() const {
    return work_units(options_.pre_smoothing, options_.post_smoothing);
  }

  // B^l_U (edge keys, ascending) and B^l_V (vertex ids, ascending); level 0
  // lists every active dof of T_0.
  const std::vector<EdgeKey>& level_edges(int l) const { return levels_[l].edge_keys; }
  const std::vector<VertexId>& level_vertices(int l) const { return levels_[l].nodes; }
  // Forest elements of level l (T_0 for l = 0).
  const std::vector<TetId>& level_elements(int l) const { return levels_[l].elements; }

  // Fine-space coefficients of sum_i c_i b_i over the level basis functions
  // B^l_U, and of sum_p c_p grad(b_p) over B^l_V.
  Vector lift_edges(int l, const Vector& coeffs) const;
  Vector lift_gradients(int l, const Vector& coeffs) const;

 private:
  struct Csr {
    std::vector<int> ptr{0};
    std::vector<int> col;
    std::vector<double> val;
    int rows() const { return static_cast<int>(ptr.size()) - 1; }
  };
  struct Level {
    std::vector<TetId> elements;
    std::vector<EdgeKey> edge_keys;  // B^l_U
    std::vector<int> edge_slots;
    Csr a;                           // rows of A_l for B^l_U, columns are slots
    std::vector<double> a_diag;
    std::vector<VertexId> nodes;     // B^l_V
    Csr lap;                         // P1 Laplacian on B^l_V, columns are node rows
    std::vector<double> lap_diag;
    Csr incidence;                   // node row -> (edge row, +-1)
    std::vector<int> bisected;       // slots of T_{l-1} edges split on the way to T_l
    std::vector<int> new_slots;      // slots created on the way to T_l
    Csr transfer;                    // new slot row -> (coarse slot, weight)
  };

  const DofMap* fine_;
  const SparseOperator* a_;
  MgOptions options_;
  std::vector<Level> levels_;
  std::vector<int> fine_slot_;
  int num_slots_ = 0;
  std::vector<int> coarse_slots_;
  Eigen::LDLT<Eigen::MatrixXd> coarse_;

  void smooth(const Level& lv, const std::vector<double>& rhs, std::vector<double>& e,
              bool forward, std::vector<double>& work) const;
  void restrict_to(const Level& lv, std::vector<double>& r) const;
  void prolongate_to(const Level& lv, std::vector<double>& e) const;
  Vector slots_to_fine(const std::vector<double>& e) const;
};

// One sweep of successive subspace correction: exact solve on T_0, then
// per level l = 1..L gradients of B^l_V followed by the edge functions of
// B^l_U. Same as mg.cycle(x, b) with the configured smoothing.
inline void ssc_step(const MgHierarchy& mg, Vector& x, const Vector& b) { mg.cycle(x, b); }

enum class SolveMode { Iteration, Pcg };

struct SolveOptions {
  double reduction = 1e-8;
  int max_iterations = 200;
  SolveMode mode = SolveMode::Iteration;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals;   // Euclidean norms, residuals[0] = ||b||
  std::vector<double> contraction; // residuals[k+1] / residuals[k]
  std::vector<std::size_t> level_work;  // relaxed dofs per level for one cycle
  std::size_t work_units = 0;
  bool negative_curvature = false; // pcg only
};

// Starts from x = 0. Non-convergence is reported, not thrown.
SolveReport solve(const MgHierarchy& mg, const Vector& b, Vector& x, const SolveOptions& opts = {});

// Power iteration on E*E (E the error propagator of one cycle, E* its
// energy adjoint) from a seeded random start; returns the estimate of
// ||E||_A after `iterations` steps.
double estimate_contraction(const MgHierarchy& mg, int iterations, std::uint64_t seed);

// CSV rows "level,n_elements,n_dofs,iters,contraction_estimate,work_units".
struct SolveSummaryRow {
  int level;
  std::size_t n_elements;
  std::size_t n_dofs;
  int iterations;
  double contraction_estimate;
  std::size_t work_units;
};
void write_solve_summary_csv(std::span<const SolveSummaryRow> rows, std::ostream& out);

}  // namespace hcurlmg
