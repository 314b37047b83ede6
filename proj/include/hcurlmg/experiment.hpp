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
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hcurlmg/multigrid.hpp"
#include "hcurlmg/problems.hpp"

namespace hcurlmg {

// ||u - u_h||_{H(curl)} / ||u||_{H(curl)} with the 14-point rule on every
// element; the denominator is the closed-form norm of the preset.
double relative_error(const DofMap& dm, const Vector& u_h, const Vector* dirichlet,
                      const ProblemPreset& problem);

struct ExperimentOptions {
  double theta = 0.5;
  double reduction = 1e-8;
  std::size_t max_elements = 100000;
  int pre_smoothing = 0;
  int post_smoothing = 1;
  bool nodal_smoothing = true;
  SolveMode mode = SolveMode::Iteration;
  int max_iterations = 200;
  std::uint64_t seed = 42;
  // Uniform refinements of the initial mesh before the adaptive loop.
  int initial_refinements = 2;
  // Power iterations for the contraction estimate; 0 skips it.
  int contraction_iterations = 12;
  // Hard cap on adaptive stages; 0 means no cap.
  int max_stages = 0;
};

struct ExperimentRow {
  int n_it = 0;
  std::size_t n_el = 0;
  std::size_t n_dofs = 0;
  double e_rel = 0.0;
  double eta_h = 0.0;
  double eta_max = 0.0;
  int mg_iters = 0;
  double contraction = 0.0;
  std::size_t work_units = 0;
  int levels = 0;
  // False when the multigrid solve missed the target and the stage fell
  // back to a direct solve.
  bool converged = true;
};

// Adaptive loop: assemble, solve, estimate, record, mark, refine. Stops when
// refinement would exceed the element budget, when nothing is marked or at
// max_stages. Rows are handed to on_row as they are produced.
std::vector<ExperimentRow> run_adaptive(const ProblemPreset& problem, const ExperimentOptions& opts,
                                        const std::function<void(const ExperimentRow&)>& on_row = {});

// Header comment with the seed, then n_it,n_el,n_dofs,e_rel,eta_h,mg_iters,contraction,work_units.
void write_experiment_csv_header(std::ostream& out, std::uint64_t seed);
void write_experiment_csv_row(std::ostream& out, const ExperimentRow& row);

}  // namespace hcurlmg
