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

// hcurlmg command line: adaptive solves, verification suites, mesh summaries.
// Exit codes: 0 success, 2 verification failure, 3 configuration error,
// 1 any other failure.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcurlmg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitVerify = 2;
constexpr int kExitConfig = 3;

const std::vector<std::string> kSuites{"cdp",      "prolongation", "kernel",   "scs",
                                       "coloring", "contraction",  "estimator"};

int report_error(hcurlmg_status st) {
  std::fprintf(stderr, "error: %s\n", hcurlmg_last_error());
  return st == HCURLMG_ERR_CONFIG ? kExitConfig : kExitFailure;
}

struct SolveArgs {
  std::string problem = "lshape";
  double theta = 0.5;
  double reduction = 1e-8;
  std::uint64_t max_elems = 100000;
  int pre = 0;
  int post = 1;
  std::string mode = "iteration";
  std::string out = "report.csv";
  std::uint64_t seed = 42;
  int initial_refinements = 2;
  int contraction_iters = 12;
  int max_stages = 0;
  bool edges_only = false;
  bool quiet = false;
};

void print_row(const hcurlmg_row* r, void* user) {
  if (*static_cast<bool*>(user)) return;
  std::printf("%4d %9llu %9llu %3d  %.4e  %.4e  %4d%s  %.4f  %llu\n", r->n_it,
              static_cast<unsigned long long>(r->n_el), static_cast<unsigned long long>(r->n_dofs), r->levels,
              r->e_rel, r->eta_h, r->mg_iters, r->converged ? " " : "*", r->contraction,
              static_cast<unsigned long long>(r->work_units));
  std::fflush(stdout);
}

int run_solve(const SolveArgs& a) {
  hcurlmg_run_options o;
  hcurlmg_run_options_default(&o);
  o.theta = a.theta;
  o.reduction = a.reduction;
  o.max_elements = a.max_elems;
  o.pre_smoothing = a.pre;
  o.post_smoothing = a.post;
  o.mode = a.mode == "pcg" ? HCURLMG_MODE_PCG : HCURLMG_MODE_ITERATION;
  o.seed = a.seed;
  o.initial_refinements = a.initial_refinements;
  o.contraction_iterations = a.contraction_iters;
  o.max_stages = a.max_stages;
  o.nodal_smoothing = a.edges_only ? 0 : 1;
  if (!a.quiet) std::printf("n_it      n_el    n_dofs   L  e_rel       eta_h       iters  contr.  work\n");
  bool quiet = a.quiet;
  hcurlmg_report* report = nullptr;
  const hcurlmg_status st =
      hcurlmg_run_adaptive(a.problem.c_str(), &o, a.out.empty() ? nullptr : a.out.c_str(), print_row, &quiet, &report);
  if (st != HCURLMG_OK) return report_error(st);
  std::size_t missed = 0;
  for (std::size_t i = 0; i < hcurlmg_report_size(report); ++i) {
    hcurlmg_row r;
    hcurlmg_report_row(report, i, &r);
    if (!r.converged) ++missed;
  }
  hcurlmg_report_free(report);
  if (missed > 0 && !a.quiet) {
    std::printf("* %zu stage(s) missed the reduction target and used a direct solve\n", missed);
  }
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& problem, int levels) {
  const std::vector<std::string> suites = suite == "all" ? kSuites : std::vector<std::string>{suite};
  bool all_passed = true;
  for (const auto& name : suites) {
    hcurlmg_verify_result* res = nullptr;
    const hcurlmg_status st = hcurlmg_verify(name.c_str(), seed, problem.c_str(), levels, &res);
    if (st != HCURLMG_OK) return report_error(st);
    const bool passed = hcurlmg_verify_passed(res) != 0;
    std::printf("[%s] %s\n", passed ? "PASS" : "FAIL", name.c_str());
    for (std::size_t i = 0; i < hcurlmg_verify_size(res); ++i) {
      hcurlmg_check c;
      hcurlmg_verify_check(res, i, &c);
      std::printf("  %-4s %-62s %.3e <= %.3e\n", c.passed ? "ok" : "FAIL", c.name, c.value, c.limit);
    }
    hcurlmg_verify_free(res);
    all_passed = all_passed && passed;
  }
  return all_passed ? kExitOk : kExitVerify;
}

int run_mesh_info(const std::string& problem, const std::string& path, int refine, const std::string& write) {
  hcurlmg_mesh* mesh = nullptr;
  hcurlmg_status st = path.empty() ? hcurlmg_mesh_preset(problem.c_str(), &mesh) : hcurlmg_mesh_read(path.c_str(), &mesh);
  if (st != HCURLMG_OK) return report_error(st);
  st = hcurlmg_mesh_refine_uniform(mesh, refine);
  hcurlmg_mesh_info info;
  if (st == HCURLMG_OK) st = hcurlmg_mesh_get_info(mesh, &info);
  if (st == HCURLMG_OK && !write.empty()) st = hcurlmg_mesh_write(mesh, write.c_str());
  hcurlmg_mesh_free(mesh);
  if (st != HCURLMG_OK) return report_error(st);
  std::printf("vertices        %llu\n", static_cast<unsigned long long>(info.num_vertices));
  std::printf("leaves          %llu\n", static_cast<unsigned long long>(info.num_leaves));
  std::printf("forest tets     %llu\n", static_cast<unsigned long long>(info.num_tets));
  std::printf("max level       %d\n", info.max_level);
  std::printf("volume          %.15g (initial %.15g)\n", info.volume, info.initial_volume);
  std::printf("shape ratio     %.6g\n", info.max_shape_ratio);
  std::printf("width           [%.6g, %.6g]\n", info.min_width, info.max_width);
  std::printf("conforming      %s\n", info.conforming ? "yes" : "no");
  std::printf("face levels     %s\n", info.face_levels_ok ? "ok" : "violated");
  return info.conforming && info.face_levels_ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive edge element solver with local multigrid"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Adaptive loop on a problem preset; writes the CSV report");
  solve->add_option("--problem", sa.problem, "Problem preset")->check(CLI::IsMember({"lshape", "crack"}))->capture_default_str();
  solve->add_option("--theta", sa.theta, "Maximum-strategy marking parameter")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  solve->add_option("--mg-reduction", sa.reduction, "Residual reduction target")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  solve->add_option("--max-elems", sa.max_elems, "Element budget")->capture_default_str();
  solve->add_option("--pre", sa.pre, "Pre-smoothing sweeps")->check(CLI::NonNegativeNumber)->capture_default_str();
  solve->add_option("--post", sa.post, "Post-smoothing sweeps")->check(CLI::NonNegativeNumber)->capture_default_str();
  solve->add_option("--mode", sa.mode, "Outer iteration")->check(CLI::IsMember({"iteration", "pcg"}))->capture_default_str();
  solve->add_option("--out", sa.out, "CSV report path (empty: none)")->capture_default_str();
  solve->add_option("--seed", sa.seed, "Seed of the contraction estimate")->capture_default_str();
  solve->add_option("--initial-refinements", sa.initial_refinements, "Uniform refinements before the loop")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve->add_option("--contraction-iters", sa.contraction_iters, "Power iterations per stage (0: skip)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve->add_option("--max-stages", sa.max_stages, "Stage cap (0: none)")->check(CLI::NonNegativeNumber)->capture_default_str();
  solve->add_flag("--edges-only", sa.edges_only, "Disable the nodal part of the hybrid smoother");
  solve->add_flag("--quiet", sa.quiet, "No console table");

  std::string suite;
  std::uint64_t vseed = 42;
  std::string vproblem = "lshape";
  int levels = 5;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::vector<std::string> names = kSuites;
  names.push_back("all");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(names));
  verify->add_option("--seed", vseed, "Random seed")->capture_default_str();
  verify->add_option("--problem", vproblem, "Problem preset")->check(CLI::IsMember({"lshape", "crack"}))->capture_default_str();
  verify->add_option("--levels", levels, "Refinement levels")->check(CLI::PositiveNumber)->capture_default_str();

  std::string mproblem = "lshape", mpath, mwrite;
  int mrefine = 0;
  auto* info = app.add_subcommand("mesh-info", "Summary of a preset or mesh file");
  info->add_option("--problem", mproblem, "Problem preset")->check(CLI::IsMember({"lshape", "crack"}))->capture_default_str();
  info->add_option("--mesh", mpath, "Mesh file (overrides --problem)");
  info->add_option("--refine", mrefine, "Uniform refinements")->check(CLI::NonNegativeNumber)->capture_default_str();
  info->add_option("--write", mwrite, "Write the refined mesh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (*solve) return run_solve(sa);
  if (*verify) return run_verify(suite, vseed, vproblem, levels);
  if (*info) return run_mesh_info(mproblem, mpath, mrefine, mwrite);
  return kExitConfig;
}
