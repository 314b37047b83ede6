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

#include "hcurlmg.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "hcurlmg/error.hpp"
#include "hcurlmg/experiment.hpp"
#include "hcurlmg/mesh.hpp"
#include "hcurlmg/verify.hpp"

struct hcurlmg_mesh {
  explicit hcurlmg_mesh(hcurlmg::Mesh m) : mesh(std::move(m)) {}
  hcurlmg::Mesh mesh;
};

struct hcurlmg_report {
  std::vector<hcurlmg_row> rows;
};

struct hcurlmg_verify_result {
  explicit hcurlmg_verify_result(hcurlmg::VerifyReport r) : report(std::move(r)) {}
  hcurlmg::VerifyReport report;
};

namespace {

thread_local std::string last_error;

hcurlmg_status status_of(hcurlmg::ErrorKind kind) {
  using hcurlmg::ErrorKind;
  switch (kind) {
    case ErrorKind::Precondition:
      return HCURLMG_ERR_ARGUMENT;
    case ErrorKind::Configuration:
      return HCURLMG_ERR_CONFIG;
    case ErrorKind::InvalidMesh:
    case ErrorKind::InvalidElement:
    case ErrorKind::ClosureDepth:
    case ErrorKind::Hierarchy:
      return HCURLMG_ERR_MESH;
    case ErrorKind::Evaluation:
    case ErrorKind::Setup:
      return HCURLMG_ERR_NUMERIC;
    case ErrorKind::Io:
      return HCURLMG_ERR_IO;
  }
  return HCURLMG_ERR_INTERNAL;
}

template <class F>
hcurlmg_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HCURLMG_OK;
  } catch (const hcurlmg::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return HCURLMG_ERR_INTERNAL;
}

hcurlmg_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return HCURLMG_ERR_ARGUMENT;
}

hcurlmg_row to_c(const hcurlmg::ExperimentRow& r) {
  hcurlmg_row c{};
  c.n_it = r.n_it;
  c.n_el = r.n_el;
  c.n_dofs = r.n_dofs;
  c.e_rel = r.e_rel;
  c.eta_h = r.eta_h;
  c.eta_max = r.eta_max;
  c.mg_iters = r.mg_iters;
  c.contraction = r.contraction;
  c.work_units = r.work_units;
  c.levels = r.levels;
  c.converged = r.converged ? 1 : 0;
  return c;
}

}  // namespace

extern "C" {

const char* hcurlmg_last_error(void) { return last_error.c_str(); }

const char* hcurlmg_version(void) { return "0.1.0"; }

hcurlmg_status hcurlmg_mesh_preset(const char* problem, hcurlmg_mesh** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] {
    const hcurlmg::ProblemPreset preset = hcurlmg::problem_by_name(problem);
    *out = new hcurlmg_mesh(preset.build());
  });
}

hcurlmg_status hcurlmg_mesh_read(const char* path, hcurlmg_mesh** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new hcurlmg_mesh(hcurlmg::read_mesh_file(path)); });
}

hcurlmg_status hcurlmg_mesh_write(const hcurlmg_mesh* mesh, const char* path) {
  if (!mesh) return null_argument("mesh");
  if (!path) return null_argument("path");
  return guarded([&] { hcurlmg::write_mesh_file(mesh->mesh, path); });
}

hcurlmg_status hcurlmg_mesh_refine_uniform(hcurlmg_mesh* mesh, int times) {
  if (!mesh) return null_argument("mesh");
  return guarded([&] {
    hcurlmg::require(times >= 0, hcurlmg::ErrorKind::Precondition, "refinement count must be >= 0");
    mesh->mesh.refine_uniform(times);
  });
}

hcurlmg_status hcurlmg_mesh_refine(hcurlmg_mesh* mesh, const int32_t* leaves, size_t count) {
  if (!mesh) return null_argument("mesh");
  if (!leaves && count > 0) return null_argument("leaves");
  return guarded([&] {
    std::vector<hcurlmg::TetId> marked(leaves, leaves + count);
    mesh->mesh.refine(marked);
  });
}

hcurlmg_status hcurlmg_mesh_get_info(const hcurlmg_mesh* mesh, hcurlmg_mesh_info* out) {
  if (!mesh) return null_argument("mesh");
  if (!out) return null_argument("out");
  return guarded([&] {
    const hcurlmg::Mesh& m = mesh->mesh;
    const auto leaves = m.leaves();
    hcurlmg_mesh_info info{};
    info.num_vertices = m.num_vertices();
    info.num_leaves = m.num_leaves();
    info.num_tets = m.num_tets();
    info.max_level = m.max_level();
    for (hcurlmg::TetId k : leaves) info.volume += m.geometry(k).volume;
    info.initial_volume = m.initial_volume();
    const hcurlmg::MeshQuality q = hcurlmg::mesh_quality(m);
    info.max_shape_ratio = q.max_ratio;
    if (!q.width.empty()) {
      info.min_width = *std::min_element(q.width.begin(), q.width.end());
      info.max_width = *std::max_element(q.width.begin(), q.width.end());
    }
    info.conforming = hcurlmg::check_conformity(m, leaves).ok ? 1 : 0;
    info.face_levels_ok = hcurlmg::check_face_levels(m).ok ? 1 : 0;
    *out = info;
  });
}

void hcurlmg_mesh_free(hcurlmg_mesh* mesh) { delete mesh; }

void hcurlmg_run_options_default(hcurlmg_run_options* opts) {
  if (!opts) return;
  const hcurlmg::ExperimentOptions d;
  opts->theta = d.theta;
  opts->reduction = d.reduction;
  opts->max_elements = d.max_elements;
  opts->pre_smoothing = d.pre_smoothing;
  opts->post_smoothing = d.post_smoothing;
  opts->nodal_smoothing = d.nodal_smoothing ? 1 : 0;
  opts->mode = HCURLMG_MODE_ITERATION;
  opts->max_iterations = d.max_iterations;
  opts->seed = d.seed;
  opts->initial_refinements = d.initial_refinements;
  opts->contraction_iterations = d.contraction_iterations;
  opts->max_stages = d.max_stages;
}

hcurlmg_status hcurlmg_run_adaptive(const char* problem, const hcurlmg_run_options* opts, const char* csv_path,
                                    hcurlmg_row_callback on_row, void* user, hcurlmg_report** out) {
  if (!problem) return null_argument("problem");
  if (!opts) return null_argument("opts");
  if (!out) return null_argument("out");
  return guarded([&] {
    using hcurlmg::ErrorKind;
    hcurlmg::require(opts->pre_smoothing >= 0 && opts->post_smoothing >= 0, ErrorKind::Configuration,
                     "smoothing counts must be >= 0");
    hcurlmg::require(opts->mode == HCURLMG_MODE_ITERATION || opts->mode == HCURLMG_MODE_PCG,
                     ErrorKind::Configuration, "unknown solve mode");
    hcurlmg::ExperimentOptions eo;
    eo.theta = opts->theta;
    eo.reduction = opts->reduction;
    eo.max_elements = opts->max_elements;
    eo.pre_smoothing = opts->pre_smoothing;
    eo.post_smoothing = opts->post_smoothing;
    eo.nodal_smoothing = opts->nodal_smoothing != 0;
    eo.mode = opts->mode == HCURLMG_MODE_PCG ? hcurlmg::SolveMode::Pcg : hcurlmg::SolveMode::Iteration;
    eo.max_iterations = opts->max_iterations;
    eo.seed = opts->seed;
    eo.initial_refinements = opts->initial_refinements;
    eo.contraction_iterations = opts->contraction_iterations;
    eo.max_stages = opts->max_stages;
    const hcurlmg::ProblemPreset preset = hcurlmg::problem_by_name(problem);

    std::ofstream csv;
    if (csv_path) {
      csv.open(csv_path);
      hcurlmg::require(csv.good(), ErrorKind::Io, (std::string("cannot open ") + csv_path).c_str());
      hcurlmg::write_experiment_csv_header(csv, eo.seed);
      csv.flush();
    }
    auto report = std::make_unique<hcurlmg_report>();
    hcurlmg::run_adaptive(preset, eo, [&](const hcurlmg::ExperimentRow& r) {
      const hcurlmg_row c = to_c(r);
      report->rows.push_back(c);
      if (csv_path) {
        hcurlmg::write_experiment_csv_row(csv, r);
        csv.flush();
      }
      if (on_row) on_row(&c, user);
    });
    if (csv_path) hcurlmg::require(csv.good(), ErrorKind::Io, (std::string("write failed: ") + csv_path).c_str());
    *out = report.release();
  });
}

size_t hcurlmg_report_size(const hcurlmg_report* report) { return report ? report->rows.size() : 0; }

hcurlmg_status hcurlmg_report_row(const hcurlmg_report* report, size_t index, hcurlmg_row* out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  if (index >= report->rows.size()) {
    last_error = "row index out of range";
    return HCURLMG_ERR_ARGUMENT;
  }
  *out = report->rows[index];
  return HCURLMG_OK;
}

void hcurlmg_report_free(hcurlmg_report* report) { delete report; }

hcurlmg_status hcurlmg_verify(const char* suite, uint64_t seed, const char* problem, int levels,
                              hcurlmg_verify_result** out) {
  if (!suite) return null_argument("suite");
  if (!out) return null_argument("out");
  return guarded([&] {
    hcurlmg::VerifyOptions vo;
    vo.seed = seed;
    if (problem) {
      vo.problem = problem;
      (void)hcurlmg::problem_by_name(vo.problem);
    }
    hcurlmg::require(levels >= 1, hcurlmg::ErrorKind::Configuration, "levels must be >= 1");
    vo.levels = levels;
    *out = new hcurlmg_verify_result(hcurlmg::run_verify(suite, vo));
  });
}

size_t hcurlmg_verify_size(const hcurlmg_verify_result* result) {
  return result ? result->report.checks.size() : 0;
}

hcurlmg_status hcurlmg_verify_check(const hcurlmg_verify_result* result, size_t index, hcurlmg_check* out) {
  if (!result) return null_argument("result");
  if (!out) return null_argument("out");
  if (index >= result->report.checks.size()) {
    last_error = "check index out of range";
    return HCURLMG_ERR_ARGUMENT;
  }
  const auto& c = result->report.checks[index];
  out->name = c.name.c_str();
  out->value = c.value;
  out->limit = c.limit;
  out->passed = c.passed ? 1 : 0;
  return HCURLMG_OK;
}

int hcurlmg_verify_passed(const hcurlmg_verify_result* result) {
  return result && result->report.passed() ? 1 : 0;
}

void hcurlmg_verify_free(hcurlmg_verify_result* result) { delete result; }

}  // extern "C"
