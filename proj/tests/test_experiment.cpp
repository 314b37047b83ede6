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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "hcurlmg/error.hpp"
#include "hcurlmg/experiment.hpp"
#include "hcurlmg/problems.hpp"
#include "oracles.hpp"

using namespace hcurlmg;

namespace {

// log-log interpolation of e_rel at n elements
double e_rel_at(const std::vector<ExperimentRow>& rows, double n) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n0 = double(rows[i - 1].n_el), n1 = double(rows[i].n_el);
    if (n < n0 || n > n1) continue;
    const double t = std::log(n / n0) / std::log(n1 / n0);
    return std::exp((1.0 - t) * std::log(rows[i - 1].e_rel) + t * std::log(rows[i].e_rel));
  }
  return NAN;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::string csv_of(const ProblemPreset& p, const ExperimentOptions& o) {
  std::ostringstream out;
  write_experiment_csv_header(out, o.seed);
  run_adaptive(p, o, [&](const ExperimentRow& r) { write_experiment_csv_row(out, r); });
  return out.str();
}

}  // namespace

TEST_CASE("budget below the initial mesh gives a single row") {
  ExperimentOptions o;
  o.max_elements = 10;
  const auto rows = run_adaptive(lshape_problem(), o);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_it == 0);
  CHECK(rows[0].n_el == lshape_problem().build().num_leaves());
}

TEST_CASE("adaptive L-shape run") {
  ExperimentOptions o;
  o.max_elements = 10000;
  int streamed = 0;
  const auto rows = run_adaptive(lshape_problem(), o, [&](const ExperimentRow&) { ++streamed; });
  REQUIRE(rows.size() >= 8);
  CHECK(streamed == static_cast<int>(rows.size()));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].n_el > rows[i - 1].n_el);
    CHECK(rows[i].e_rel < rows[i - 1].e_rel);
    CHECK(rows[i].levels >= rows[i - 1].levels);
  }
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK(r.mg_iters >= 8);
    CHECK(r.mg_iters <= 45);
    CHECK(r.contraction < 1.0);
    CHECK(r.work_units <= 8 * r.n_dofs);
    CHECK(r.n_el <= o.max_elements);
  }

  SUBCASE("relative errors follow the published table") {
    for (const auto& col : oracle::kLshapeTable) {
      const double ours = e_rel_at(rows, col.n_el);
      if (std::isnan(ours)) continue;
      CAPTURE(col.n_el);
      CHECK(ours / col.e_rel >= 0.7);
      CHECK(ours / col.e_rel <= 1.1);
    }
  }
  SUBCASE("iteration counts against the published plateau") {
    const int last = rows.back().mg_iters;
    MESSAGE("final stage iterations " << last << ", published plateau " << oracle::kLshapePlateau);
    CHECK(last <= 45);
    CHECK(last >= oracle::kLshapePlateau / 2);
  }
  SUBCASE("estimator tracks the error") {
    std::vector<double> le, lt;
    for (std::size_t i = rows.size() / 2; i < rows.size(); ++i) {
      le.push_back(std::log(rows[i].e_rel));
      lt.push_back(std::log(rows[i].eta_h));
    }
    const double s = slope(le, lt);
    CHECK(s >= 0.5);
    CHECK(s <= 2.0);
  }
}

TEST_CASE("adaptive crack run") {
  ExperimentOptions o;
  o.max_elements = 13000;
  const auto rows = run_adaptive(crack_problem(), o);
  REQUIRE(rows.size() >= 8);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].e_rel < rows[i - 1].e_rel);
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK(r.mg_iters <= 55);
    CHECK(r.contraction < 1.0);
  }
  for (const auto& col : oracle::kCrackTable) {
    const double ours = e_rel_at(rows, col.n_el);
    if (std::isnan(ours)) continue;
    CAPTURE(col.n_el);
    CHECK(ours / col.e_rel >= 0.7);
    CHECK(ours / col.e_rel <= 1.1);
  }
  MESSAGE("final stage iterations " << rows.back().mg_iters << ", published plateau " << oracle::kCrackPlateau);
}

TEST_CASE("csv output is exact and reproducible") {
  ExperimentOptions o;
  o.max_elements = 1500;
  o.seed = 7;
  const std::string a = csv_of(lshape_problem(), o);
  const std::string b = csv_of(lshape_problem(), o);
  CHECK(a == b);
  std::istringstream in(a);
  std::string seed_line, header;
  std::getline(in, seed_line);
  std::getline(in, header);
  CHECK(seed_line == "# seed=7");
  CHECK(header == "n_it,n_el,n_dofs,e_rel,eta_h,mg_iters,contraction,work_units");
}

TEST_CASE("contraction estimates barely depend on the seed") {
  ExperimentOptions o;
  o.max_elements = 2000;
  o.seed = 1;
  const auto r1 = run_adaptive(lshape_problem(), o);
  o.seed = 2;
  const auto r2 = run_adaptive(lshape_problem(), o);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].mg_iters == r2[i].mg_iters);
    CHECK(std::abs(r1[i].contraction - r2[i].contraction) <= 0.05);
  }
}

// With an exact coarse solve the symmetric cycle is E E*, so its energy
// contraction is the square of that of the plain cycle.
TEST_CASE("pcg mode and pre-smoothing") {
  ExperimentOptions o;
  o.max_elements = 3000;
  o.contraction_iterations = 40;
  const auto base = run_adaptive(lshape_problem(), o);
  o.mode = SolveMode::Pcg;
  const auto pcg = run_adaptive(lshape_problem(), o);
  o.mode = SolveMode::Iteration;
  o.pre_smoothing = 1;
  o.contraction_iterations = 40;
  const auto sym = run_adaptive(lshape_problem(), o);
  REQUIRE(base.size() == pcg.size());
  REQUIRE(base.size() == sym.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(pcg[i].converged);
    CHECK(pcg[i].mg_iters <= base[i].mg_iters);
    CHECK(sym[i].converged);
    CHECK(sym[i].contraction == doctest::Approx(base[i].contraction * base[i].contraction).epsilon(0.02));
    CHECK(pcg[i].e_rel == doctest::Approx(base[i].e_rel).epsilon(1e-6));
  }
}

TEST_CASE("non-converged stages fall back to a direct solve") {
  ExperimentOptions o;
  o.max_elements = 1500;
  const auto ref = run_adaptive(lshape_problem(), o);
  o.max_iterations = 2;
  const auto capped = run_adaptive(lshape_problem(), o);
  REQUIRE(capped.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CHECK_FALSE(capped[i].converged);
    CHECK(capped[i].e_rel == doctest::Approx(ref[i].e_rel).epsilon(1e-6));
  }
}

TEST_CASE("invalid options are configuration errors") {
  ExperimentOptions o;
  o.theta = 0.0;
  try {
    run_adaptive(lshape_problem(), o);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
  o.theta = 0.5;
  o.reduction = 1.5;
  CHECK_THROWS_AS(run_adaptive(lshape_problem(), o), Error);
}
