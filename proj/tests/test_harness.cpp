// SPDX-License-Identifier: Apache-2.0
#include "edgefem/experiment.hpp"
#include "edgefem/io.hpp"
#include "edgefem/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace edgefem;

namespace {

constexpr double pi = std::numbers::pi;

Vec3 fd_curl(const PhysicalField& u, const Vec3& x, int dim, double h) {
  Mat3 J;
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e[a] = h;
    J.col(a) = (u(x + e) - u(x - e)) / (2 * h);
  }
  if (dim == 2) return Vec3(0, 0, J(1, 0) - J(0, 1));
  return Vec3(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
}

// curl curl u + u from the value alone, by nested central differences.
Vec3 strong_form(const PhysicalField& u, const Vec3& x, int dim) {
  const double h = 1e-4;
  const PhysicalField c = [&](const Vec3& y) { return fd_curl(u, y, dim, h); };
  if (dim == 2) {
    // curl of the scalar c: (d_y c, -d_x c)
    const double dy = (c(x + Vec3(0, h, 0))[2] - c(x - Vec3(0, h, 0))[2]) / (2 * h);
    const double dx = (c(x + Vec3(h, 0, 0))[2] - c(x - Vec3(h, 0, 0))[2]) / (2 * h);
    return Vec3(dy, -dx, 0) + u(x);
  }
  return fd_curl(c, x, 3, h) + u(x);
}

std::vector<ConvergenceRecord> synthetic(const std::vector<std::pair<int, double>>& points) {
  std::vector<ConvergenceRecord> out;
  for (const auto& [n, e] : points) {
    ConvergenceRecord r;
    r.step = static_cast<int>(out.size());
    r.n_dofs = n;
    r.h = 1.0 / std::sqrt(static_cast<double>(n));
    r.l2_error = r.hcurl_error = e;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("manufactured fields at the origin") {
  CHECK(manufactured_2d().value(Vec3::Zero()).isApprox(Vec3(1, 0, 0)));
  CHECK(manufactured_3d().value(Vec3::Zero()).isApprox(Vec3(1, 0, 1)));
}

TEST_CASE("manufactured sources satisfy the strong form") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int dim : {2, 3}) {
    const AnalyticField f = dim == 2 ? manufactured_2d() : manufactured_3d();
    const PhysicalField src = dim == 2 ? manufactured_2d_source() : manufactured_3d_source();
    for (int i = 0; i < 10; ++i) {
      const Vec3 x(u(rng), u(rng), dim == 3 ? u(rng) : 0.0);
      CHECK((strong_form(f.value, x, dim) - src(x)).norm() < 1e-4);
    }
  }
  CHECK(manufactured_2d_source()(Vec3(0.3, 0.1, 0)).isApprox((2 * pi * pi + 1) * manufactured_2d().value(Vec3(0.3, 0.1, 0))));
}

TEST_CASE("supplied curls match finite differences") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const struct { AnalyticField f; int dim; } cases[] = {
      {manufactured_2d(), 2}, {manufactured_3d(), 3}, {lshaped_field(1), 2}, {lshaped_field(4), 2},
      {fichera_field(), 3}};
  for (const auto& c : cases)
    for (int i = 0; i < 20; ++i) {
      Vec3 x(u(rng), u(rng), c.dim == 3 ? u(rng) : 0.0);
      if (c.dim == 2 && x[0] > 0 && x[1] < 0) x[1] = -x[1];
      if (c.dim == 3 && x[0] < 0 && x[1] < 0 && x[2] < 0) x[2] = -x[2];
      if (x.norm() < 0.05) continue;
      CHECK((fd_curl(c.f.value, x, c.dim, 1e-6) - c.f.curl(x)).norm() < 1e-5 * std::max(1.0, c.f.value(x).norm()));
    }
}

TEST_CASE("L-shaped singularity") {
  const AnalyticField f = lshaped_field(1);
  for (double r = 1e-1; r > 1e-9; r /= 10) {
    const Vec3 x = r * Vec3(std::cos(0.75 * pi), std::sin(0.75 * pi), 0);
    CHECK(std::cbrt(r) * f.value(x).norm() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  // The angle branch is continuous across the negative x axis.
  CHECK((f.value(Vec3(-0.5, 1e-12, 0)) - f.value(Vec3(-0.5, -1e-12, 0))).norm() < 1e-9);
  // The potential r^(2/3) sin(2 theta / 3) vanishes on both edges at the
  // re-entrant corner, so the field is normal there.
  CHECK(std::abs(f.value(Vec3(0.5, 0, 0))[0]) < 1e-14);
  CHECK(std::abs(f.value(Vec3(0, -0.5, 0))[1]) < 1e-14);
  CHECK_THROWS_AS(lshaped_field(0), std::invalid_argument);
}

TEST_CASE("problem domains") {
  const Problem l = make_problem("lshaped");
  CHECK(domain_mesh(l.domain, 0).num_cells() == 48u);
  CHECK(domain_mesh(l.domain, 1).num_cells() == 192u);
  const Problem fi = make_problem("fichera");
  CHECK(domain_mesh(fi.domain, 0).num_cells() == 56u);
  CHECK(domain_mesh(make_problem("unit3d").domain, 1).num_cells() == 64u);
  CHECK(domain_mesh(make_problem("unit2d", 1, 3).domain, 0).num_cells() == 9u);
  CHECK_THROWS_AS(make_problem("lshaped", 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_problem("torus"), std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.adaptive = true;
  c.family = Family::simplex;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.family = Family::cube;
  c.mark_fraction = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.mark_fraction = 1.0;
  CHECK_NOTHROW(c.validate());
  c.order = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(parse_solver("direct") == SolverKind::direct);
  CHECK(solver_name(parse_solver("auto")) == "auto");
  CHECK_THROWS_AS(parse_solver("gmres"), std::invalid_argument);
}

TEST_CASE("uniform run on the unit square") {
  ExperimentConfig c;
  c.order = 1;
  c.steps = 4;
  const auto rec = run_experiment(c);
  REQUIRE(rec.size() == 4u);
  for (std::size_t i = 1; i < rec.size(); ++i) {
    CHECK(rec[i].n_dofs > rec[i - 1].n_dofs);
    CHECK(rec[i].h == doctest::Approx(rec[i - 1].h / 2));
  }
  const Slopes s = compute_slopes(rec, false, 2);
  CHECK(std::abs(s.l2_last - 1.0) < 0.15);
  CHECK(std::abs(s.hcurl_last - 1.0) < 0.15);
  // Same configuration, same numbers.
  const auto again = run_experiment(c);
  std::ostringstream a, b;
  write_csv(a, rec);
  write_csv(b, again);
  CHECK(a.str() == b.str());
}

TEST_CASE("adaptive runs refine a few cells per step") {
  ExperimentConfig c;
  c.problem = "lshaped";
  c.order = 1;
  c.steps = 4;
  c.adaptive = true;
  int meshes = 0;
  const auto rec = run_experiment(c, {}, [&](int step, const Mesh& m, const std::vector<double>& err) {
    CHECK(err.size() == m.num_cells());
    CHECK(static_cast<int>(m.levels().size()) == static_cast<int>(m.num_cells()));
    meshes = step + 1;
  });
  CHECK(meshes == 4);
  for (std::size_t i = 1; i < rec.size(); ++i) {
    CHECK(rec[i].n_dofs > rec[i - 1].n_dofs);
    CHECK(rec[i].n_cells < 2 * rec[i - 1].n_cells);
  }
  const auto again = run_experiment(c);
  REQUIRE(again.size() == rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) CHECK(again[i].hcurl_error == rec[i].hcurl_error);
}

TEST_CASE("solver failure keeps completed steps") {
  ExperimentConfig c;
  c.family = Family::simplex;
  c.order = 3;
  c.steps = 3;
  c.solver = SolverKind::cg;
  c.max_iterations = 3000;
  try {
    run_experiment(c);
    FAIL("expected a solver failure");
  } catch (const ExperimentFailure& e) {
    CHECK(e.records.size() >= 1u);
    CHECK(e.records.size() < 3u);
  }
}

TEST_CASE("slopes and curve comparison") {
  CHECK(fit_slope({0, 1, 2}, {1, 3, 5}) == doctest::Approx(2.0));
  const auto curve = synthetic({{100, 1.0}, {400, 0.5}, {1600, 0.25}});
  const Slopes s = compute_slopes(curve, false, 2);
  CHECK(s.l2_last == doctest::Approx(1.0));
  CHECK(s.hcurl_fit == doctest::Approx(1.0));
  const Slopes by_dofs = compute_slopes(curve, true, 2);
  CHECK(by_dofs.l2_fit == doctest::Approx(1.0));
  CHECK(loglog_interpolate(curve, 200, &ConvergenceRecord::l2_error) == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(std::isnan(loglog_interpolate(curve, 5000, &ConvergenceRecord::l2_error)));
  const auto better = synthetic({{150, 0.9}, {300, 0.3}, {1200, 0.2}, {9000, 0.1}});
  const auto bad = adaptive_violations(better, curve, 200, &ConvergenceRecord::hcurl_error);
  // 1200 lies below the curve, 9000 is past its end.
  CHECK(bad == std::vector<int>{3});
}

TEST_CASE("expected rates") {
  ExperimentConfig c;
  c.order = 2;
  CHECK(expected_slope(c) == 2.0);
  c.problem = "lshaped";
  CHECK(expected_slope(c) == doctest::Approx(2.0 / 3.0));
  c.lshaped_n = 4;
  c.order = 3;
  CHECK(expected_slope(c) == doctest::Approx(8.0 / 3.0));
  c.problem = "fichera";
  CHECK(expected_slope(c) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("text outputs") {
  std::ostringstream csv, slopes, plot, element;
  write_csv(csv, synthetic({{10, 0.1}}));
  CHECK(csv.str().rfind("step,h,n_dofs", 0) == 0);
  write_slopes(slopes, Slopes{1, 2, 3, 4});
  CHECK(slopes.str().find("hcurl_last_two 2") != std::string::npos);
  write_plot_script(plot, "adaptive.csv", true);
  CHECK(plot.str().find("'adaptive.csv' using 3:5") != std::string::npos);
  write_element_csv(element, *get_element(cube2, 1), 2);
  int lines = 0;
  for (char ch : element.str()) lines += ch == '\n';
  CHECK(lines == 1 + 4 * 4);
}

}
