#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkp/constructions.hpp"
#include "hkp/dirichlet.hpp"
#include "hkp/error.hpp"

using namespace hkp;
using std::numbers::pi;

TEST_CASE("solve recovers a single mode") {
  auto u = solve(BoundaryFunction::sine(5));
  auto rep = coefficient_bound_check(u, 8, {0.5, 0.9, 0.99});
  CHECK(rep.all_pass);
  CHECK(!rep.vanishes);
  REQUIRE(rep.recovered.b.size() == 8);
  CHECK(rep.recovered.b[4] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(rep.recovered.a[4]) < 1e-8);
  CHECK(std::abs(rep.recovered.b[2]) < 1e-8);
  CHECK(rep.rows.size() == 9);
}

TEST_CASE("zero data vanishes") {
  auto rep = coefficient_bound_check(solve(BoundaryFunction::constant(0.0)), 3, {0.5, 0.99});
  CHECK(rep.vanishes);
  CHECK(rep.all_pass);
}

TEST_CASE("coefficient check rejects bad grids") {
  auto u = solve(BoundaryFunction::sine(1));
  CHECK_THROWS_AS(coefficient_bound_check(u, 3, {0.5, 0.9}), Error);
  CHECK_THROWS_AS(coefficient_bound_check(u, -1, {0.5, 0.99}), Error);
}

TEST_CASE("Laplacian residual of harmonic functions") {
  auto c = solve(BoundaryFunction::constant(2.0));
  CHECK(laplacian_residual(c, {{0.5, 0.3}, {0.8, -2.0}}, 0.05) <= 1e-9);

  // r^3 cos 3theta is harmonic; the five-point stencil error is second order
  auto h = HarmonicFunction::closed_form([](double r, double t) { return r * r * r * std::cos(3 * t); }, "r3cos3");
  std::vector<std::pair<double, double>> pts{{0.5, 0.1}, {0.8, 0.2}};
  double e1 = laplacian_residual(h, pts, 0.04);
  double e2 = laplacian_residual(h, pts, 0.02);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));

  // r^2 is not harmonic: Delta r^2 = 4
  auto q = HarmonicFunction::closed_form([](double r, double) { return r * r; }, "r2");
  CHECK(laplacian_residual(q, {{0.5, 0.0}}, 0.01) == doctest::Approx(4.0).epsilon(1e-6));

  CHECK_THROWS_AS(laplacian_residual(h, {{0.96, 0.0}}, 0.01), Error);
}

TEST_CASE("uniqueness diagnostics on the closed-form examples") {
  std::vector<double> theta;
  for (int i = 0; i < 8; ++i) theta.push_back(-pi + (i + 0.5) * 2 * pi / 8);
  auto grid = default_r_grid();

  auto b = example_b();
  auto rb = shapiro_check(b.u, b.f, theta, grid);
  CHECK(rb.conclusion == Conclusion::kConsistent);
  CHECK(rb.pass_rate == doctest::Approx(1.0));

  auto c = example_c();
  auto rc = shapiro_check(c.u, c.f, theta, grid);
  CHECK(rc.growth.verdict == Verdict::kDiverges);
  CHECK(rc.conclusion == Conclusion::kViolatesHypotheses);
  CHECK(to_string(rc.conclusion) == "violates-hypotheses");
}
