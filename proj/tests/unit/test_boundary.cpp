#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hkp/boundary.hpp"
#include "hkp/error.hpp"

using namespace hkp;
using std::numbers::pi;

TEST_CASE("indicator is right-continuous with limits at its jumps") {
  auto f = BoundaryFunction::indicator(-1.0, 1.0);
  CHECK(f(0.0) == 1.0);
  CHECK(f(-1.0) == 1.0);
  CHECK(f(1.0) == 0.0);
  CHECK(f.left_limit(1.0) == 1.0);
  CHECK(f.right_limit(-1.0) == 1.0);
  CHECK(f.left_limit(-1.0) == 0.0);
  CHECK(f.jump_locations().size() == 2);
}

TEST_CASE("traces are 2pi-periodic") {
  auto s = BoundaryFunction::sine(3, 2.0);
  for (double t : {-3.0, -0.7, 0.2, 2.9}) {
    CHECK(s(t + 2 * pi) == doctest::Approx(s(t)).epsilon(1e-13));
    CHECK(s(t - 4 * pi) == doctest::Approx(s(t)).epsilon(1e-13));
    CHECK(s(t) == doctest::Approx(2.0 * std::sin(3 * t)).epsilon(1e-14));
  }
  auto chi = BoundaryFunction::indicator(2.5, 3.5);
  CHECK(chi(-2.9) == 1.0);
  CHECK(chi(3.0 - 2 * pi) == 1.0);
}

TEST_CASE("linear combinations evaluate pointwise") {
  auto f = BoundaryFunction::sine(1) + BoundaryFunction::indicator(0.0, 1.0).scaled(0.5);
  CHECK(f(0.5) == doctest::Approx(std::sin(0.5) + 0.5));
  CHECK(f(-0.5) == doctest::Approx(std::sin(-0.5)));
  auto g = f - BoundaryFunction::sine(1);
  CHECK(g(0.5) == doctest::Approx(0.5));
}

TEST_CASE("tabulated traces interpolate linearly and wrap") {
  auto f = BoundaryFunction::tabulated({-pi, 0.0, 1.0}, {0.0, 2.0, 4.0});
  CHECK(f(0.5) == doctest::Approx(3.0));
  CHECK(f(-pi / 2) == doctest::Approx(1.0));
  // wrap segment from (1, 4) to (pi, 0)
  double t = 0.5 * (1.0 + pi);
  CHECK(f(t) == doctest::Approx(2.0));

  std::istringstream in("theta,value\n-3.0,1\n0,0\n3.0,1\n");
  auto g = read_tabulated_csv(in);
  CHECK(g(0.0) == doctest::Approx(0.0));
  CHECK(g(1.5) == doctest::Approx(0.5));
}

TEST_CASE("malformed construction arguments throw") {
  CHECK_THROWS_AS(BoundaryFunction::indicator(1.0, 0.0), Error);
  CHECK_THROWS_AS(BoundaryFunction::spikes({}), Error);
  CHECK_THROWS_AS(BoundaryFunction::spikes({{0.0, 0.5, 1.0}, {0.6, 0.5, 1.0}}), Error);
  std::istringstream bad("theta,value\n0,1\nx,2\n");
  CHECK_THROWS_AS(read_tabulated_csv(bad), Error);
}

TEST_CASE("variation matches hand-computed values") {
  CHECK(variation(BoundaryFunction::indicator(-1.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-10));
  for (int n : {1, 3, 7}) {
    // |cos n.| rises and falls by 1 twice per period: 4n in total
    CHECK(variation(BoundaryFunction::cosine(n)) == doctest::Approx(4.0 * n).epsilon(1e-8));
  }
  auto sp = BoundaryFunction::spikes({{-1.0, 0.2, 3.0}, {0.5, 0.1, 1.5}, {2.0, 0.3, 0.25}});
  CHECK(variation(sp) == doctest::Approx(2.0 * (3.0 + 1.5 + 0.25)).epsilon(1e-12));
  auto cf = BoundaryFunction::closed_form({[](double t) { return t * t; }, {}, {}, {}, "square"});
  // rises and falls by pi^2 with a jump back at pi
  CHECK(variation(cf) == doctest::Approx(2.0 * pi * pi).epsilon(1e-7));
}

TEST_CASE("BV functions report sup and normalization") {
  BVFunction g(BoundaryFunction::constant(3.0) + BoundaryFunction::cosine(1));
  CHECK(g.variation() == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(inf_abs(g) == doctest::Approx(2.0).epsilon(1e-10));

  BVFunction chi(BoundaryFunction::indicator(-pi, 0.0));
  auto n = nbv_normalize(chi);
  CHECK(n.is_nbv());
  CHECK(n.base()(-pi) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(BVFunction(BoundaryFunction::closed_form(
                      {[](double t) { return t == 0.0 ? 0.0 : std::sin(1.0 / t); },
                       {},
                       {{0.0, SingularityClass::kOscillatory, PhaseHint::reciprocal(1.0)}},
                       {},
                       "sin(1/t)"})),
                  Error);
}
