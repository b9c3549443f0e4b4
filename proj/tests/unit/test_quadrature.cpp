#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkp/boundary.hpp"
#include "hkp/quadrature.hpp"

using namespace hkp;
using std::numbers::pi;

namespace {

// Sine integral: power series for small x, asymptotic auxiliary functions for large x.
double si(double x) {
  if (x < 12.0) {
    // sum_k (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    double t = x, s = x;
    for (int k = 1; k < 60; ++k) {
      t *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
      s += t / (2.0 * k + 1.0);
    }
    return s;
  }
  double f = 0.0, g = 0.0, tf = 1.0 / x, tg = 1.0 / (x * x);
  for (int k = 0; k < 40 && std::abs(tf) > 1e-18; ++k) {
    f += tf;
    g += tg;
    tf *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) / (x * x);
    tg *= -(2.0 * k + 2.0) * (2.0 * k + 3.0) / (x * x);
  }
  return pi / 2 - f * std::cos(x) - g * std::sin(x);
}

}  // namespace

TEST_CASE("sine integral oracle agrees with tabulated values") {
  CHECK(si(1.0) == doctest::Approx(0.946083070367183).epsilon(1e-14));
  CHECK(si(2.0) == doctest::Approx(1.605412976802695).epsilon(1e-14));
  CHECK(si(10.0) == doctest::Approx(1.658347594218874).epsilon(1e-12));
}

TEST_CASE("elementary integrals") {
  CHECK(std::abs(integrate(BoundaryFunction::sine(1), -pi, pi).value) < 1e-12);
  CHECK(integrate(BoundaryFunction::indicator(0.0, 1.0), -pi, pi).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate(BoundaryFunction::constant(2.0), -1.0, 0.5).value == doctest::Approx(3.0).epsilon(1e-12));
  Integrand sq{[](double t) { return t * t; }, {}, {}};
  CHECK(integrate(sq, 0.0, 3.0).value == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("Alexiewicz norms of simple traces") {
  for (int n : {1, 2, 5, 10}) {
    CHECK(alexiewicz_norm(BoundaryFunction::sine(n)) == doctest::Approx(2.0 / n).epsilon(1e-9));
  }
  CHECK(alexiewicz_norm(BoundaryFunction::constant(1.0)) == doctest::Approx(2 * pi).epsilon(1e-10));
  auto mixed = BoundaryFunction::indicator(0.0, 1.0) - BoundaryFunction::indicator(-1.0, 0.0);
  CHECK(alexiewicz_norm(mixed) == doctest::Approx(1.0).epsilon(1e-9));
  auto idx = indefinite(BoundaryFunction::constant(1.0), 64);
  CHECK(idx.total == doctest::Approx(2 * pi));
  CHECK(alexiewicz_norm(idx) == doctest::Approx(2 * pi));
}

TEST_CASE("L^p norms") {
  CHECK(lp_norm(BoundaryFunction::sine(1), 2.0) == doctest::Approx(std::sqrt(pi)).epsilon(1e-10));
  CHECK(lp_norm(BoundaryFunction::sine(4), 1.0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(lp_norm(BoundaryFunction::cosine(2, 3.0), kInfinity) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(lp_norm(BoundaryFunction::indicator(0.0, 1.0), 3.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("oscillatory singularity against the sine integral") {
  // int_eps^1 (2/t) sin(2/t) dt = 2 (Si(2/eps) - Si(2))
  ClosedFormSpec spec;
  spec.value = [](double t) { return t > 0.0 ? 2.0 / t * std::sin(2.0 / t) : 0.0; };
  spec.singularities = {{0.0, SingularityClass::kOscillatory, PhaseHint::reciprocal(2.0)}};
  spec.label = "osc";
  auto f = BoundaryFunction::closed_form(spec);
  for (double eps : {1e-3, 1e-6}) {
    double want = 2.0 * (si(2.0 / eps) - si(2.0));
    QuadratureSpec q;
    q.abs_tol = 1e-10;
    q.rel_tol = 1e-10;
    CHECK(integrate(f, eps, 1.0, q).value == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("pairing bound holds for BV multipliers") {
  BVFunction g(BoundaryFunction::cosine(2));
  auto rep = pairing_bound(BoundaryFunction::sine(3) + BoundaryFunction::indicator(0.0, 0.5), g);
  CHECK(rep.pass);
  CHECK(rep.lhs <= rep.rhs);
}

TEST_CASE("sampled roots") {
  auto roots = sample_roots([](double t) { return std::cos(t); }, 0.0, 5.0, 50);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(3 * pi / 2).epsilon(1e-12));
}

TEST_CASE("spec validation") {
  QuadratureSpec q;
  q.abs_tol = 1e-20;
  CHECK_THROWS(q.validate());
  QuadratureSpec t = QuadratureSpec{}.tightened(1e6);
  CHECK(t.abs_tol >= 1e-14);
}
