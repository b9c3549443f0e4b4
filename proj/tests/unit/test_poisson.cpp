#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkp/error.hpp"
#include "hkp/poisson.hpp"

using namespace hkp;
using std::numbers::pi;

TEST_CASE("kernel closed form, series and derivative") {
  CHECK(kernel(0.0, 1.3) == doctest::Approx(1.0 / (2 * pi)));
  CHECK(kernel(0.5, 0.0) == doctest::Approx(3.0 / (2 * pi)));
  CHECK(kernel(0.5, pi) == doctest::Approx((0.75 / 2.25) / (2 * pi)));
  for (double r : {0.1, 0.5, 0.8}) {
    for (double t : {-2.0, 0.0, 0.3, 3.0}) {
      CHECK(kernel_series(r, t, 400) == doctest::Approx(kernel(r, t)).epsilon(1e-13));
      double h = 1e-5;
      double fd = (kernel(r, t + h) - kernel(r, t - h)) / (2 * h);
      CHECK(kernel_derivative(r, t) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
    }
  }
  CHECK_THROWS_AS(kernel(1.0, 0.0), Error);
  CHECK_THROWS_AS(kernel(-0.1, 0.0), Error);
}

TEST_CASE("psi kernel") {
  CHECK(psi_kernel(1.0, 0.0) == 1.0);
  CHECK(psi_kernel(0.0, 0.7) == doctest::Approx(1.0));
  CHECK(psi_kernel(0.5, pi) == doctest::Approx(0.25 / 2.25));
  CHECK(psi_kernel(1.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("kernel peak breaks stay inside one period") {
  auto br = kernel_breaks(0.99, 0.0);
  CHECK(br.size() >= 3);
  for (double b : br) CHECK(std::abs(b) < pi + 1e-12);
}

TEST_CASE("Poisson integral of an arc") {
  CHECK(poisson_indicator(-1.0, 1.0, 0.0, 2.0) == doctest::Approx(1.0 / pi));
  CHECK(poisson_indicator(-pi, pi, 0.7, 0.3) == doctest::Approx(1.0));
  CHECK(poisson_indicator(-pi, 0.0, 0.6, 0.4) + poisson_indicator(0.0, pi, 0.6, 0.4) == doctest::Approx(1.0));
  // against direct quadrature of the kernel
  for (double r : {0.3, 0.9, 0.99}) {
    for (double t : {-0.5, 0.2, 2.5}) {
      Integrand k{[&](double s) { return kernel(r, t - s); }, {}, kernel_breaks(r, t)};
      QuadratureSpec q;
      q.abs_tol = 1e-13;
      q.rel_tol = 1e-12;
      CHECK(poisson_indicator(-0.4, 1.1, r, t) == doctest::Approx(integrate(k, -0.4, 1.1, q).value).epsilon(1e-10));
    }
  }
  // the value tends to the indicator at interior and exterior points
  CHECK(poisson_indicator(-0.4, 1.1, 0.99999, 0.5) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(poisson_indicator(-0.4, 1.1, 0.99999, 2.0) == doctest::Approx(0.0).epsilon(1e-4).scale(1.0));
  CHECK(poisson_indicator(-0.4, 1.1, 0.99999, 1.1) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("terminating hypergeometric series and kernel L^p norms") {
  CHECK(hyp2f1_terminating(1, 0.3) == doctest::Approx(1.0));
  CHECK(hyp2f1_terminating(2, 0.3) == doctest::Approx(1.3));
  CHECK(hyp2f1_terminating(3, 0.3) == doctest::Approx(1.0 + 4 * 0.3 + 0.09));
  for (double r : {0.0, 0.5, 0.9, 0.99}) {
    CHECK(kernel_lp_norm(r, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    // Parseval: int Phi_r^2 = (1 + r^2) / (2 pi (1 - r^2))
    CHECK(kernel_lp_norm(r, 2.0) == doctest::Approx(std::sqrt((1 + r * r) / (2 * pi * (1 - r * r)))).epsilon(1e-12));
    CHECK(kernel_lp_norm(r, kInfinity) == doctest::Approx(kernel(r, 0.0)).epsilon(1e-12));
  }
  // non-integer p goes through quadrature; compare with a plain kernel integral
  double r = 0.8, p = 2.5;
  Integrand k{[&](double s) { return std::pow(kernel(r, s), p); }, {}, kernel_breaks(r, 0.0)};
  CHECK(kernel_lp_norm(r, p) == doctest::Approx(std::pow(integrate(k, -pi, pi).value, 1.0 / p)).epsilon(1e-9));
}

TEST_CASE("sine L^p constants") {
  CHECK(sine_lp_constant(1.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sine_lp_constant(2.0) == doctest::Approx(pi).epsilon(1e-12));
  CHECK(sine_lp_constant(4.0) == doctest::Approx(3 * pi / 4).epsilon(1e-12));
}

TEST_CASE("harmonic extensions") {
  auto u = HarmonicFunction::poisson(BoundaryFunction::sine(3));
  CHECK(poisson_eval(u, 0.7, 0.4) == doctest::Approx(0.343 * std::sin(1.2)).epsilon(1e-10));
  CHECK(poisson_eval(u, 0.0, 0.4) == doctest::Approx(0.0).scale(1.0));

  auto chi = HarmonicFunction::poisson(BoundaryFunction::indicator(-0.4, 1.1));
  CHECK(poisson_eval(chi, 0.95, 1.0) == doctest::Approx(poisson_indicator(-0.4, 1.1, 0.95, 1.0)).epsilon(1e-9));

  auto delta = HarmonicFunction::poisson(RadialMeasure::dirac(0.5, 2.0));
  CHECK(poisson_eval(delta, 0.6, -1.0) == doctest::Approx(2.0 * kernel(0.6, -1.5)).epsilon(1e-13));

  auto trace = circle_trace(u, 0.5);
  CHECK(trace(1.0) == doctest::Approx(0.125 * std::sin(3.0)).epsilon(1e-10));
}

TEST_CASE("Fourier coefficients and extension") {
  auto c = fourier_coefficients(BoundaryFunction::indicator(0.0, 1.0), 5);
  CHECK(c.a0 == doctest::Approx(1.0 / pi).epsilon(1e-10));
  for (int n = 1; n <= 5; ++n) {
    CHECK(c.a[n - 1] == doctest::Approx(std::sin(n) / (n * pi)).epsilon(1e-9));
    CHECK(c.b[n - 1] == doctest::Approx((1 - std::cos(n)) / (n * pi)).epsilon(1e-9));
  }
  FourierCoefficients s;
  s.a0 = 2.0;
  s.a = {0.0, 0.5};
  s.b = {1.0, 0.0};
  auto v = fourier_extension(s, 0.5, 0.3);
  CHECK(v.value == doctest::Approx(1.0 + 0.5 * std::sin(0.3) + 0.5 * 0.25 * std::cos(0.6)));
  CHECK(v.tail_bound >= 0.0);
  auto h = HarmonicFunction::fourier(s);
  CHECK(h(0.5, 0.3) == doctest::Approx(v.value));
}
