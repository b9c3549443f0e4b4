#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hkp/estimates.hpp"

using namespace hkp;
using std::numbers::pi;

TEST_CASE("default radius grid") {
  auto g = default_r_grid();
  CHECK(g.front() == 0.0);
  CHECK(g.size() == 16);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(g.back() == doctest::Approx(1.0 - std::ldexp(1.0, -12)));
}

TEST_CASE("norm selector names") {
  CHECK(Norm::alexiewicz_norm().name() == "alexiewicz");
  CHECK(Norm::lp(kInfinity).name() == "inf");
  CHECK(Norm::lp(2.0).name() == "2");
}

TEST_CASE("growth classification thresholds") {
  std::vector<double> r{0.0, 0.5, 0.9, 0.99};
  CHECK(classify_growth(r, {1.0, 0.5, 0.1, 0.01}) == Verdict::kOSmall);
  CHECK(classify_growth(r, {1.0, 0.9, 0.5, 0.5}) == Verdict::kOBounded);
  CHECK(classify_growth(r, {1.0, 2.0, 10.0, 100.0}) == Verdict::kDiverges);
  double peak = 0, spread = 0;
  classify_growth(r, {2.0, 1.0, 0.5, 0.6}, &peak, &spread);
  CHECK(peak == doctest::Approx(0.3));
  CHECK(spread == doctest::Approx(1.0 / 6.0));
  CHECK(to_string(Verdict::kOSmall) == "o-small");
  CHECK(to_string(Verdict::kOBounded) == "O-bounded");
  CHECK(to_string(Verdict::kDiverges) == "diverges");
}

TEST_CASE("Poisson integral of a point mass grows like 1/(1 - r) in sup norm") {
  auto u = HarmonicFunction::poisson(RadialMeasure::dirac(0.0));
  auto scan = growth_scan(u, Norm::lp(kInfinity), default_r_grid());
  CHECK(scan.verdict == Verdict::kOBounded);
  // (1 - r) Phi_r(0) = (1 + r) / (2 pi) -> 1 / pi
  CHECK(scan.normalized.back() == doctest::Approx(1.0 / pi).epsilon(1e-3));
}

TEST_CASE("sine data is o-small in the Alexiewicz norm") {
  auto u = HarmonicFunction::poisson(BoundaryFunction::sine(2));
  auto scan = growth_scan(u, Norm::alexiewicz_norm(), {0.0, 0.5, 0.9, 0.99, 0.999});
  CHECK(scan.verdict == Verdict::kOSmall);
  CHECK(scan.norms[2] == doctest::Approx(0.81).epsilon(1e-7));
}

TEST_CASE("contraction and convergence for an indicator") {
  auto f = BoundaryFunction::indicator(-0.5, 1.0);
  for (const auto& rep : contraction_check(f, {0.0, 0.5, 0.9, 0.99})) CHECK(rep.pass);
  auto conv = convergence_scan(f, {0.5, 0.9, 0.99});
  REQUIRE(conv.size() == 3);
  CHECK(conv[2].distance < conv[1].distance);
  CHECK(conv[1].distance < conv[0].distance);
}

TEST_CASE("L1 operator bound") {
  CHECK(l1_operator_bound(0.0) == doctest::Approx(1.0));
  CHECK(l1_operator_bound(0.5) == doctest::Approx(17.0 / 3.0));
  auto rep = l1_operator_check(BoundaryFunction::sine(1), 0.9);
  CHECK(rep.pass);
}

TEST_CASE("HK norm profile and estimate") {
  auto u = HarmonicFunction::poisson(BoundaryFunction::sine(1));
  auto prof = hk_norm_profile(u, {0.0, 0.5, 0.9});
  CHECK(prof.monotone);
  CHECK(prof.sup == doctest::Approx(2 * 0.9).epsilon(1e-8));
  CHECK(hk_norm_estimate(u, {0.5, 0.9, 0.99}) == doctest::Approx(2 * 0.99).epsilon(1e-8));
  auto blowup = HarmonicFunction::closed_form([](double r, double) { return std::pow(1.0 - r, -3.0); }, "blowup");
  CHECK_THROWS(hk_norm_estimate(blowup, {0.9, 0.995}));
}

TEST_CASE("Hardy, measure and BV bounds") {
  auto u = HarmonicFunction::poisson(BoundaryFunction::indicator(0.0, 2.0));
  for (double r : {0.5, 0.9, 0.99}) {
    CHECK(hardy_bound_check(u, 1.0, r).pass);
    CHECK(hardy_bound_check(u, kInfinity, r).pass);
  }
  CHECK(hardy_bound(kInfinity, 0.5, 1.0) == doctest::Approx(2.0 / pi));
  CHECK(hardy_bound(1.0, 0.9, 1.0) == doctest::Approx(2 * pi * 2.0 * 9.0 / pi));

  auto mu = RadialMeasure::dirac(0.3, 2.0);
  auto rep = measure_bound_check(mu, 2.0, 0.9);
  CHECK(rep.pass);
  // a single atom attains the bound
  CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-8));

  BVFunction g(BoundaryFunction::indicator(-1.0, 1.0));
  auto reps = bv_bound_check(g, {0.5, 0.9});
  CHECK(!reps.empty());
  for (const auto& b : reps) CHECK(b.pass);
}
