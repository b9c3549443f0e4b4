#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hkp/constructions.hpp"
#include "hkp/error.hpp"
#include "hkp/estimates.hpp"

using namespace hkp;
using std::numbers::pi;

TEST_CASE("sine family and its S_r norms") {
  auto psi = [](double r) { return 1.0 / std::sqrt(1.0 - r); };
  auto f = build_sine_family(psi, 10);
  CHECK(f(0.1) == doctest::Approx(std::sqrt(10.0) * std::sin(1.0)).epsilon(1e-12));
  CHECK(s_r_family_norm(10, 2.0) == doctest::Approx(std::pow(0.9, 10) * std::sqrt(pi)).epsilon(1e-12));
  CHECK(s_r_family_norm(4, 1.0) == doctest::Approx(std::pow(0.75, 4) * 4.0).epsilon(1e-12));
  // S_r[sin n.] = r^n sin n., so the norm is also a plain L^p norm of the trace
  auto u = HarmonicFunction::poisson(BoundaryFunction::sine(10));
  CHECK(lp_norm(circle_trace(u, 0.9), 2.0) == doctest::Approx(s_r_family_norm(10, 2.0)).epsilon(1e-8));
}

TEST_CASE("single spike lower bound") {
  double r = 0.9, alpha = 0.05, h = 1.0;
  double exact = h * poisson_indicator(-alpha, alpha, r, 0.0);
  double lb = spike_lower_bound(r, h, alpha);
  CHECK(lb > 0.0);
  CHECK(2 * pi * exact >= lb);
}

TEST_CASE("spike construction and certification") {
  auto target = SharpnessTarget::power_law(0.5, 8);
  CHECK_NOTHROW(target.validate());
  auto c = build_sharp_spike(target);
  REQUIRE(!c.index_set.empty());
  CHECK(c.f.kind() == TraceKind::kSpikeFamily);
  double mass = 0.0;
  for (auto i : c.index_set) mass += c.height[i] * c.alpha[i];
  CHECK(c.l1_mass == doctest::Approx(mass));
  for (const auto& rep : certify_spikes(c, 4)) CHECK(rep.pass);

  std::stringstream io;
  write_spikes_csv(io, c);
  auto back = read_spikes_csv(io);
  REQUIRE(back.spike_data());
  CHECK(back.spike_data()->size() == c.index_set.size());

  SharpnessTarget flat = SharpnessTarget::power_law(1.0, 8);
  CHECK_THROWS_AS(build_sharp_spike(flat), Error);
}

TEST_CASE("decay profiles") {
  auto lin = DecayProfile::linear();
  CHECK_NOTHROW(lin.validate());
  CHECK(lin.A(0.2) == doctest::Approx(0.2));
  auto ex = DecayProfile::exponential();
  CHECK(ex.A(0.0) == doctest::Approx(std::exp(-1.0) / 3.0));
  auto tab = DecayProfile::tabulated({0.0, 0.3, 0.6, 0.9}, {0.4, 0.3, 0.1, 0.05});
  CHECK(tab.A(0.3) == doctest::Approx(0.3));
  CHECK(tab.A(1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(DecayProfile::tabulated({0.0, 0.3, 0.6, 0.9}, {0.1, 0.3, 0.2, 0.05}), Error);
  std::istringstream in("r,A\n0,0.4\n0.5,0.2\n0.8,0.1\n0.9,0.01\n");
  CHECK(DecayProfile::from_csv(in).A(0.5) == doctest::Approx(0.2));
}

TEST_CASE("slow decay chain is ordered down to the constant") {
  CHECK(slow_decay_constant() == doctest::Approx(0.5 - 1.0 / (pi * std::cos(0.5))));
  for (double r : {0.5, 0.9, 0.99}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      double theta = frac * (1.0 - r);
      auto chain = slow_decay_chain(r, theta);
      CHECK(chain[0] == doctest::Approx(poisson_indicator(-pi, 0.0, r, theta)).epsilon(1e-12));
      for (int i = 0; i + 1 < 5; ++i) CHECK(chain[i] >= chain[i + 1] - 1e-14);
      CHECK(chain[4] == doctest::Approx(slow_decay_constant()));
    }
  }
}

TEST_CASE("slow decay certificates") {
  auto prof = DecayProfile::linear();
  auto f = build_slow_decay(prof);
  for (const auto& rep : certify_slow_decay(f, prof, std::nullopt, {0.5, 0.9, 0.99})) CHECK(rep.pass);
}

TEST_CASE("jump witness") {
  auto w = bv_counterexample(-1.0, 1.0, {0.9, 0.999});
  REQUIRE(w.size() == 2);
  CHECK(std::isfinite(w[0].difference));
  CHECK(std::isfinite(w[1].difference));
}

TEST_CASE("closed-form examples") {
  auto b = example_b();
  for (double r : {0.0, 0.5, 0.9}) {
    double rho = (1 + r) / (1 - r);
    CHECK(b.u(r, 0.0) == doctest::Approx(rho * std::exp(-rho)).epsilon(1e-13));
  }
  // on the circle v = i cot(theta / 2), so f = cot sin(cot) with cot = cot(theta / 2)
  double t = 1.0, ct = 1.0 / std::tan(t / 2);
  CHECK(b.f(t) == doctest::Approx(ct * std::sin(ct)).epsilon(1e-12));

  auto c = example_c();
  CHECK(c.f(pi) == doctest::Approx(std::sqrt(std::exp(1.0)) / 2).epsilon(1e-13));
  for (double r : {0.0, 0.5, 0.9}) {
    CHECK(c.u(r, 0.0) == doctest::Approx(std::exp(1.0 / (1 - r)) / (1 - r)).epsilon(1e-13));
    CHECK(c.u(r, pi) == doctest::Approx(std::exp(1.0 / (1 + r)) / (1 + r)).epsilon(1e-13));
  }
}
