#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkp/bound_report.hpp"
#include "hkp/boundary.hpp"
#include "hkp/poisson.hpp"
#include "hkp/quadrature.hpp"

namespace hkp {

struct SharpnessTarget {
  std::function<double(double r, double theta)> psi;
  std::vector<double> r_seq;      // strictly increasing in [0, 1)
  std::vector<double> theta_seq;  // strictly decreasing in (0, pi/2)

  void validate() const;

  /// psi = (1 - r)^-exponent, r_n = 1 - 4^-n, theta_n = 2^-n, n = 1..count.
  static SharpnessTarget power_law(double exponent, int count);
};

struct SpikeConstruction {
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> a;       // psi(r_n e^{i theta_n})
  std::vector<double> alpha;   // half-widths
  std::vector<double> height;  // pi (1 - r_n) a_n / alpha_n
  std::vector<bool> retained;
  std::vector<std::size_t> index_set;
  double l1_mass = 0.0;  // sum over the index set of height * alpha
  BoundaryFunction f = BoundaryFunction::constant(0.0);
};

/// Spike family built from retained indices only. Throws psi-not-little-oh
/// when (1 - r_n) a_n does not decay along a sequence of four or more terms.
SpikeConstruction build_sharp_spike(const SharpnessTarget& target);

/// P[f](r_n e^{i theta_n}) >= a_n for the first `count` retained indices.
std::vector<BoundReport> certify_spikes(const SpikeConstruction& c, std::size_t count = 10,
                                        const QuadratureSpec& spec = {}, double tol = 1e-8);

/// 2 (1 + r)(1 - r) f alpha / ((1 - r)^2 + r alpha^2): lower bound for 2 pi
/// times the Poisson integral of a single spike at its centre.
double spike_lower_bound(double r, double height, double alpha);

void write_spikes_csv(std::ostream& os, const SpikeConstruction& c);
/// Reads "center,halfwidth,height,retained" rows; keeps retained spikes.
BoundaryFunction read_spikes_csv(std::istream& is);

/// f_n = psi(r_n) sin(n .), r_n = 1 - 1/n.
BoundaryFunction build_sine_family(const std::function<double(double)>& psi, int n);
/// ||S_{r_n}[f_n]||_p = (1 - 1/n)^n (int |sin|^p)^{1/p}.
double s_r_family_norm(int n, double p);

/// Decay rate A: [0, 1] -> (0, 1/2), decreasing to 0 at 1.
struct DecayProfile {
  std::function<double(double)> A;
  std::function<double(double)> dA;
  std::string label;

  /// Throws invalid-profile unless A decreases strictly with 0 < A < 1/2 on [0, 1).
  void validate() const;

  static DecayProfile linear();       // (1 - r) / 4
  static DecayProfile exponential();  // exp(-1 / (1 - r)) / 3
  /// Monotone C^1 cubic (PCHIP) through strictly increasing knots; a final
  /// knot (1, 0) is appended when missing.
  static DecayProfile tabulated(std::vector<double> r, std::vector<double> a);
  /// "r,A" rows.
  static DecayProfile from_csv(std::istream& is);
};

/// 1/2 - 1/(pi cos(1/2)).
double slow_decay_constant();

/// p = nullopt selects the Alexiewicz construction, otherwise the L^p one.
BoundaryFunction build_slow_decay(const DecayProfile& profile, std::optional<double> p = std::nullopt);

/// Alexiewicz: int_{-pi}^0 u_r >= A(r). L^p: ||u_r - f||_p >= A(r).
std::vector<BoundReport> certify_slow_decay(const BoundaryFunction& f, const DecayProfile& profile,
                                            std::optional<double> p, const std::vector<double>& r_grid,
                                            const QuadratureSpec& spec = {}, double tol = 1e-8);

/// The lower-bound chain for P[chi_[-pi, 0]](r e^{i theta}) on 0 < theta < 1 - r:
/// exact value, arctan form, one-arctan bound, linearised bound, constant.
std::array<double, 5> slow_decay_chain(double r, double theta);

struct JumpWitness {
  double r = 0.0;
  double difference = 0.0;  // w_r(b) - w_r(-pi)
};
std::vector<JumpWitness> bv_counterexample(double a, double b, const std::vector<double>& r_grid);

struct Example {
  HarmonicFunction u;
  BoundaryFunction f;
};
/// u = Re[v e^{-v}], v = (1 + z)/(1 - z); f its radial limit.
Example example_b();
/// u = Re[e^{1/(1-z)} / (1 - z)]; f its radial limit off 0.
Example example_c();

}  // namespace hkp
