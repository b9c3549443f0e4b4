#include "hkp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

// Boost 1.74 pchip.hpp calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "csv.hpp"
#include "hkp/error.hpp"
#include "hkp/estimates.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

namespace {

std::string context(const std::string& what, double r) {
  std::ostringstream os;
  os.precision(17);
  os << what << " r=" << r;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

void SharpnessTarget::validate() const {
  if (!psi) throw Error(ErrorKind::kInvalidArgument, "sharpness target needs psi");
  if (r_seq.empty() || r_seq.size() != theta_seq.size()) {
    throw Error(ErrorKind::kInvalidArgument, "sharpness target needs matching nonempty sequences");
  }
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    if (!(r_seq[i] >= 0.0 && r_seq[i] < 1.0) || (i && !(r_seq[i] > r_seq[i - 1]))) {
      throw Error(ErrorKind::kInvalidArgument, "r_n must increase strictly inside [0, 1)");
    }
    if (!(theta_seq[i] > 0.0 && theta_seq[i] < kPi / 2) || (i && !(theta_seq[i] < theta_seq[i - 1]))) {
      throw Error(ErrorKind::kInvalidArgument, "theta_n must decrease strictly inside (0, pi/2)");
    }
  }
}

SharpnessTarget SharpnessTarget::power_law(double exponent, int count) {
  SharpnessTarget t;
  t.psi = [exponent](double r, double) { return std::pow(1.0 - r, -exponent); };
  for (int n = 1; n <= count; ++n) {
    t.r_seq.push_back(1.0 - std::ldexp(1.0, -2 * n));
    t.theta_seq.push_back(std::ldexp(1.0, -n));
  }
  return t;
}

SpikeConstruction build_sharp_spike(const SharpnessTarget& target) {
  target.validate();
  SpikeConstruction c;
  const std::size_t n = target.r_seq.size();
  c.r = target.r_seq;
  c.theta = target.theta_seq;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = c.r[i], th = c.theta[i];
    const double prev = i == 0 ? kPi : c.theta[i - 1];
    const double next = i + 1 < n ? c.theta[i + 1] : 0.0;
    const double a = target.psi(r, th);
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error(ErrorKind::kInvalidArgument, "psi must be positive and finite on the sequence");
    }
    const double alpha = std::min({kPi / 2, 0.5 * (prev - th), 0.5 * (th - next), 1.0 - r});
    c.a.push_back(a);
    c.alpha.push_back(alpha);
    c.height.push_back(kPi * (1.0 - r) * a / alpha);
    scaled[i] = (1.0 - r) * a;
  }
  if (n >= 4) {
    double peak = *std::max_element(scaled.begin(), scaled.end());
    if (scaled.back() > 0.01 * peak) {
      throw Error(ErrorKind::kPsiNotLittleOh, "(1 - r_n) a_n does not decay along the sequence");
    }
  }

  c.retained.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (scaled[k] <= std::ldexp(1.0, -static_cast<int>(c.index_set.size() + 1))) {
      c.retained[k] = true;
      c.index_set.push_back(k);
    }
  }
  if (c.index_set.empty()) {
    throw Error(ErrorKind::kPsiNotLittleOh, "no index satisfies the summability cap");
  }
  std::vector<Spike> spikes;
  for (std::size_t k : c.index_set) {
    spikes.push_back({c.theta[k], c.alpha[k], c.height[k]});
    c.l1_mass += c.height[k] * c.alpha[k];
  }
  c.f = BoundaryFunction::spikes(std::move(spikes));
  return c;
}

std::vector<BoundReport> certify_spikes(const SpikeConstruction& c, std::size_t count,
                                        const QuadratureSpec& spec, double tol) {
  const HarmonicFunction h = HarmonicFunction::poisson(c.f);
  const std::size_t m = std::min(count, c.index_set.size());
  std::vector<BoundReport> out(m);
  parallel_for(m, [&](std::size_t j) {
    std::size_t k = c.index_set[j];
    double u = poisson_eval(h, c.r[k], c.theta[k], spec);
    // lhs = target a_n, rhs = attained value
    out[j] = BoundReport::make(c.a[k], u, tol, context("spike n=" + std::to_string(k + 1), c.r[k]));
  });
  return out;
}

double spike_lower_bound(double r, double height, double alpha) {
  return 2.0 * (1.0 + r) * (1.0 - r) * height * alpha / ((1.0 - r) * (1.0 - r) + r * alpha * alpha);
}

void write_spikes_csv(std::ostream& os, const SpikeConstruction& c) {
  os.precision(17);
  os << "center,halfwidth,height,retained\n";
  for (std::size_t i = 0; i < c.theta.size(); ++i) {
    os << c.theta[i] << ',' << c.alpha[i] << ',' << c.height[i] << ',' << (c.retained[i] ? 1 : 0) << '\n';
  }
}

BoundaryFunction read_spikes_csv(std::istream& is) {
  std::vector<Spike> spikes;
  for (const auto& row : detail::read_numeric_csv(is, 4)) {
    if (row[3] != 0.0) spikes.push_back({row[0], row[1], row[2]});
  }
  if (spikes.empty()) throw Error(ErrorKind::kParse, "spike file has no retained rows");
  return BoundaryFunction::spikes(std::move(spikes));
}

// ---------------------------------------------------------------------------

BoundaryFunction build_sine_family(const std::function<double(double)>& psi, int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "sine family needs n >= 1");
  const double rn = 1.0 - 1.0 / n;
  return BoundaryFunction::sine(n, psi(rn));
}

double s_r_family_norm(int n, double p) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "s_r_family_norm needs n >= 1");
  const double factor = std::pow(1.0 - 1.0 / n, n);
  return factor * std::pow(sine_lp_constant(p), 1.0 / p);
}

// ---------------------------------------------------------------------------

void DecayProfile::validate() const {
  if (!A || !dA) throw Error(ErrorKind::kInvalidProfile, "profile needs A and A'");
  constexpr int kSamples = 512;
  double prev = kInfinity;
  for (int i = 0; i < kSamples; ++i) {
    double r = static_cast<double>(i) / kSamples;
    double v = A(r);
    if (!(v > 0.0 && v < 0.5)) {
      throw Error(ErrorKind::kInvalidProfile, label + ": A must lie in (0, 1/2) on [0, 1)");
    }
    if (!(v < prev)) throw Error(ErrorKind::kInvalidProfile, label + ": A must decrease strictly");
    prev = v;
  }
}

DecayProfile DecayProfile::linear() {
  return {[](double r) { return 0.25 * (1.0 - r); }, [](double) { return -0.25; }, "linear"};
}

DecayProfile DecayProfile::exponential() {
  auto a = [](double r) { return r >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - r)) / 3.0; };
  auto da = [a](double r) {
    if (r >= 1.0) return 0.0;
    double d = 1.0 - r;
    return -a(r) / (d * d);
  };
  return {a, da, "exp"};
}

DecayProfile DecayProfile::tabulated(std::vector<double> r, std::vector<double> a) {
  if (r.size() != a.size() || r.empty()) {
    throw Error(ErrorKind::kInvalidProfile, "profile needs matching nonempty r and A columns");
  }
  if (r.back() < 1.0) {
    r.push_back(1.0);
    a.push_back(0.0);
  }
  if (r.front() != 0.0) throw Error(ErrorKind::kInvalidProfile, "profile knots must start at r = 0");
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) throw Error(ErrorKind::kInvalidProfile, "profile knots must increase strictly");
    if (!(a[i] < a[i - 1])) throw Error(ErrorKind::kInvalidProfile, "profile values must decrease strictly");
  }
  if (r.size() < 4) throw Error(ErrorKind::kInvalidProfile, "profile needs at least three knots below r = 1");
  using boost::math::interpolators::pchip;
  auto spline = std::make_shared<pchip<std::vector<double>>>(std::move(r), std::move(a));
  DecayProfile p{[spline](double x) { return (*spline)(std::clamp(x, 0.0, 1.0)); },
                 [spline](double x) { return spline->prime(std::clamp(x, 0.0, 1.0)); }, "tabulated"};
  p.validate();
  return p;
}

DecayProfile DecayProfile::from_csv(std::istream& is) {
  std::vector<double> r, a;
  for (const auto& row : detail::read_numeric_csv(is, 2)) {
    r.push_back(row[0]);
    a.push_back(row[1]);
  }
  return tabulated(std::move(r), std::move(a));
}

double slow_decay_constant() { return 0.5 - 1.0 / (kPi * std::cos(0.5)); }

BoundaryFunction build_slow_decay(const DecayProfile& profile, std::optional<double> p) {
  profile.validate();
  const double c0 = slow_decay_constant();
  std::ostringstream label;
  label << "slowdecay(" << profile.label;
  if (p) {
    if (!(*p >= 1.0) || std::isinf(*p)) throw Error(ErrorKind::kInvalidArgument, "slow decay needs 1 <= p < inf");
    label << ",p=" << *p;
  }
  label << ")";
  if (!p) {
    return BoundaryFunction::slow_decay(
        [profile, c0](double t) { return -profile.dA(1.0 - t) / c0; }, label.str());
  }
  const double q = *p;
  return BoundaryFunction::slow_decay(
      [profile, c0, q](double t) {
        double a = profile.A(1.0 - t), da = -profile.dA(1.0 - t);
        return std::pow(q, 1.0 / q) * std::pow(a, 1.0 - 1.0 / q) * std::pow(std::max(da, 0.0), 1.0 / q) / c0;
      },
      label.str());
}

std::vector<BoundReport> certify_slow_decay(const BoundaryFunction& f, const DecayProfile& profile,
                                            std::optional<double> p, const std::vector<double>& r_grid,
                                            const QuadratureSpec& spec, double tol) {
  const HarmonicFunction h = HarmonicFunction::poisson(f);
  std::vector<BoundReport> out(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    double lower;
    std::string what;
    if (!p) {
      lower = integrate(circle_trace(h, r, spec), -kPi, 0.0, spec).value;
      what = "slowdecay-left-mass";
    } else {
      lower = lp_norm(difference_trace(h, f, r, spec), *p, spec);
      what = "slowdecay-lp p=" + Norm::lp(*p).name();
    }
    out[i] = BoundReport::make(profile.A(r), lower, tol, context(what, r));
  });
  return out;
}

std::array<double, 5> slow_decay_chain(double r, double theta) {
  const double rho = (1.0 + r) / (1.0 - r);
  const double t = std::tan(0.5 * theta);
  return {
      poisson_indicator(-kPi, 0.0, r, theta),
      (0.5 * kPi - std::atan(rho * t) + std::atan(t / rho)) / kPi,
      0.5 - std::atan(rho * t) / kPi,
      0.5 - rho * theta / (kTwoPi * std::cos(0.5 * theta)),
      slow_decay_constant(),
  };
}

std::vector<JumpWitness> bv_counterexample(double a, double b, const std::vector<double>& r_grid) {
  if (!(a > -kPi && a < b && b < kPi)) {
    throw Error(ErrorKind::kInvalidArgument, "bv counterexample needs -pi < a < b < pi");
  }
  std::vector<JumpWitness> out;
  for (double r : r_grid) {
    out.push_back({r, poisson_indicator(a, b, r, b) - poisson_indicator(a, b, r, -kPi)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double denom(double r, double theta) {
  double s = std::sin(0.5 * theta);
  return (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
}

}  // namespace

Example example_b() {
  auto u = [](double r, double theta) {
    if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::kDomain, "example b needs 0 <= r < 1");
    const double d = denom(r, theta);
    const double s = 2.0 * r * std::sin(theta) / d;
    const double num = (1.0 - r * r) * std::cos(s) + 2.0 * r * std::sin(theta) * std::sin(s);
    return num * std::exp(-(1.0 - r * r) / d) / d;
  };
  ClosedFormSpec cs;
  cs.value = [](double theta) {
    double t = reduce_angle(theta);
    if (t == 0.0 || t == -kPi) return 0.0;
    double c = std::cos(0.5 * t) / std::sin(0.5 * t);
    return c * std::sin(c);
  };
  cs.singularities.push_back({0.0, SingularityClass::kOscillatory, PhaseHint::cot_half(1.0)});
  cs.label = "example-b";
  return {HarmonicFunction::closed_form(u, "example-b", {0.0}), BoundaryFunction::closed_form(std::move(cs))};
}

Example example_c() {
  auto u = [](double r, double theta) {
    if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::kDomain, "example c needs 0 <= r < 1");
    const double d = denom(r, theta);
    const double c = 1.0 - r * std::cos(theta);
    const double s = r * std::sin(theta);
    return std::exp(c / d) * (c * std::cos(s / d) - s * std::sin(s / d)) / d;
  };
  ClosedFormSpec cs;
  cs.value = [](double theta) {
    double t = reduce_angle(theta);
    if (t == 0.0) return kInfinity;
    double x = 0.5 * std::cos(0.5 * t) / std::sin(0.5 * t);
    return std::sqrt(std::exp(1.0)) * (0.5 * std::cos(x) - x * std::sin(x));
  };
  cs.singularities.push_back({0.0, SingularityClass::kBlowup, PhaseHint::cot_half(0.5)});
  cs.label = "example-c";
  return {HarmonicFunction::closed_form(u, "example-c", {0.0}), BoundaryFunction::closed_form(std::move(cs))};
}

}  // namespace hkp
