#include "hkp/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "hkp/error.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

namespace {

void require_radius(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    std::ostringstream os;
    os << "radius " << r << " outside [0, 1)";
    throw Error(ErrorKind::kDomain, os.str());
  }
}

/// 1 - 2 r cos theta + r^2 without cancellation near theta = 0.
double denom(double r, double theta) {
  double s = std::sin(0.5 * theta);
  return (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
}

}  // namespace

double kernel(double r, double theta) {
  require_radius(r);
  return (1.0 - r * r) / (kTwoPi * denom(r, theta));
}

double kernel_series(double r, double theta, int n_terms) {
  require_radius(r);
  double s = 1.0, rn = 1.0;
  for (int n = 1; n <= n_terms; ++n) {
    rn *= r;
    s += 2.0 * rn * std::cos(n * theta);
  }
  return s / kTwoPi;
}

double kernel_derivative(double r, double theta) {
  require_radius(r);
  double d = denom(r, theta);
  return -(1.0 - r * r) * 2.0 * r * std::sin(theta) / (kTwoPi * d * d);
}

double psi_kernel(double r, double phi) {
  if (!(r >= 0.0 && r <= 1.0)) throw Error(ErrorKind::kDomain, "psi kernel needs 0 <= r <= 1");
  double d = denom(r, phi);
  if (d == 0.0) return 1.0;
  return (1.0 - r) * (1.0 - r) / d;
}

std::vector<double> kernel_breaks(double r, double theta) {
  std::vector<double> out{theta};
  for (double w = 1.0 - r; w < kPi; w *= 4.0) {
    out.push_back(theta - w);
    out.push_back(theta + w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

struct HarmonicFunction::Impl {
  Kind kind = Kind::kClosedForm;
  std::optional<BoundaryFunction> f;
  std::optional<RadialMeasure> mu;
  std::optional<FourierCoefficients> coeffs;
  Evaluator eval;
  Evaluator dtheta;
  std::string label;
  std::vector<double> foci;
};

HarmonicFunction::HarmonicFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

HarmonicFunction HarmonicFunction::poisson(BoundaryFunction f) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kPoissonOfFunction;
  impl->label = "P[" + f.label() + "]";
  for (const auto& s : f.singularities()) impl->foci.push_back(s.location);
  for (double h : f.hints()) impl->foci.push_back(h);
  impl->f = std::move(f);
  return HarmonicFunction(std::move(impl));
}

HarmonicFunction HarmonicFunction::poisson(RadialMeasure mu) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kPoissonOfMeasure;
  impl->label = "P[measure]";
  for (const auto& a : mu.atoms()) impl->foci.push_back(a.location);
  if (mu.density()) {
    for (const auto& s : mu.density()->singularities()) impl->foci.push_back(s.location);
  }
  impl->mu = std::move(mu);
  return HarmonicFunction(std::move(impl));
}

HarmonicFunction HarmonicFunction::fourier(FourierCoefficients coeffs) {
  if (coeffs.a.size() != coeffs.b.size()) {
    throw Error(ErrorKind::kInvalidArgument, "fourier series needs as many a_n as b_n");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kFourierSeries;
  impl->label = "fourier";
  impl->coeffs = std::move(coeffs);
  return HarmonicFunction(std::move(impl));
}

HarmonicFunction HarmonicFunction::closed_form(Evaluator eval, std::string label,
                                               std::vector<double> foci, Evaluator dtheta) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::kClosedForm;
  impl->eval = std::move(eval);
  impl->dtheta = std::move(dtheta);
  impl->label = std::move(label);
  impl->foci = std::move(foci);
  return HarmonicFunction(std::move(impl));
}

HarmonicFunction::Kind HarmonicFunction::kind() const { return impl_->kind; }
const std::string& HarmonicFunction::label() const { return impl_->label; }
const BoundaryFunction* HarmonicFunction::boundary() const { return impl_->f ? &*impl_->f : nullptr; }
const RadialMeasure* HarmonicFunction::measure() const { return impl_->mu ? &*impl_->mu : nullptr; }
const FourierCoefficients* HarmonicFunction::coefficients() const {
  return impl_->coeffs ? &*impl_->coeffs : nullptr;
}
const std::vector<double>& HarmonicFunction::foci() const { return impl_->foci; }

bool HarmonicFunction::has_dtheta() const {
  return impl_->kind != Kind::kClosedForm || static_cast<bool>(impl_->dtheta);
}

namespace {

double measure_term(const RadialMeasure& mu, double r, double theta, const QuadratureSpec& spec,
                    bool derivative) {
  double s = 0.0;
  for (const auto& a : mu.atoms()) {
    s += a.mass * (derivative ? -kernel_derivative(r, a.location - theta) : kernel(r, a.location - theta));
  }
  if (mu.density()) {
    auto breaks = kernel_breaks(r, theta);
    auto w = [&](double phi) {
      return derivative ? -kernel_derivative(r, phi - theta) : kernel(r, phi - theta);
    };
    s += integrate_weighted(*mu.density(), w, theta - kPi, theta + kPi, spec, breaks).value;
  }
  return s;
}

double fourier_sum(const FourierCoefficients& c, double r, double theta, bool derivative) {
  double s = derivative ? 0.0 : 0.5 * c.a0;
  double rn = 1.0;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    rn *= r;
    if (rn == 0.0) break;
    double n = static_cast<double>(i + 1);
    double cs = std::cos(n * theta), sn = std::sin(n * theta);
    s += derivative ? rn * n * (c.b[i] * cs - c.a[i] * sn) : rn * (c.a[i] * cs + c.b[i] * sn);
  }
  return s;
}

}  // namespace

double HarmonicFunction::operator()(double r, double theta, const QuadratureSpec& spec) const {
  require_radius(r);
  switch (impl_->kind) {
    case Kind::kPoissonOfFunction: {
      auto breaks = kernel_breaks(r, theta);
      auto w = [r, theta](double phi) { return kernel(r, phi - theta); };
      return integrate_weighted(*impl_->f, w, theta - kPi, theta + kPi, spec, breaks).value;
    }
    case Kind::kPoissonOfMeasure:
      return measure_term(*impl_->mu, r, theta, spec, false);
    case Kind::kFourierSeries:
      return fourier_sum(*impl_->coeffs, r, theta, false);
    case Kind::kClosedForm:
      break;
  }
  return impl_->eval(r, theta);
}

double poisson_eval(const HarmonicFunction& h, double r, double theta, const QuadratureSpec& spec) {
  return h(r, theta, spec);
}

double HarmonicFunction::dtheta(double r, double theta, const QuadratureSpec& spec) const {
  require_radius(r);
  switch (impl_->kind) {
    case Kind::kPoissonOfFunction: {
      auto breaks = kernel_breaks(r, theta);
      auto w = [r, theta](double phi) { return -kernel_derivative(r, phi - theta); };
      return integrate_weighted(*impl_->f, w, theta - kPi, theta + kPi, spec, breaks).value;
    }
    case Kind::kPoissonOfMeasure:
      return measure_term(*impl_->mu, r, theta, spec, true);
    case Kind::kFourierSeries:
      return fourier_sum(*impl_->coeffs, r, theta, true);
    case Kind::kClosedForm:
      break;
  }
  if (!impl_->dtheta) throw Error(ErrorKind::kInvalidArgument, label() + " has no theta derivative");
  return impl_->dtheta(r, theta);
}

BoundaryFunction circle_trace(const HarmonicFunction& h, double r, const QuadratureSpec& spec) {
  require_radius(r);
  const QuadratureSpec inner = spec.tightened(100.0);
  ClosedFormSpec cs;
  cs.value = [h, r, inner](double theta) { return poisson_eval(h, r, theta, inner); };
  if (h.has_dtheta()) cs.derivative = [h, r, inner](double theta) { return h.dtheta(r, theta, inner); };
  for (double c : h.foci()) {
    for (double x : kernel_breaks(r, c)) cs.hints.push_back(x);
  }
  std::ostringstream os;
  os.precision(17);
  os << h.label() << "@r=" << r;
  cs.label = os.str();
  return BoundaryFunction::closed_form(std::move(cs));
}

// ---------------------------------------------------------------------------

namespace {

/// Continuous antiderivative of Phi_r with value 0 at 0.
double kernel_primitive(double rho, double x) {
  double m = std::round(x / kTwoPi);
  double xr = x - kTwoPi * m;
  return m + std::atan2(rho * std::sin(0.5 * xr), std::cos(0.5 * xr)) / kPi;
}

}  // namespace

double poisson_indicator(double alpha, double beta, double r, double theta) {
  require_radius(r);
  if (!(beta > alpha) || beta - alpha > kTwoPi * (1.0 + 1e-15)) {
    throw Error(ErrorKind::kInvalidArgument, "indicator needs 0 < beta - alpha <= 2pi");
  }
  const double rho = (1.0 + r) / (1.0 - r);
  double v = kernel_primitive(rho, beta - theta) - kernel_primitive(rho, alpha - theta);
  return std::clamp(v, 0.0, 1.0);
}

double hyp2f1_terminating(int p, double x) {
  if (p < 1) throw Error(ErrorKind::kInvalidArgument, "terminating 2F1 needs p >= 1");
  double s = 0.0, c = 1.0, xk = 1.0;
  for (int k = 0; k < p; ++k) {
    s += c * c * xk;
    c = c * (p - 1 - k) / (k + 1);
    xk *= x;
  }
  return s;
}

double kernel_lp_norm(double r, double p, const QuadratureSpec& spec) {
  require_radius(r);
  if (!(p >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "kernel_lp_norm needs p >= 1");
  if (std::isinf(p)) return (1.0 + r) / (kTwoPi * (1.0 - r));
  if (p == std::floor(p) && p <= 64.0) {
    int ip = static_cast<int>(p);
    return std::pow(kTwoPi, 1.0 / p - 1.0) * std::pow(1.0 - r * r, 1.0 / p - 1.0) *
           std::pow(hyp2f1_terminating(ip, r * r), 1.0 / p);
  }
  Integrand in;
  in.fn = [r, p](double t) { return std::pow(kernel(r, t), p); };
  in.breaks = kernel_breaks(r, 0.0);
  return std::pow(integrate(in, -kPi, kPi, spec).value, 1.0 / p);
}

double sine_lp_constant(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "sine_lp_constant needs p >= 1");
  return 2.0 * std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (1.0 + p)) - std::lgamma(1.0 + 0.5 * p));
}

FourierCoefficients fourier_coefficients(const BoundaryFunction& f, int n, const QuadratureSpec& spec) {
  if (n < 0) throw Error(ErrorKind::kInvalidArgument, "fourier_coefficients needs N >= 0");
  FourierCoefficients c;
  c.a.assign(static_cast<std::size_t>(n), 0.0);
  c.b.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> vals(2 * static_cast<std::size_t>(n) + 1);
  parallel_for(vals.size(), [&](std::size_t j) {
    std::function<double(double)> w;
    if (j == 0) {
      w = [](double) { return 1.0; };
    } else {
      double k = static_cast<double>((j + 1) / 2);
      if (j % 2 == 1) {
        w = [k](double t) { return std::cos(k * t); };
      } else {
        w = [k](double t) { return std::sin(k * t); };
      }
    }
    vals[j] = integrate_weighted(f, w, -kPi, kPi, spec).value / kPi;
  });
  c.a0 = vals[0];
  for (int k = 1; k <= n; ++k) {
    c.a[k - 1] = vals[2 * k - 1];
    c.b[k - 1] = vals[2 * k];
  }
  return c;
}

FourierValue fourier_extension(const FourierCoefficients& c, double r, double theta) {
  require_radius(r);
  FourierValue out;
  out.value = fourier_sum(c, r, theta, false);
  double cmax = std::abs(c.a0);
  for (std::size_t i = 0; i < c.a.size(); ++i) cmax = std::max({cmax, std::abs(c.a[i]), std::abs(c.b[i])});
  out.tail_bound = 2.0 * cmax * std::pow(r, static_cast<double>(c.a.size() + 1)) / (1.0 - r);
  return out;
}

}  // namespace hkp
