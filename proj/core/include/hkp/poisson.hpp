#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hkp/boundary.hpp"
#include "hkp/quadrature.hpp"

namespace hkp {

/// Phi_r(theta) = (1 - r^2) / (2 pi (1 - 2 r cos theta + r^2)), 0 <= r < 1.
double kernel(double r, double theta);
/// [1 + 2 sum_{n<=N} r^n cos(n theta)] / (2 pi).
double kernel_series(double r, double theta, int n_terms);
double kernel_derivative(double r, double theta);
/// (1 - r)^2 / (1 - 2 r cos phi + r^2), 0 <= r <= 1, with Psi_1(0) = 1.
double psi_kernel(double r, double phi);

/// theta and theta +- (1 - r) 4^k for (1 - r) 4^k < pi: panel breaks that
/// resolve the kernel peak.
std::vector<double> kernel_breaks(double r, double theta);

struct FourierCoefficients {
  double a0 = 0.0;
  std::vector<double> a;  // a[n - 1] = a_n
  std::vector<double> b;
};

class HarmonicFunction {
 public:
  enum class Kind { kPoissonOfFunction, kPoissonOfMeasure, kFourierSeries, kClosedForm };

  using Evaluator = std::function<double(double r, double theta)>;

  static HarmonicFunction poisson(BoundaryFunction f);
  static HarmonicFunction poisson(RadialMeasure mu);
  static HarmonicFunction fourier(FourierCoefficients coeffs);
  /// `foci` are angles near which the circle traces steepen as r -> 1.
  static HarmonicFunction closed_form(Evaluator eval, std::string label,
                                      std::vector<double> foci = {}, Evaluator dtheta = {});

  Kind kind() const;
  const std::string& label() const;
  const BoundaryFunction* boundary() const;
  const RadialMeasure* measure() const;
  const FourierCoefficients* coefficients() const;
  const std::vector<double>& foci() const;

  double operator()(double r, double theta, const QuadratureSpec& spec = {}) const;
  /// d/dtheta, when available (always, except closed forms built without one).
  bool has_dtheta() const;
  double dtheta(double r, double theta, const QuadratureSpec& spec = {}) const;

  struct Impl;

 private:
  explicit HarmonicFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

double poisson_eval(const HarmonicFunction& h, double r, double theta, const QuadratureSpec& spec = {});

/// theta -> u(r e^{i theta}) as a closed-form boundary function.
BoundaryFunction circle_trace(const HarmonicFunction& h, double r, const QuadratureSpec& spec = {});

/// P[chi_[alpha, beta]](r e^{i theta}), continuous in theta, in [0, 1].
double poisson_indicator(double alpha, double beta, double r, double theta);

/// 2F1(1 - p, 1 - p; 1; x) = sum_{k<p} C(p - 1, k)^2 x^k.
double hyp2f1_terminating(int p, double x);
/// ||Phi_r||_p; terminating series for integer p, quadrature otherwise.
double kernel_lp_norm(double r, double p, const QuadratureSpec& spec = {});
/// int_{-pi}^{pi} |sin theta|^p.
double sine_lp_constant(double p);

FourierCoefficients fourier_coefficients(const BoundaryFunction& f, int n, const QuadratureSpec& spec = {});

struct FourierValue {
  double value = 0.0;
  double tail_bound = 0.0;
};
FourierValue fourier_extension(const FourierCoefficients& c, double r, double theta);

}  // namespace hkp
