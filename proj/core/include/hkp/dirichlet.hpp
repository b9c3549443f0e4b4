#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "hkp/boundary.hpp"
#include "hkp/estimates.hpp"
#include "hkp/poisson.hpp"
#include "hkp/quadrature.hpp"

namespace hkp {

/// u = P[f].
HarmonicFunction solve(const BoundaryFunction& f);

struct CoefficientBound {
  int n = 0;
  double a_abs = 0.0;
  double b_abs = 0.0;
  double bound = 0.0;  // min over the grid of 4 n ||h_r|| / (pi r^n); ||h_r|| / pi for n = 0
  bool resolved = true;
  bool pass = true;
};

struct CoefficientReport {
  double recovery_radius = 0.0;
  FourierCoefficients recovered;
  std::vector<double> r_grid;
  std::vector<double> norms;  // ||h_r|| per grid radius
  std::vector<CoefficientBound> rows;  // n = 0..N
  bool all_pass = true;
  bool vanishes = false;
};

/// Recovers a_n, b_n from the trace at the largest grid radius and checks
/// them against 4 n ||h_r|| >= pi r^n |a_n|. Orders with r^n < 1e-6 are
/// reported unresolved.
CoefficientReport coefficient_bound_check(const HarmonicFunction& h, int n_max, const std::vector<double>& r_grid,
                                          const QuadratureSpec& spec = {}, double tol = 1e-8);

enum class Conclusion { kConsistent, kViolatesHypotheses };
std::string_view to_string(Conclusion c) noexcept;

struct PointwiseSample {
  double theta = 0.0;
  double u = 0.0;
  double f = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct UniquenessReport {
  std::optional<CoefficientReport> coefficients;
  double radius = 0.0;  // radius used for the pointwise comparison
  std::vector<PointwiseSample> pointwise;
  double pass_rate = 0.0;
  bool sampled = true;
  GrowthScan growth;
  Conclusion conclusion = Conclusion::kViolatesHypotheses;
};

/// Pointwise u_r -> f on a theta grid plus o(1/(1 - r)) growth of the
/// Alexiewicz norms.
UniquenessReport shapiro_check(const HarmonicFunction& h, const BoundaryFunction& f,
                               const std::vector<double>& theta_grid, const std::vector<double>& r_grid,
                               const QuadratureSpec& spec = {});

/// Max |Delta u| over the points from the polar five-point stencil with
/// dr = step and dtheta = step / r.
double laplacian_residual(const HarmonicFunction& h, const std::vector<std::pair<double, double>>& points,
                          double step, const QuadratureSpec& spec = {});

}  // namespace hkp
