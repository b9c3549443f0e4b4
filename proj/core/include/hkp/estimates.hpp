#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkp/bound_report.hpp"
#include "hkp/boundary.hpp"
#include "hkp/poisson.hpp"
#include "hkp/quadrature.hpp"

namespace hkp {

/// Norm selector: L^p for 1 <= p <= inf, or the Alexiewicz norm.
struct Norm {
  bool alexiewicz = true;
  double p = 1.0;

  static Norm lp(double p) { return {false, p}; }
  static Norm alexiewicz_norm() { return {true, 0.0}; }
  /// "alexiewicz", "inf" or the exponent.
  std::string name() const;
};

/// Norm of a boundary function; non-finite traces evaluate to +inf.
double norm_of(const BoundaryFunction& f, Norm norm, const QuadratureSpec& spec = {});

enum class Verdict { kOSmall, kOBounded, kDiverges };
std::string_view to_string(Verdict v) noexcept;

/// {0, 0.5, 0.9, 0.99, 0.999} merged with 1 - 2^-k, k = 1..12.
std::vector<double> default_r_grid();

struct GrowthScan {
  std::vector<double> r_grid;
  Norm norm;
  std::vector<double> norms;
  std::vector<double> normalized;  // (1 - r) ||u_r||
  double peak_ratio = 0.0;         // last normalized / max normalized
  double plateau_spread = 0.0;     // max |v / last - 1| over r >= 0.9
  Verdict verdict = Verdict::kDiverges;
};

/// o-small iff last <= 0.05 * peak; O-bounded iff the r >= 0.9 values stay
/// within 20% of the last one; diverges otherwise.
Verdict classify_growth(const std::vector<double>& r_grid, const std::vector<double>& normalized,
                        double* peak_ratio = nullptr, double* plateau_spread = nullptr);
Verdict classify_growth(double peak_ratio, double plateau_spread);

GrowthScan growth_scan(const HarmonicFunction& h, Norm norm, const std::vector<double>& r_grid,
                       const QuadratureSpec& spec = {});

/// ||u_r|| <= ||f|| per radius.
std::vector<BoundReport> contraction_check(const BoundaryFunction& f, const std::vector<double>& r_grid,
                                           const QuadratureSpec& spec = {}, double tol = 1e-6);

struct ConvergencePoint {
  double r = 0.0;
  double distance = 0.0;  // ||u_r - f||
};
/// The difference trace is integrated as one function so cancellation happens
/// inside the panels.
BoundaryFunction difference_trace(const HarmonicFunction& h, const BoundaryFunction& f, double r,
                                  const QuadratureSpec& spec = {});
std::vector<ConvergencePoint> convergence_scan(const BoundaryFunction& f, const std::vector<double>& r_grid,
                                               const QuadratureSpec& spec = {});

/// (1 + 6r + r^2) / (1 - r^2).
double l1_operator_bound(double r);
BoundReport l1_operator_check(const BoundaryFunction& f, double r, const QuadratureSpec& spec = {},
                              double tol = 1e-8);

/// Alexiewicz norms of the circle traces over a grid.
struct HkProfile {
  std::vector<double> r_grid;
  std::vector<double> norms;
  double sup = 0.0;
  bool monotone = true;  // nondecreasing within 1e-8
};
HkProfile hk_norm_profile(const HarmonicFunction& h, const std::vector<double>& r_grid,
                          const QuadratureSpec& spec = {});
/// sup_r ||u_r||; throws not-in-hHK when the norms grow past 1e3 times the
/// norm at the first grid radius >= 0.9.
double hk_norm_estimate(const HarmonicFunction& h, const std::vector<double>& r_grid,
                        const QuadratureSpec& spec = {});

/// ||u_r||_p against (2pi)^{1/p} 2 ||u|| max(r/(1-r), 1) / pi.
BoundReport hardy_bound_check(const HarmonicFunction& h, double p, double r, double hk_norm,
                              const QuadratureSpec& spec = {}, double tol = 1e-8);
BoundReport hardy_bound_check(const HarmonicFunction& h, double p, double r,
                              const QuadratureSpec& spec = {}, double tol = 1e-8);
double hardy_bound(double p, double r, double hk_norm);

/// ||P[mu]_r||_p <= ||Phi_r||_p mu(circle).
BoundReport measure_bound_check(const RadialMeasure& mu, double p, double r, const QuadratureSpec& spec = {},
                                double tol = 1e-8);

/// Per radius: sup bound, the NBV sup bound when g is NBV, and the
/// variation bound, in that order.
std::vector<BoundReport> bv_bound_check(const BVFunction& g, const std::vector<double>& r_grid,
                                        const QuadratureSpec& spec = {}, double tol = 1e-6);

}  // namespace hkp
