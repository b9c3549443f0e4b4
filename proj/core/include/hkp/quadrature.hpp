#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hkp/boundary.hpp"
#include "hkp/bound_report.hpp"

namespace hkp {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_depth = 40;
  int osc_accel_terms = 12;

  /// Throws invalid-argument unless tolerances >= 1e-14 and max_depth <= 60.
  void validate() const;
  /// Same spec with tolerances divided by `factor`, floored at 1e-14.
  QuadratureSpec tightened(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

/// A bare integrand with its singular set, for callers that are not
/// integrating a BoundaryFunction directly.
/// `fn` must be 2pi-periodic when singularities are given: their images are
/// handled too, and oscillatory tails are sampled next to the listed location.
struct Integrand {
  std::function<double(double)> fn;
  std::vector<SingularityDescriptor> singularities;
  std::vector<double> breaks;
};

QuadResult integrate(const Integrand& integrand, double a, double b, const QuadratureSpec& spec = {});

/// Integral of f over [a, b], b - a <= 2pi. Oscillatory singularities are
/// summed by half periods of their phase variable with iterated averaging.
QuadResult integrate(const BoundaryFunction& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral of f * weight over [a, b]; `weight_breaks` marks steep features
/// of the weight (kernel peaks) that should start their own panels.
QuadResult integrate_weighted(const BoundaryFunction& f, const std::function<double(double)>& weight,
                              double a, double b, const QuadratureSpec& spec = {},
                              std::span<const double> weight_breaks = {});

/// Cumulative integral F(theta) = int_{-pi}^{theta} f on a grid.
struct IndefiniteIntegral {
  std::vector<double> grid;
  std::vector<double> values;
  double total = 0.0;
  double error_bound = 0.0;
};

IndefiniteIntegral indefinite(const BoundaryFunction& f, int n_grid, const QuadratureSpec& spec = {});

/// sup over intervals of length <= 2pi of |int_I f|, from a sampled
/// cumulative integral (exact when F is piecewise linear on the grid).
double alexiewicz_norm(const IndefiniteIntegral& F);
/// Alexiewicz norm with local extrema of F polished onto roots of f.
double alexiewicz_norm(const BoundaryFunction& f, const QuadratureSpec& spec = {});

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (int |f|^p)^(1/p); p = kInfinity gives the essential sup, reported as
/// kInfinity when f has a blowup or oscillatory singularity.
double lp_norm(const BoundaryFunction& f, double p, const QuadratureSpec& spec = {});

/// |int f g| against ||f|| (inf|g| + Vg).
BoundReport pairing_bound(const BoundaryFunction& f, const BVFunction& g,
                          const QuadratureSpec& spec = {}, double tol = 1e-8);

/// Roots of a continuous function on [a, b] found by sampling n points and
/// bracketing sign changes.
std::vector<double> sample_roots(const std::function<double(double)>& fn, double a, double b, int n);

}  // namespace hkp
