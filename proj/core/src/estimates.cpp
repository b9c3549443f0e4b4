#include "hkp/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkp/error.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

std::string Norm::name() const {
  if (alexiewicz) return "alexiewicz";
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

namespace {

bool is_non_finite_failure(const Error& e) {
  return e.kind() == ErrorKind::kUnhandledSingularity &&
         std::string_view(e.what()).find("non-finite") != std::string_view::npos;
}

std::string radius_context(const std::string& what, double r) {
  std::ostringstream os;
  os.precision(17);
  os << what << " r=" << r;
  return os.str();
}

}  // namespace

double norm_of(const BoundaryFunction& f, Norm norm, const QuadratureSpec& spec) {
  try {
    double v = norm.alexiewicz ? alexiewicz_norm(f, spec) : lp_norm(f, norm.p, spec);
    return std::isfinite(v) ? v : kInfinity;
  } catch (const Error& e) {
    if (is_non_finite_failure(e)) return kInfinity;
    throw;
  }
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kOSmall: return "o-small";
    case Verdict::kOBounded: return "O-bounded";
    case Verdict::kDiverges: return "diverges";
  }
  return "diverges";
}

std::vector<double> default_r_grid() {
  std::vector<double> g{0.0, 0.5, 0.9, 0.99, 0.999};
  for (int k = 1; k <= 12; ++k) g.push_back(1.0 - std::ldexp(1.0, -k));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

Verdict classify_growth(double peak_ratio, double plateau_spread) {
  if (!std::isfinite(peak_ratio) || !std::isfinite(plateau_spread)) return Verdict::kDiverges;
  if (peak_ratio <= 0.05) return Verdict::kOSmall;
  if (plateau_spread <= 0.2) return Verdict::kOBounded;
  return Verdict::kDiverges;
}

Verdict classify_growth(const std::vector<double>& r_grid, const std::vector<double>& normalized,
                        double* peak_ratio, double* plateau_spread) {
  if (r_grid.size() != normalized.size() || r_grid.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "growth classification needs matching nonempty grids");
  }
  double ratio = kInfinity, spread = kInfinity;
  const double last = normalized.back();
  bool finite = std::all_of(normalized.begin(), normalized.end(), [](double v) { return std::isfinite(v); });
  if (finite) {
    double peak = *std::max_element(normalized.begin(), normalized.end());
    ratio = peak > 0.0 ? last / peak : 0.0;
    spread = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      if (r_grid[i] < 0.9) continue;
      if (last == 0.0) {
        spread = normalized[i] == 0.0 ? spread : kInfinity;
      } else {
        spread = std::max(spread, std::abs(normalized[i] / last - 1.0));
      }
    }
  }
  if (peak_ratio) *peak_ratio = ratio;
  if (plateau_spread) *plateau_spread = spread;
  return classify_growth(ratio, spread);
}

GrowthScan growth_scan(const HarmonicFunction& h, Norm norm, const std::vector<double>& r_grid,
                       const QuadratureSpec& spec) {
  if (r_grid.empty() || !std::is_sorted(r_grid.begin(), r_grid.end()) ||
      std::adjacent_find(r_grid.begin(), r_grid.end()) != r_grid.end()) {
    throw Error(ErrorKind::kInvalidArgument, "r-grid must be nonempty and strictly increasing");
  }
  GrowthScan scan;
  scan.r_grid = r_grid;
  scan.norm = norm;
  scan.norms.assign(r_grid.size(), 0.0);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    scan.norms[i] = norm_of(circle_trace(h, r_grid[i], spec), norm, spec);
  });
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    scan.normalized.push_back((1.0 - r_grid[i]) * scan.norms[i]);
  }
  scan.verdict = classify_growth(r_grid, scan.normalized, &scan.peak_ratio, &scan.plateau_spread);
  return scan;
}

std::vector<BoundReport> contraction_check(const BoundaryFunction& f, const std::vector<double>& r_grid,
                                           const QuadratureSpec& spec, double tol) {
  const double rhs = alexiewicz_norm(f, spec);
  const HarmonicFunction h = HarmonicFunction::poisson(f);
  std::vector<BoundReport> out(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    double lhs = alexiewicz_norm(circle_trace(h, r_grid[i], spec), spec);
    out[i] = BoundReport::make(lhs, rhs, tol, radius_context("contraction " + f.label(), r_grid[i]));
  });
  return out;
}

BoundaryFunction difference_trace(const HarmonicFunction& h, const BoundaryFunction& f, double r,
                                  const QuadratureSpec& spec) {
  const QuadratureSpec inner = spec.tightened(100.0);
  ClosedFormSpec cs;
  cs.value = [h, f, r, inner](double theta) { return poisson_eval(h, r, theta, inner) - f.value(theta); };
  cs.singularities = f.singularities();
  cs.hints = f.hints();
  for (double c : h.foci()) {
    for (double x : kernel_breaks(r, c)) cs.hints.push_back(x);
  }
  cs.label = radius_context("u_r-f " + f.label(), r);
  return BoundaryFunction::closed_form(std::move(cs));
}

std::vector<ConvergencePoint> convergence_scan(const BoundaryFunction& f, const std::vector<double>& r_grid,
                                               const QuadratureSpec& spec) {
  const HarmonicFunction h = HarmonicFunction::poisson(f);
  std::vector<ConvergencePoint> out(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    out[i] = {r_grid[i], alexiewicz_norm(difference_trace(h, f, r_grid[i], spec), spec)};
  });
  return out;
}

double l1_operator_bound(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::kDomain, "operator bound needs 0 <= r < 1");
  return (1.0 + 6.0 * r + r * r) / (1.0 - r * r);
}

BoundReport l1_operator_check(const BoundaryFunction& f, double r, const QuadratureSpec& spec, double tol) {
  const HarmonicFunction h = HarmonicFunction::poisson(f);
  double lhs = lp_norm(circle_trace(h, r, spec), 1.0, spec);
  double rhs = alexiewicz_norm(f, spec) * l1_operator_bound(r);
  return BoundReport::make(lhs, rhs, tol, radius_context("l1-operator " + f.label(), r));
}

HkProfile hk_norm_profile(const HarmonicFunction& h, const std::vector<double>& r_grid,
                          const QuadratureSpec& spec) {
  if (r_grid.empty() || !std::is_sorted(r_grid.begin(), r_grid.end())) {
    throw Error(ErrorKind::kInvalidArgument, "r-grid must be nonempty and increasing");
  }
  HkProfile prof;
  prof.r_grid = r_grid;
  prof.norms.assign(r_grid.size(), 0.0);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    prof.norms[i] = norm_of(circle_trace(h, r_grid[i], spec), Norm::alexiewicz_norm(), spec);
  });
  for (std::size_t i = 0; i < prof.norms.size(); ++i) {
    prof.sup = std::max(prof.sup, prof.norms[i]);
    if (i && prof.norms[i] + 1e-8 < prof.norms[i - 1]) prof.monotone = false;
  }
  return prof;
}

double hk_norm_estimate(const HarmonicFunction& h, const std::vector<double>& r_grid,
                        const QuadratureSpec& spec) {
  if (r_grid.empty() || r_grid.back() < 0.99) {
    throw Error(ErrorKind::kInvalidArgument, "hk norm estimate needs an r-grid reaching 0.99");
  }
  HkProfile prof = hk_norm_profile(h, r_grid, spec);
  // Growth is measured from the first radius >= 0.9: below it r^n damps high modes.
  std::size_t i0 = std::lower_bound(r_grid.begin(), r_grid.end(), 0.9) - r_grid.begin();
  if (i0 == r_grid.size()) i0 = 0;
  const double first = prof.norms[i0];
  for (double v : prof.norms) {
    if (!std::isfinite(v) || v > 1e3 * first) {
      throw Error(ErrorKind::kNotInHardySpace, h.label() + " norms grow without bound along the r-grid");
    }
  }
  return prof.sup;
}

double hardy_bound(double p, double r, double hk_norm) {
  if (!(r >= 0.0 && r < 1.0)) throw Error(ErrorKind::kDomain, "hardy bound needs 0 <= r < 1");
  if (!(p >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "hardy bound needs p >= 1");
  const double cp = std::isinf(p) ? 1.0 : std::pow(kTwoPi, 1.0 / p);
  const double growth = r >= 0.5 ? r / (1.0 - r) : 1.0;
  return cp * 2.0 * hk_norm * growth / kPi;
}

BoundReport hardy_bound_check(const HarmonicFunction& h, double p, double r, double hk_norm,
                              const QuadratureSpec& spec, double tol) {
  double lhs = lp_norm(circle_trace(h, r, spec), p, spec);
  return BoundReport::make(lhs, hardy_bound(p, r, hk_norm), tol,
                           radius_context("hardy " + h.label() + " p=" + Norm::lp(p).name(), r));
}

BoundReport hardy_bound_check(const HarmonicFunction& h, double p, double r, const QuadratureSpec& spec,
                              double tol) {
  return hardy_bound_check(h, p, r, hk_norm_estimate(h, default_r_grid(), spec), spec, tol);
}

BoundReport measure_bound_check(const RadialMeasure& mu, double p, double r, const QuadratureSpec& spec,
                                double tol) {
  const HarmonicFunction h = HarmonicFunction::poisson(mu);
  double lhs = lp_norm(circle_trace(h, r, spec), p, spec);
  double rhs = kernel_lp_norm(r, p, spec) * mu.total_mass();
  return BoundReport::make(lhs, rhs, tol, radius_context("measure p=" + Norm::lp(p).name(), r));
}

std::vector<BoundReport> bv_bound_check(const BVFunction& g, const std::vector<double>& r_grid,
                                        const QuadratureSpec& spec, double tol) {
  const HarmonicFunction h = HarmonicFunction::poisson(g.base());
  const double vg = g.variation();
  const double sup_rhs = inf_abs(g) + vg;
  std::vector<std::vector<BoundReport>> per(r_grid.size());
  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    BoundaryFunction trace = circle_trace(h, r, spec);
    double sup = lp_norm(trace, kInfinity, spec);
    per[i].push_back(BoundReport::make(sup, sup_rhs, tol, radius_context("bv-sup " + g.base().label(), r)));
    if (g.is_nbv()) {
      per[i].push_back(BoundReport::make(sup, vg, tol, radius_context("bv-nbv-sup " + g.base().label(), r)));
    }
    per[i].push_back(
        BoundReport::make(variation(trace), vg, tol, radius_context("bv-variation " + g.base().label(), r)));
  });
  std::vector<BoundReport> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace hkp
