#include "hkp/dirichlet.hpp"

#include <algorithm>
#include <cmath>

#include "hkp/error.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

HarmonicFunction solve(const BoundaryFunction& f) { return HarmonicFunction::poisson(f); }

CoefficientReport coefficient_bound_check(const HarmonicFunction& h, int n_max, const std::vector<double>& r_grid,
                                          const QuadratureSpec& spec, double tol) {
  if (n_max < 0) throw Error(ErrorKind::kInvalidArgument, "coefficient check needs N >= 0");
  if (r_grid.empty() || !std::is_sorted(r_grid.begin(), r_grid.end()) || r_grid.back() < 0.99) {
    throw Error(ErrorKind::kInvalidArgument, "coefficient check needs an increasing r-grid reaching 0.99");
  }
  CoefficientReport rep;
  rep.r_grid = r_grid;
  rep.norms.assign(r_grid.size(), 0.0);
  parallel_for(r_grid.size(), [&](std::size_t i) {
    rep.norms[i] = alexiewicz_norm(circle_trace(h, r_grid[i], spec), spec);
  });
  rep.recovery_radius = r_grid.back();
  const double rr = rep.recovery_radius;
  rep.recovered = fourier_coefficients(circle_trace(h, rr, spec), n_max, spec);
  rep.vanishes = *std::max_element(rep.norms.begin(), rep.norms.end()) <= 1e-12;

  for (int n = 0; n <= n_max; ++n) {
    CoefficientBound row;
    row.n = n;
    double bound = kInfinity;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      const double r = r_grid[i];
      if (n == 0) {
        bound = std::min(bound, rep.norms[i] / kPi);
      } else if (r > 0.0) {
        bound = std::min(bound, 4.0 * n * rep.norms[i] / (kPi * std::pow(r, n)));
      }
    }
    row.bound = bound;
    const double rn = std::pow(rr, n);
    if (n > 0 && rn < 1e-6) {
      row.resolved = false;
    } else if (n == 0) {
      row.a_abs = std::abs(rep.recovered.a0);
    } else {
      row.a_abs = std::abs(rep.recovered.a[n - 1] / rn);
      row.b_abs = std::abs(rep.recovered.b[n - 1] / rn);
    }
    if (rep.vanishes) {
      row.a_abs = 0.0;
      row.b_abs = 0.0;
    }
    row.pass = !row.resolved || std::max(row.a_abs, row.b_abs) <= row.bound + tol;
    rep.all_pass = rep.all_pass && row.pass;
    rep.rows.push_back(row);
  }
  if (n_max > 0) {
    for (int n = 1; n <= n_max; ++n) {
      if (rep.rows[n].resolved) {
        rep.recovered.a[n - 1] /= std::pow(rr, n);
        rep.recovered.b[n - 1] /= std::pow(rr, n);
      }
    }
  }
  return rep;
}

std::string_view to_string(Conclusion c) noexcept {
  return c == Conclusion::kConsistent ? "consistent-with-P[f]" : "violates-hypotheses";
}

UniquenessReport shapiro_check(const HarmonicFunction& h, const BoundaryFunction& f,
                               const std::vector<double>& theta_grid, const std::vector<double>& r_grid,
                               const QuadratureSpec& spec) {
  if (r_grid.empty()) throw Error(ErrorKind::kInvalidArgument, "shapiro check needs a nonempty r-grid");
  UniquenessReport rep;
  rep.radius = *std::max_element(r_grid.begin(), r_grid.end());

  std::vector<double> thetas;
  for (double t : theta_grid) {
    double x = reduce_angle(t);
    bool singular = std::any_of(f.singularities().begin(), f.singularities().end(),
                                [&](const auto& s) { return s.location == x; });
    if (!singular) thetas.push_back(x);
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  std::vector<double> fv(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) fv[i] = f(thetas[i]);
  rep.pointwise.resize(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    double eps = 0.0;
    if (i > 0) eps = std::max(eps, std::abs(fv[i - 1] - fv[i]));
    if (i + 1 < thetas.size()) eps = std::max(eps, std::abs(fv[i + 1] - fv[i]));
    eps += 1e-9;
    PointwiseSample s;
    s.theta = thetas[i];
    s.f = fv[i];
    s.u = poisson_eval(h, rep.radius, thetas[i], spec);
    s.tolerance = eps;
    s.pass = std::isfinite(s.u) && std::isfinite(s.f) && std::abs(s.u - s.f) <= eps;
    rep.pointwise[i] = s;
  });
  std::size_t passed = std::count_if(rep.pointwise.begin(), rep.pointwise.end(),
                                     [](const PointwiseSample& s) { return s.pass; });
  rep.pass_rate = rep.pointwise.empty() ? 0.0 : static_cast<double>(passed) / rep.pointwise.size();

  rep.growth = growth_scan(h, Norm::alexiewicz_norm(), r_grid, spec);
  rep.conclusion = (rep.growth.verdict == Verdict::kOSmall && !rep.pointwise.empty() && passed == rep.pointwise.size())
                       ? Conclusion::kConsistent
                       : Conclusion::kViolatesHypotheses;
  return rep;
}

double laplacian_residual(const HarmonicFunction& h, const std::vector<std::pair<double, double>>& points,
                          double step, const QuadratureSpec& spec) {
  if (!(step > 0.0)) throw Error(ErrorKind::kDomain, "stencil step must be positive");
  double worst = 0.0;
  for (const auto& [r, theta] : points) {
    if (!(r <= 0.95) || !(r - step > 0.0) || !(r + step <= 0.97)) {
      throw Error(ErrorKind::kDomain, "stencil leaves the region 0 < r <= 0.97");
    }
  }
  std::vector<double> res(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [r, theta] = points[i];
    const double k = step / r;
    const double u0 = poisson_eval(h, r, theta, spec);
    const double up = poisson_eval(h, r + step, theta, spec);
    const double um = poisson_eval(h, r - step, theta, spec);
    const double tp = poisson_eval(h, r, theta + k, spec);
    const double tm = poisson_eval(h, r, theta - k, spec);
    const double urr = (up - 2.0 * u0 + um) / (step * step);
    const double ur = (up - um) / (2.0 * step);
    const double utt = (tp - 2.0 * u0 + tm) / (k * k);
    res[i] = std::abs(urr + ur / r + utt / (r * r));
  });
  for (double v : res) worst = std::max(worst, v);
  return worst;
}

}  // namespace hkp
