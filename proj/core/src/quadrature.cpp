#include "hkp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "hkp/error.hpp"
#include "hkp/parallel.hpp"

namespace hkp {

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 1e-14) || !(rel_tol >= 1e-14)) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature tolerances must be >= 1e-14");
  }
  if (max_depth < 1 || max_depth > 60) {
    throw Error(ErrorKind::kInvalidArgument, "max-depth must lie in [1, 60]");
  }
  if (osc_accel_terms < 0 || osc_accel_terms > 40) {
    throw Error(ErrorKind::kInvalidArgument, "osc-accel-terms must lie in [0, 40]");
  }
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec s = *this;
  s.abs_tol = std::max(1e-14, abs_tol / factor);
  s.rel_tol = std::max(1e-14, rel_tol / factor);
  return s;
}

namespace {

using Fn = std::function<double(double)>;

constexpr std::size_t kMaxPanels = 65536;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct Rule {
  std::array<double, 11> x;
  std::array<double, 11> wk;
  std::array<double, 5> wg;
};

const Rule& gk21() {
  static const Rule rule = [] {
    Rule r;
    const auto& ab = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    std::copy(ab.begin(), ab.end(), r.x.begin());
    std::copy(wk.begin(), wk.end(), r.wk.begin());
    std::copy(wg.begin(), wg.end(), r.wg.begin());
    return r;
  }();
  return rule;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
  int depth = 0;
};

[[noreturn]] void non_finite(double x) {
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand value at x = " << x;
  throw Error(ErrorKind::kUnhandledSingularity, os.str());
}

Panel apply_rule(const Fn& f, double a, double b, int depth) {
  const Rule& r = gk21();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, 11> f1{}, f2{};
  double f0 = f(c);
  if (!std::isfinite(f0)) non_finite(c);
  double resk = r.wk[0] * f0, resg = 0.0, resabs = std::abs(resk);
  for (int i = 1; i < 11; ++i) {
    double dx = h * r.x[i];
    f1[i] = f(c - dx);
    f2[i] = f(c + dx);
    if (!std::isfinite(f1[i])) non_finite(c - dx);
    if (!std::isfinite(f2[i])) non_finite(c + dx);
    resk += r.wk[i] * (f1[i] + f2[i]);
    resabs += r.wk[i] * (std::abs(f1[i]) + std::abs(f2[i]));
    if (i % 2 == 1) resg += r.wg[i / 2] * (f1[i] + f2[i]);
  }
  const double reskh = 0.5 * resk;
  double resasc = r.wk[0] * std::abs(f0 - reskh);
  for (int i = 1; i < 11; ++i) {
    resasc += r.wk[i] * (std::abs(f1[i] - reskh) + std::abs(f2[i] - reskh));
  }
  const double ah = std::abs(h);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk * h, err, resabs, depth};
}

/// Neumaier-compensated sum.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

/// Globally adaptive GK21 over a set of initial panels. Panels are summed in
/// position order so the result does not depend on the refinement history.
/// Once bisection stops paying off (roundoff), an error at or below
/// `accept_floor` is accepted even when the requested tolerance is tighter.
QuadResult adapt(const Fn& f, const std::vector<std::pair<double, double>>& initial, double abs_tol,
                 double rel_tol, int max_depth, double accept_floor = 0.0) {
  if (initial.empty()) return {};
  std::vector<Panel> panels;
  std::vector<bool> alive;
  auto cmp = [&](std::size_t i, std::size_t j) { return panels[i].error < panels[j].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

  auto push = [&](Panel p) {
    panels.push_back(p);
    alive.push_back(true);
    std::size_t i = panels.size() - 1;
    double w = p.b - p.a;
    bool splittable = p.depth < max_depth && w > 8.0 * kEps * std::max(std::abs(p.a), std::abs(p.b));
    if (splittable && p.error > 0.0) heap.push(i);
  };
  for (const auto& [a, b] : initial) {
    if (b > a) push(apply_rule(f, a, b, 0));
  }

  double mass = 0.0;
  auto totals = [&] {
    Accumulator v, e, m;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!alive[i]) continue;
      v.add(panels[i].value);
      e.add(panels[i].error);
      m.add(panels[i].resabs);
    }
    mass = m.value();
    return std::make_pair(v.value(), e.value());
  };
  // The rule's own roundoff floor is 50 eps per unit of |f| mass.
  auto target = [&](double v) { return std::max({abs_tol, rel_tol * std::abs(v), 100.0 * kEps * mass}); };

  auto [value, error] = totals();
  std::size_t live = panels.size();
  int since_refresh = 0;
  int roundoff = 0;
  while (error > target(value)) {
    if (roundoff >= 32 || heap.empty() || live >= kMaxPanels) {
      std::tie(value, error) = totals();
      if (error <= target(value) || error <= accept_floor) break;
    }
    if (heap.empty() || live >= kMaxPanels) {
      std::ostringstream os;
      os.precision(6);
      os << "tolerance not reached (error " << error << " after " << live << " panels)";
      throw AccuracyFailure(value, error, os.str());
    }
    std::size_t i = heap.top();
    heap.pop();
    Panel p = panels[i];
    alive[i] = false;
    double m = 0.5 * (p.a + p.b);
    Panel l = apply_rule(f, p.a, m, p.depth + 1);
    Panel r = apply_rule(f, m, p.b, p.depth + 1);
    const double lr = l.value + r.value;
    if (l.error + r.error >= 0.99 * p.error && std::abs(lr - p.value) <= 1e-5 * std::abs(lr)) ++roundoff;
    value += lr - p.value;
    error += (l.error + r.error) - p.error;
    mass += (l.resabs + r.resabs) - p.resabs;
    push(l);
    push(r);
    ++live;
    if (++since_refresh == 64) {
      std::tie(value, error) = totals();
      since_refresh = 0;
    }
  }

  std::vector<const Panel*> order;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (alive[i]) order.push_back(&panels[i]);
  }
  std::sort(order.begin(), order.end(), [](const Panel* x, const Panel* y) { return x->a < y->a; });
  Accumulator v, e;
  for (const Panel* p : order) {
    v.add(p->value);
    e.add(p->error);
  }
  return {v.value(), e.value()};
}

// ---------------------------------------------------------------------------
// Phase-variable summation near oscillatory singularities.

struct OscPoint {
  double s;     // image inside the integration window
  double base;  // descriptor location; the integrand is evaluated near it
  const PhaseHint* hint;
};

double tau_of(const OscPoint& o, double x) {
  if (x == o.s) return kInfinity;
  double sigma = x > o.s ? 1.0 : -1.0;
  return sigma * o.hint->phase(x - o.s);
}

double accelerate(const std::vector<double>& partial, int levels) {
  const std::size_t n = partial.size();
  std::size_t l = std::min<std::size_t>(static_cast<std::size_t>(levels), n - 1);
  std::vector<double> w(partial.end() - static_cast<std::ptrdiff_t>(l + 1), partial.end());
  for (std::size_t lvl = 0; lvl < l; ++lvl) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
    w.pop_back();
  }
  return w.front();
}

/// int_T^inf g over half periods aligned to multiples of hp, summed with
/// iterated averaging of the partial sums.
QuadResult tail(const Fn& g, double t0, double hp, double abs_tol, double rel_tol,
                const QuadratureSpec& spec) {
  const double chunk_abs = std::max(1e-17, abs_tol * 1e-3);
  const double chunk_rel = std::max(1e-14, rel_tol * 1e-3);
  double k0 = std::floor(t0 / hp) + 1.0;
  const double floor = 0.1 * abs_tol;
  QuadResult head = adapt(g, {{t0, k0 * hp}}, chunk_abs, chunk_rel, spec.max_depth, floor);

  std::vector<double> partial;
  Accumulator run;
  double chunk_err = 0.0;
  auto extend = [&](std::size_t target) {
    while (partial.size() < target) {
      double lo = (k0 + static_cast<double>(partial.size())) * hp;
      QuadResult c = adapt(g, {{lo, lo + hp}}, chunk_abs, chunk_rel, spec.max_depth, floor);
      run.add(c.value);
      chunk_err += c.error;
      partial.push_back(run.value());
    }
  };

  const int levels = spec.osc_accel_terms;
  std::size_t m = 32 + static_cast<std::size_t>(levels);
  extend(m);
  double prev = accelerate(partial, levels);
  constexpr std::size_t kMaxChunks = std::size_t{1} << 15;
  while (true) {
    m *= 2;
    if (m > kMaxChunks) {
      throw AccuracyFailure(head.value + prev, kInfinity,
                            "oscillatory tail did not settle within the chunk cap");
    }
    extend(m);
    double cur = accelerate(partial, levels);
    double diff = std::abs(cur - prev);
    if (diff <= std::max(abs_tol, rel_tol * std::abs(cur))) {
      return {head.value + cur, head.error + diff + chunk_err};
    }
    prev = cur;
  }
}

QuadResult osc_panel(const Fn& f, const OscPoint& o, double p, double q, double abs_tol,
                     double rel_tol, const QuadratureSpec& spec) {
  const double sigma = p >= o.s ? 1.0 : -1.0;
  const double near = sigma > 0 ? p : q;
  const double far = sigma > 0 ? q : p;
  const double t_lo = tau_of(o, far);
  const double t_hi = tau_of(o, near);
  const PhaseHint& h = *o.hint;
  Fn g = [&](double tau) {
    double t = sigma * tau;
    return f(o.base + h.offset(t)) * std::abs(h.doffset(t));
  };
  const double hp = h.half_period;
  if (std::isinf(t_hi)) return tail(g, t_lo, hp, abs_tol, rel_tol, spec);
  if (t_hi - t_lo > 64.0 * hp) {
    QuadResult a = tail(g, t_lo, hp, 0.5 * abs_tol, rel_tol, spec);
    QuadResult b = tail(g, t_hi, hp, 0.5 * abs_tol, rel_tol, spec);
    return {a.value - b.value, a.error + b.error};
  }
  std::vector<std::pair<double, double>> chunks;
  double lo = t_lo;
  for (double k = std::floor(t_lo / hp) + 1.0; k * hp < t_hi; k += 1.0) {
    chunks.emplace_back(lo, k * hp);
    lo = k * hp;
  }
  chunks.emplace_back(lo, t_hi);
  return adapt(g, chunks, abs_tol, rel_tol, spec.max_depth);
}

QuadResult integrate_core(const Fn& fn, double a, double b,
                          const std::vector<SingularityDescriptor>& sings,
                          const std::vector<double>& extra_breaks, const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::kInvalidArgument, "integration limits must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate_core(fn, b, a, sings, extra_breaks, spec);
    return {-r.value, r.error};
  }

  std::vector<double> breaks{a, b};
  std::vector<OscPoint> osc;
  auto add = [&](double x) {
    if (x > a && x < b) breaks.push_back(x);
  };
  for (int k = -2; k <= 2; ++k) {
    const double shift = kTwoPi * k;
    for (double x : extra_breaks) add(x + shift);
    for (const auto& sd : sings) {
      if (sd.cls == SingularityClass::kOscillatory && !sd.phase_hint) {
        throw Error(ErrorKind::kUnhandledSingularity,
                    "oscillatory-nonabsolute singularity without a phase hint");
      }
      double x = sd.location + shift;
      add(x);
      if (sd.phase_hint && x >= a - kPi && x <= b + kPi) {
        osc.push_back({x, sd.location, &*sd.phase_hint});
        add(x - kPi);
        add(x + kPi);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<std::pair<double, double>> regular;
  struct OscPanel {
    double p, q;
    OscPoint o;
  };
  std::vector<OscPanel> special;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double p = breaks[i], q = breaks[i + 1];
    const OscPoint* best = nullptr;
    double best_span = 0.0;
    for (const auto& o : osc) {
      bool right = o.s <= p && q - o.s <= kPi;
      bool left = o.s >= q && o.s - p <= kPi;
      if (!right && !left) continue;
      double span = std::abs(tau_of(o, q) - tau_of(o, p));
      if (std::isinf(tau_of(o, p)) || std::isinf(tau_of(o, q))) span = kInfinity;
      if (span / o.hint->half_period > best_span) {
        best_span = span / o.hint->half_period;
        best = &o;
      }
    }
    if (best && best_span > 8.0) {
      special.push_back({p, q, *best});
    } else {
      regular.emplace_back(p, q);
    }
  }

  const double share = 1.0 / static_cast<double>(special.size() + 1);
  QuadResult reg = adapt(fn, regular, spec.abs_tol * share, spec.rel_tol, spec.max_depth);
  std::vector<QuadResult> parts(special.size());
  for (std::size_t i = 0; i < special.size(); ++i) {
    const auto& sp = special[i];
    parts[i] = osc_panel(fn, sp.o, sp.p, sp.q, spec.abs_tol * share, spec.rel_tol, spec);
  }
  Accumulator v;
  double err = reg.error;
  v.add(reg.value);
  for (const auto& r : parts) {
    v.add(r.value);
    err += r.error;
  }
  return {v.value(), err};
}

void check_period_span(double a, double b) {
  if (std::abs(b - a) > kTwoPi * (1.0 + 4.0 * kEps)) {
    throw Error(ErrorKind::kInvalidArgument, "integration interval longer than one period");
  }
}

}  // namespace

QuadResult integrate(const Integrand& integrand, double a, double b, const QuadratureSpec& spec) {
  return integrate_core(integrand.fn, a, b, integrand.singularities, integrand.breaks, spec);
}

QuadResult integrate(const BoundaryFunction& f, double a, double b, const QuadratureSpec& spec) {
  check_period_span(a, b);
  return integrate_core([&f](double x) { return f.value(x); }, a, b, f.singularities(), f.hints(),
                        spec);
}

QuadResult integrate_weighted(const BoundaryFunction& f, const std::function<double(double)>& weight,
                              double a, double b, const QuadratureSpec& spec,
                              std::span<const double> weight_breaks) {
  check_period_span(a, b);
  std::vector<double> breaks = f.hints();
  breaks.insert(breaks.end(), weight_breaks.begin(), weight_breaks.end());
  return integrate_core([&](double x) { return f.value(x) * weight(x); }, a, b, f.singularities(),
                        breaks, spec);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> indefinite_grid(const BoundaryFunction& f, int n_grid) {
  std::vector<double> grid;
  for (int i = 0; i <= n_grid; ++i) grid.push_back(-kPi + kTwoPi * i / n_grid);
  grid.back() = kPi;
  for (double h : f.hints()) grid.push_back(h);
  for (const auto& s : f.singularities()) {
    grid.push_back(s.location);
    if (s.cls == SingularityClass::kJump) continue;
    for (int k = 3; k <= 24; ++k) {
      grid.push_back(s.location - std::ldexp(1.0, -k));
      grid.push_back(s.location + std::ldexp(1.0, -k));
    }
  }
  std::erase_if(grid, [](double x) { return x < -kPi || x > kPi; });
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

IndefiniteIntegral indefinite(const BoundaryFunction& f, int n_grid, const QuadratureSpec& spec) {
  if (n_grid < 16) throw Error(ErrorKind::kInvalidArgument, "indefinite integral needs n-grid >= 16");
  spec.validate();
  IndefiniteIntegral out;
  out.grid = indefinite_grid(f, n_grid);
  const std::size_t cells = out.grid.size() - 1;
  std::vector<QuadResult> parts(cells);
  parallel_for(cells, [&](std::size_t i) { parts[i] = integrate(f, out.grid[i], out.grid[i + 1], spec); });
  out.values.assign(out.grid.size(), 0.0);
  Accumulator run;
  for (std::size_t i = 0; i < cells; ++i) {
    run.add(parts[i].value);
    out.values[i + 1] = run.value();
    out.error_bound += parts[i].error;
  }
  out.total = out.values.back();
  return out;
}

namespace {

double scan_norm(const std::vector<double>& values, double c) {
  double lo = values.front(), hi = values.front();
  double up = 0.0, down = 0.0;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    up = std::max(up, v - lo);
    down = std::min(down, v - hi);
  }
  return std::max({up, -down, std::abs(c - up), std::abs(c - down)});
}

}  // namespace

double alexiewicz_norm(const IndefiniteIntegral& F) { return scan_norm(F.values, F.total); }

double alexiewicz_norm(const BoundaryFunction& f, const QuadratureSpec& spec) {
  IndefiniteIntegral F = indefinite(f, 512, spec);
  const auto& x = F.grid;
  const auto& v = F.values;
  const std::size_t n = x.size();

  std::vector<double> singular;
  for (const auto& s : f.singularities()) singular.push_back(s.location);
  auto touches_singularity = [&](double lo, double hi) {
    return std::any_of(singular.begin(), singular.end(),
                       [&](double s) { return s >= lo && s <= hi; });
  };

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    bool is_max = v[i] >= v[i - 1] && v[i] >= v[i + 1];
    bool is_min = v[i] <= v[i - 1] && v[i] <= v[i + 1];
    if ((is_max || is_min) && !touches_singularity(x[i - 1], x[i + 1])) candidates.push_back(i);
  }

  std::vector<std::pair<double, double>> extra(candidates.size(), {0.0, 0.0});
  std::vector<bool> found(candidates.size(), false);
  parallel_for(candidates.size(), [&](std::size_t k) {
    std::size_t i = candidates[k];
    double lo = x[i - 1], hi = x[i + 1];
    double flo = f.right_limit(lo), fhi = f.left_limit(hi);
    if (!(flo * fhi < 0.0)) return;
    auto fn = [&](double t) { return f.value(t); };
    boost::uintmax_t iters = 100;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 4);
    try {
      auto [ra, rb] = boost::math::tools::toms748_solve(fn, lo, hi, flo, fhi, tol, iters);
      double root = 0.5 * (ra + rb);
      double delta = integrate(f, x[i], root, spec).value;
      extra[k] = {root, v[i] + delta};
      found[k] = true;
    } catch (const std::exception&) {
      // no clean bracket; keep the grid value
    }
  });

  std::vector<std::pair<double, double>> pts;
  pts.reserve(n + candidates.size());
  for (std::size_t i = 0; i < n; ++i) pts.emplace_back(x[i], v[i]);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (found[k]) pts.push_back(extra[k]);
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<double> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(p.second);
  return scan_norm(values, F.total);
}

// ---------------------------------------------------------------------------

std::vector<double> sample_roots(const std::function<double(double)>& fn, double a, double b, int n) {
  if (n < 1 || !(b > a)) throw Error(ErrorKind::kInvalidArgument, "sample_roots needs n >= 1, a < b");
  std::vector<double> x(static_cast<std::size_t>(n) + 1), v(x.size());
  for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * i / n;
  parallel_for(x.size(), [&](std::size_t i) { v[i] = fn(x[i]); });
  std::vector<double> roots;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i] == 0.0) {
      roots.push_back(x[i]);
      continue;
    }
    if (i + 1 < x.size() && v[i] * v[i + 1] < 0.0) {
      boost::uintmax_t iters = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 4);
      auto [ra, rb] = boost::math::tools::toms748_solve(fn, x[i], x[i + 1], v[i], v[i + 1], tol, iters);
      roots.push_back(0.5 * (ra + rb));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

double sup_abs(const BoundaryFunction& f) {
  constexpr int kSamples = 1 << 14;
  std::vector<double> x(kSamples + 1), v(x.size());
  for (int i = 0; i <= kSamples; ++i) x[i] = -kPi + kTwoPi * i / kSamples;
  parallel_for(x.size(), [&](std::size_t i) { v[i] = std::abs(f.value(x[i])); });

  double best = *std::max_element(v.begin(), v.end());
  for (double j : f.jump_locations()) {
    best = std::max({best, std::abs(f.left_limit(j)), std::abs(f.right_limit(j))});
  }
  for (double h : f.hints()) best = std::max(best, std::abs(f.value(h)));

  auto jumps = f.jump_locations();
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (v[i] >= v[i - 1] && v[i] >= v[i + 1] && v[i] >= 0.5 * best) peaks.push_back(i);
  }
  std::vector<double> polished(peaks.size(), 0.0);
  parallel_for(peaks.size(), [&](std::size_t k) {
    std::size_t i = peaks[k];
    double lo = x[i - 1], hi = x[i + 1];
    if (std::any_of(jumps.begin(), jumps.end(), [&](double j) { return j >= lo && j <= hi; })) return;
    auto res = boost::math::tools::brent_find_minima(
        [&](double t) { return -std::abs(f.value(t)); }, lo, hi, std::numeric_limits<double>::digits / 2);
    polished[k] = -res.second;
  });
  for (double p : polished) best = std::max(best, p);
  return best;
}

}  // namespace

double lp_norm(const BoundaryFunction& f, double p, const QuadratureSpec& spec) {
  if (!(p >= 1.0)) throw Error(ErrorKind::kInvalidArgument, "lp_norm needs p >= 1");
  if (std::isinf(p)) {
    if (f.has_nonabsolute_singularity()) return kInfinity;
    return sup_abs(f);
  }
  if (std::any_of(f.singularities().begin(), f.singularities().end(),
                  [](const auto& s) { return s.cls == SingularityClass::kOscillatory; })) {
    throw Error(ErrorKind::kNotAbsolutelyIntegrable,
                f.label() + " has an oscillatory-nonabsolute singularity");
  }
  std::vector<double> breaks = f.hints();
  if (f.kind() != TraceKind::kPiecewiseConstant && f.kind() != TraceKind::kSpikeFamily) {
    auto roots = sample_roots([&](double t) { return f.value(t); }, -kPi, kPi, 2048);
    breaks.insert(breaks.end(), roots.begin(), roots.end());
  }
  Integrand in;
  in.fn = [&](double t) { return std::pow(std::abs(f.value(t)), p); };
  in.singularities = f.singularities();
  in.breaks = std::move(breaks);
  QuadResult r = integrate(in, -kPi, kPi, spec);
  return std::pow(r.value, 1.0 / p);
}

BoundReport pairing_bound(const BoundaryFunction& f, const BVFunction& g, const QuadratureSpec& spec,
                          double tol) {
  const BoundaryFunction& gb = g.base();
  Integrand in;
  in.fn = [&](double t) { return f.value(t) * gb.value(t); };
  in.singularities = f.singularities();
  for (const auto& s : gb.singularities()) in.singularities.push_back(s);
  in.breaks = f.hints();
  in.breaks.insert(in.breaks.end(), gb.hints().begin(), gb.hints().end());
  double lhs = std::abs(integrate(in, -kPi, kPi, spec).value);
  double rhs = alexiewicz_norm(f, spec) * (inf_abs(g) + g.variation());
  return BoundReport::make(lhs, rhs, tol, "pairing " + f.label() + " x " + gb.label());
}

}  // namespace hkp
