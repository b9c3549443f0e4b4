#include "hkp_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hkp/hkp.hpp"
#include "hkp_cli/spec_parser.hpp"
#include "hkp_cli/suite.hpp"

namespace hkp::cli {

namespace {

std::string num(double v) { return format_number(v); }

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + num(v[i]);
  return out;
}

std::vector<double> grid_of(const CommandSpec& cmd) {
  return cmd.r_grid.empty() ? default_r_grid() : cmd.r_grid;
}

std::vector<Norm> norms_of(const CommandSpec& cmd, const char* fallback) {
  std::vector<Norm> out;
  for (const auto& s : cmd.p) out.push_back(parse_norm(s));
  if (out.empty()) out.push_back(parse_norm(fallback));
  return out;
}

BoundaryFunction function_arg(const CommandSpec& cmd) {
  if (cmd.function_spec.empty()) throw Error(ErrorKind::kInvalidArgument, cmd.subcommand + " needs --f");
  return parse_function(cmd.function_spec, cmd.base_dir);
}

void add_bounds(ScanReport& rep, const std::vector<BoundReport>& bounds, const std::string& p) {
  for (const auto& b : bounds) rep.rows.push_back(row_from(b, p));
}

bool all_rows_pass(const ScanReport& rep) {
  return std::all_of(rep.rows.begin(), rep.rows.end(), [](const Row& r) { return r.verdict != kFail; });
}

Example named_example(const std::string& name) {
  if (name == "b" || name == "example-b") return example_b();
  if (name == "c" || name == "example-c") return example_c();
  throw Error(ErrorKind::kInvalidArgument, "unknown example '" + name + "' (expected b or c)");
}

void growth_rows(ScanReport& rep, const GrowthScan& scan, const std::string& label) {
  for (std::size_t i = 0; i < scan.r_grid.size(); ++i) {
    Row row;
    row.context = "growth " + label;
    row.r = scan.r_grid[i];
    row.p = scan.norm.name();
    row.lhs = scan.norms[i];
    row.normalized = scan.normalized[i];
    row.verdict = std::string(to_string(scan.verdict));
    rep.rows.push_back(row);
  }
  rep.set("peak_ratio " + label + " p=" + scan.norm.name(), num(scan.peak_ratio));
  rep.set("plateau_spread " + label + " p=" + scan.norm.name(), num(scan.plateau_spread));
}

// ---------------------------------------------------------------------------

int kernel_norms(const CommandSpec& cmd, ScanReport& rep) {
  std::vector<std::string> ps = cmd.p.empty() ? std::vector<std::string>{"1", "2", "3"} : cmd.p;
  const std::vector<double> radii = cmd.r_grid.empty() ? std::vector<double>{0.0, 0.5, 0.9, 0.99} : cmd.r_grid;
  const HarmonicFunction phi = HarmonicFunction::poisson(RadialMeasure::dirac(0.0));
  for (const auto& ps_i : ps) {
    Norm n = parse_norm(ps_i);
    if (n.alexiewicz) throw Error(ErrorKind::kInvalidArgument, "kernel-norms takes L^p indices");
    for (double r : radii) {
      Row row;
      row.context = "kernel-norm p=" + n.name();
      row.r = r;
      row.p = n.name();
      row.lhs = kernel_lp_norm(r, n.p, cmd.quad);
      row.rhs = lp_norm(circle_trace(phi, r, cmd.quad), n.p, cmd.quad);
      row.normalized = (1.0 - r) * row.lhs;
      row.verdict = std::abs(row.lhs - row.rhs) <= 1e-8 * row.rhs ? kPass : kFail;
      rep.rows.push_back(row);
    }
  }
  rep.set("check", "closed form (lhs) vs quadrature (rhs), relative 1e-8");
  return all_rows_pass(rep) ? 0 : 1;
}

int scan(const CommandSpec& cmd, ScanReport& rep) {
  if (cmd.function_spec.empty()) throw Error(ErrorKind::kInvalidArgument, "scan needs --f");
  ParsedSpec parsed = parse_spec(cmd.function_spec, cmd.base_dir);
  const bool is_function = std::holds_alternative<BoundaryFunction>(parsed);
  HarmonicFunction h = is_function ? HarmonicFunction::poisson(std::get<BoundaryFunction>(parsed))
                                   : HarmonicFunction::poisson(std::get<RadialMeasure>(parsed));
  std::optional<std::string> expect = cmd.expect;
  if (!expect && is_function) expect = "o-small";
  rep.set("expect", expect.value_or("any"));
  bool ok = true;
  for (const Norm& n : norms_of(cmd, "alexiewicz")) {
    GrowthScan s = growth_scan(h, n, grid_of(cmd), cmd.quad);
    growth_rows(rep, s, h.label());
    if (expect && *expect != to_string(s.verdict)) ok = false;
  }
  return ok ? 0 : 1;
}

int contraction(const CommandSpec& cmd, ScanReport& rep) {
  add_bounds(rep, contraction_check(function_arg(cmd), grid_of(cmd), cmd.quad, cmd.tol), "alexiewicz");
  return all_rows_pass(rep) ? 0 : 1;
}

int converge(const CommandSpec& cmd, ScanReport& rep) {
  BoundaryFunction f = function_arg(cmd);
  const double fn = alexiewicz_norm(f, cmd.quad);
  auto pts = convergence_scan(f, grid_of(cmd), cmd.quad);
  for (const auto& pt : pts) {
    Row row;
    row.context = "converge " + f.label();
    row.r = pt.r;
    row.p = "alexiewicz";
    row.lhs = pt.distance;
    row.rhs = pts.front().distance;
    row.normalized = fn > 0.0 ? pt.distance / fn : 0.0;
    row.verdict = row.lhs <= row.rhs + cmd.tol ? kPass : kFail;
    rep.rows.push_back(row);
  }
  rep.set("norm_f", num(fn));
  rep.set("check", "||u_r - f|| (lhs) <= value at the first radius (rhs)");
  return all_rows_pass(rep) ? 0 : 1;
}

int sharpness(const CommandSpec& cmd, ScanReport& rep) {
  SpikeConstruction c = build_sharp_spike(SharpnessTarget::power_law(cmd.exponent, cmd.count));
  std::vector<BoundReport> certs =
      certify_spikes(c, static_cast<std::size_t>(std::max(cmd.certify, 0)), cmd.quad, cmd.tol);
  for (std::size_t k = 0; k < certs.size(); ++k) {
    Row row = row_from(certs[k]);
    row.r = c.r[c.index_set[k]];
    row.normalized = (1.0 - row.r) * row.lhs;
    rep.rows.push_back(row);
  }
  rep.set("retained", std::to_string(c.index_set.size()));
  rep.set("l1_mass", num(c.l1_mass));
  if (!cmd.spikes_out.empty()) {
    std::ofstream os(cmd.spikes_out);
    if (!os) throw Error(ErrorKind::kIo, "cannot write '" + cmd.spikes_out + "'");
    write_spikes_csv(os, c);
  }
  std::vector<std::string> ps = cmd.p.empty() ? std::vector<std::string>{"1"} : cmd.p;
  for (const auto& ps_i : ps) {
    Norm nrm = parse_norm(ps_i);
    if (nrm.alexiewicz) throw Error(ErrorKind::kInvalidArgument, "sine family rows take L^p indices");
    for (int n : cmd.family) {
      const double rn = 1.0 - 1.0 / n;
      HarmonicFunction u = HarmonicFunction::poisson(build_sine_family([](double) { return 1.0; }, n));
      Row row;
      row.context = "sine-family n=" + std::to_string(n);
      row.r = rn;
      row.p = nrm.name();
      row.lhs = lp_norm(circle_trace(u, rn, cmd.quad), nrm.p, cmd.quad);
      row.rhs = s_r_family_norm(n, nrm.p);
      row.normalized = std::abs(row.lhs - row.rhs);
      row.verdict = row.normalized <= 1e-9 ? kPass : kFail;
      rep.rows.push_back(row);
    }
  }
  return all_rows_pass(rep) ? 0 : 1;
}

DecayProfile profile_of(const CommandSpec& cmd) {
  if (cmd.profile == "linear" || cmd.profile == "poly") return DecayProfile::linear();
  if (cmd.profile == "exp") return DecayProfile::exponential();
  std::filesystem::path path(cmd.profile);
  if (path.is_relative() && !cmd.base_dir.empty()) path = cmd.base_dir / path;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open profile '" + path.string() + "'");
  return DecayProfile::from_csv(in);
}

int slowdecay(const CommandSpec& cmd, ScanReport& rep) {
  DecayProfile profile = profile_of(cmd);
  for (const Norm& n : norms_of(cmd, "alexiewicz")) {
    std::optional<double> p = n.alexiewicz ? std::nullopt : std::optional<double>(n.p);
    BoundaryFunction f = build_slow_decay(profile, p);
    auto reps = certify_slow_decay(f, profile, p, grid_of(cmd), cmd.quad, cmd.tol);
    for (const auto& b : reps) {
      Row row = row_from(b, n.name());
      if (!std::isnan(row.r)) row.normalized = row.lhs / profile.A(row.r);
      rep.rows.push_back(row);
    }
  }
  rep.set("profile", profile.label);
  rep.set("check", "certified lower bound (rhs) >= A(r) (lhs)");
  return all_rows_pass(rep) ? 0 : 1;
}

int bv_check(const CommandSpec& cmd, ScanReport& rep) {
  if (!cmd.function_spec.empty()) {
    BVFunction g(function_arg(cmd));
    for (const auto& b : bv_bound_check(g, grid_of(cmd), cmd.quad, cmd.tol)) {
      bool sup = b.context.rfind("bv-variation", 0) != 0;
      rep.rows.push_back(row_from(b, sup ? "inf" : "variation"));
    }
    rep.set("variation", num(g.variation()));
  }
  if (cmd.witness) {
    auto [a, b] = *cmd.witness;
    for (const auto& w : bv_counterexample(a, b, cmd.witness_r)) {
      Row row;
      row.context = "bv-witness chi[" + num(a) + "," + num(b) + ")";
      row.r = w.r;
      row.lhs = w.difference;
      row.rhs = 0.5;
      row.normalized = std::abs(w.difference - 0.5);
      row.verdict = row.normalized <= 0.02 ? kPass : kFail;
      rep.rows.push_back(row);
    }
  }
  if (rep.rows.empty()) throw Error(ErrorKind::kInvalidArgument, "bv-check needs --f or --witness");
  return all_rows_pass(rep) ? 0 : 1;
}

int dirichlet(const CommandSpec& cmd, ScanReport& rep) {
  std::optional<HarmonicFunction> u;
  std::optional<BoundaryFunction> f;
  std::string expect = cmd.expect.value_or("");
  if (!cmd.name.empty()) {
    Example ex = named_example(cmd.name);
    u = ex.u;
    f = ex.f;
    if (expect.empty()) expect = cmd.name.back() == 'c' ? "violates-hypotheses" : "consistent-with-P[f]";
  } else {
    f = function_arg(cmd);
    u = solve(*f);
    if (expect.empty()) expect = "consistent-with-P[f]";
  }
  std::vector<double> thetas;
  for (int i = 0; i < cmd.n_theta; ++i) thetas.push_back(-kPi + kTwoPi * (i + 0.5) / cmd.n_theta);
  UniquenessReport ur = shapiro_check(*u, *f, thetas, grid_of(cmd), cmd.quad);
  try {
    ur.coefficients = coefficient_bound_check(*u, cmd.n_coeffs, grid_of(cmd), cmd.quad, cmd.tol);
  } catch (const Error& e) {
    rep.set("coefficients", std::string(e.what()));
  }
  if (ur.coefficients) {
    for (const auto& c : ur.coefficients->rows) {
      if (!c.resolved) continue;
      Row row;
      row.context = "coefficient n=" + std::to_string(c.n);
      row.r = ur.coefficients->recovery_radius;
      row.lhs = std::max(c.a_abs, c.b_abs);
      row.rhs = c.bound;
      row.verdict = c.pass ? kPass : kFail;
      rep.rows.push_back(row);
    }
  }
  for (const auto& s : ur.pointwise) {
    Row row;
    row.context = "pointwise theta=" + num(s.theta);
    row.r = ur.radius;
    row.lhs = std::abs(s.u - s.f);
    row.rhs = s.tolerance;
    row.verdict = s.pass ? kPass : kFail;
    rep.rows.push_back(row);
  }
  growth_rows(rep, ur.growth, u->label());
  Row concl;
  concl.context = "conclusion";
  concl.normalized = ur.pass_rate;
  concl.verdict = std::string(to_string(ur.conclusion));
  rep.rows.push_back(concl);
  rep.set("expect", expect);
  rep.set("pointwise", "sampled on " + std::to_string(cmd.n_theta) + " theta midpoints");
  rep.payload = to_json(ur);
  bool coeff_ok = !ur.coefficients || ur.coefficients->all_pass;
  return to_string(ur.conclusion) == expect && (coeff_ok || expect == "violates-hypotheses") ? 0 : 1;
}

int example(const CommandSpec& cmd, ScanReport& rep) {
  if (cmd.name.empty()) throw Error(ErrorKind::kInvalidArgument, "example needs --name b|c");
  Example ex = named_example(cmd.name);
  std::string expect = cmd.expect.value_or(cmd.name.back() == 'c' ? "diverges" : "o-small");
  rep.set("expect", expect);
  bool ok = true;
  for (const Norm& n : norms_of(cmd, "inf")) {
    GrowthScan s = growth_scan(ex.u, n, grid_of(cmd), cmd.quad);
    growth_rows(rep, s, ex.u.label());
    if (to_string(s.verdict) != expect) ok = false;
  }
  return ok ? 0 : 1;
}

int suite(const CommandSpec&, ScanReport& rep) {
  auto results = run_suite();
  bool ok = true;
  for (const auto& c : results) {
    Row row;
    char id[8];
    std::snprintf(id, sizeof id, "%02d", c.id);
    row.context = std::string("criterion ") + id + " " + c.title;
    row.lhs = c.seconds;
    row.verdict = c.pass ? kPass : kFail;
    rep.rows.push_back(row);
    rep.set(std::string("criterion ") + id, c.detail);
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

Norm parse_norm(const std::string& text) {
  if (text == "alexiewicz" || text == "hk") return Norm::alexiewicz_norm();
  if (text == "inf" || text == "sup") return Norm::lp(kInfinity);
  try {
    std::size_t used = 0;
    double p = std::stod(text, &used);
    if (used == text.size() && p >= 1.0 && std::isfinite(p)) return Norm::lp(p);
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParse, "bad norm selector '" + text + "' (real >= 1, inf or alexiewicz)");
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "not a number: '" + cell + "'");
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const UniquenessReport& rep) {
  using J = nlohmann::ordered_json;
  auto n = [](double v) -> J {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  J out;
  if (rep.coefficients) {
    const auto& c = *rep.coefficients;
    J rows = J::array();
    for (const auto& b : c.rows) {
      rows.push_back({{"n", b.n},
                      {"a_abs", n(b.a_abs)},
                      {"b_abs", n(b.b_abs)},
                      {"bound", n(b.bound)},
                      {"resolved", b.resolved},
                      {"pass", b.pass}});
    }
    J norms = J::array();
    for (double v : c.norms) norms.push_back(n(v));
    out["coefficient_bounds"] = {{"recovery_radius", c.recovery_radius},
                                 {"r_grid", c.r_grid},
                                 {"norms", norms},
                                 {"rows", rows},
                                 {"all_pass", c.all_pass},
                                 {"vanishes", c.vanishes}};
  } else {
    out["coefficient_bounds"] = nullptr;
  }
  J pts = J::array();
  for (const auto& s : rep.pointwise) {
    pts.push_back({{"theta", s.theta}, {"u", n(s.u)}, {"f", n(s.f)}, {"tolerance", n(s.tolerance)}, {"pass", s.pass}});
  }
  J norms = J::array(), normalized = J::array();
  for (double v : rep.growth.norms) norms.push_back(n(v));
  for (double v : rep.growth.normalized) normalized.push_back(n(v));
  out["shapiro"] = {{"radius", rep.radius},
                    {"sampled", rep.sampled},
                    {"pass_rate", rep.pass_rate},
                    {"pointwise", pts},
                    {"growth",
                     {{"norm", rep.growth.norm.name()},
                      {"r_grid", rep.growth.r_grid},
                      {"norms", norms},
                      {"normalized", normalized},
                      {"peak_ratio", n(rep.growth.peak_ratio)},
                      {"plateau_spread", n(rep.growth.plateau_spread)},
                      {"verdict", std::string(to_string(rep.growth.verdict))}}}};
  out["conclusion"] = std::string(to_string(rep.conclusion));
  return out;
}

RunResult run(const CommandSpec& cmd) {
  RunResult res;
  ScanReport& rep = res.report;
  rep.command = cmd.subcommand;
  if (!cmd.function_spec.empty()) rep.set("spec", cmd.function_spec);
  if (!cmd.name.empty()) rep.set("name", cmd.name);
  if (!cmd.p.empty()) {
    std::string ps;
    for (const auto& p : cmd.p) ps += (ps.empty() ? "" : ",") + p;
    rep.set("p", ps);
  }
  if (!cmd.r_grid.empty()) rep.set("r_grid", join(cmd.r_grid));
  rep.set("abs_tol", num(cmd.quad.abs_tol));
  rep.set("rel_tol", num(cmd.quad.rel_tol));
  rep.set("max_depth", std::to_string(cmd.quad.max_depth));
  rep.set("osc_terms", std::to_string(cmd.quad.osc_accel_terms));
  rep.set("bound_tol", num(cmd.tol));
  rep.set("verdict_rule", "o-small: last/peak normalized <= 0.05; O-bounded: r >= 0.9 within 20% of last");
  try {
    cmd.quad.validate();
    const std::string& s = cmd.subcommand;
    if (s == "kernel-norms") {
      res.exit_code = kernel_norms(cmd, rep);
    } else if (s == "scan") {
      res.exit_code = scan(cmd, rep);
    } else if (s == "contraction") {
      res.exit_code = contraction(cmd, rep);
    } else if (s == "converge") {
      res.exit_code = converge(cmd, rep);
    } else if (s == "sharpness") {
      res.exit_code = sharpness(cmd, rep);
    } else if (s == "slowdecay") {
      res.exit_code = slowdecay(cmd, rep);
    } else if (s == "bv-check") {
      res.exit_code = bv_check(cmd, rep);
    } else if (s == "dirichlet") {
      res.exit_code = dirichlet(cmd, rep);
    } else if (s == "example") {
      res.exit_code = example(cmd, rep);
    } else if (s == "suite") {
      res.exit_code = suite(cmd, rep);
    } else {
      throw Error(ErrorKind::kInvalidArgument, "unknown subcommand '" + s + "'");
    }
  } catch (const Error& e) {
    rep.set("error", std::string(e.what()));
    res.exit_code = 2;
  }
  rep.sort_rows();
  return res;
}

}  // namespace hkp::cli
