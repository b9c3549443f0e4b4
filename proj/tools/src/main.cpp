#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hkp/error.hpp"
#include "hkp_cli/commands.hpp"

namespace {

struct Options {
  hkp::cli::CommandSpec cmd;
  std::string p_list;
  std::string r_list;
  std::string expect;
  std::string output;
  std::string format;
  std::string family;
  std::string witness;
  std::string witness_r;
};

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(s.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p_list, "Norm selectors: comma list of reals >= 1, inf, alexiewicz");
  sub->add_option("--r", o.r_list, "Comma list of radii (default grid when omitted)");
  sub->add_option("--expect", o.expect, "Expected verdict");
  sub->add_option("-o,--out", o.output, "Output file (stdout when omitted)");
  sub->add_option("--format", o.format, "csv or json (default from --out extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--abs-tol", o.cmd.quad.abs_tol, "Quadrature absolute tolerance");
  sub->add_option("--rel-tol", o.cmd.quad.rel_tol, "Quadrature relative tolerance");
  sub->add_option("--max-depth", o.cmd.quad.max_depth, "Quadrature bisection depth");
  sub->add_option("--osc-terms", o.cmd.quad.osc_accel_terms, "Oscillatory tail averaging levels");
  sub->add_option("--tol", o.cmd.tol, "Slack allowed in bound checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson integrals of Henstock-Kurzweil boundary data on the unit disc"};
  app.require_subcommand(1);
  Options o;

  auto* kn = app.add_subcommand("kernel-norms", "||Phi_r||_p closed form against quadrature");
  auto* sc = app.add_subcommand("scan", "Growth scan of ||u_r|| for u = P[f] or P[mu]");
  auto* ct = app.add_subcommand("contraction", "||u_r|| <= ||f|| in the Alexiewicz norm");
  auto* cv = app.add_subcommand("converge", "||u_r - f|| along the r-grid");
  auto* sh = app.add_subcommand("sharpness", "Spike construction and sine family norms");
  auto* sd = app.add_subcommand("slowdecay", "Slow decay construction certificates");
  auto* bv = app.add_subcommand("bv-check", "Sup and variation bounds for P[g], g of bounded variation");
  auto* di = app.add_subcommand("dirichlet", "Coefficient and pointwise uniqueness diagnostics");
  auto* ex = app.add_subcommand("example", "Growth scans of the closed-form examples");
  auto* su = app.add_subcommand("suite", "Full acceptance run");

  for (auto* sub : {kn, sc, ct, cv, sh, sd, bv, di, ex, su}) common(sub, o);
  for (auto* sub : {sc, ct, cv, bv, di}) sub->add_option("--f", o.cmd.function_spec, "Function or measure spec");
  for (auto* sub : {di, ex}) sub->add_option("--name", o.cmd.name, "Example name: b or c");
  ex->add_option("--scan", o.p_list, "Norm for the scan (alias of --p)");
  sh->add_option("--exponent", o.cmd.exponent, "psi = (1 - r)^-exponent");
  sh->add_option("--count", o.cmd.count, "Sequence length");
  sh->add_option("--certify", o.cmd.certify, "Retained indices to certify");
  sh->add_option("--family", o.family, "Comma list of n for the sine family rows");
  sh->add_option("--spikes-out", o.cmd.spikes_out, "Write the spike table as CSV");
  sd->add_option("--profile", o.cmd.profile, "linear, exp, or an r,A CSV file");
  bv->add_option("--witness", o.witness, "a,b for the chi_[a,b) jump witness");
  bv->add_option("--witness-r", o.witness_r, "Radii for the jump witness (default 0.999)");
  di->add_option("--n", o.cmd.n_coeffs, "Highest Fourier order checked");
  di->add_option("--theta", o.cmd.n_theta, "Number of theta midpoints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  hkp::cli::CommandSpec& cmd = o.cmd;
  cmd.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (!o.p_list.empty()) cmd.p = split(o.p_list);
    if (!o.r_list.empty()) cmd.r_grid = hkp::cli::parse_real_list(o.r_list);
    if (!o.expect.empty()) cmd.expect = o.expect;
    if (!o.family.empty()) {
      cmd.family.clear();
      for (double v : hkp::cli::parse_real_list(o.family)) cmd.family.push_back(static_cast<int>(v));
    }
    if (!o.witness.empty()) {
      auto ab = hkp::cli::parse_real_list(o.witness);
      if (ab.size() != 2) throw hkp::Error(hkp::ErrorKind::kParse, "--witness takes a,b");
      cmd.witness = std::make_pair(ab[0], ab[1]);
    }
    if (!o.witness_r.empty()) cmd.witness_r = hkp::cli::parse_real_list(o.witness_r);
    for (const auto& p : cmd.p) hkp::cli::parse_norm(p);
  } catch (const hkp::Error& e) {
    std::cerr << "hkp: " << e.what() << '\n';
    return 2;
  }
  cmd.base_dir = std::filesystem::current_path();

  hkp::cli::RunResult res = hkp::cli::run(cmd);

  std::string format = o.format;
  if (format.empty()) format = o.output.size() > 5 && o.output.ends_with(".json") ? "json" : "csv";
  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      std::cerr << "hkp: cannot write '" << o.output << "'\n";
      return 2;
    }
  }
  std::ostream& os = o.output.empty() ? std::cout : file;
  if (format == "json") {
    hkp::cli::write_json(os, res.report, utc_timestamp());
  } else {
    hkp::cli::write_csv(os, res.report);
  }
  for (const auto& [k, v] : res.report.metadata) {
    if (k == "error") std::cerr << "hkp: " << v << '\n';
  }
  return res.exit_code;
}
