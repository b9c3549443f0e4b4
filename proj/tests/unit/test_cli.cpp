#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "hkp/error.hpp"
#include "hkp/poisson.hpp"
#include "hkp_cli/commands.hpp"
#include "hkp_cli/report.hpp"
#include "hkp_cli/spec_parser.hpp"

using namespace hkp;
using namespace hkp::cli;
using std::numbers::pi;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("function specs") {
  auto f = parse_function("sine(3) + 0.5*chi(-1, 0)");
  CHECK(f(-0.5) == doctest::Approx(std::sin(-1.5) + 0.5));
  CHECK(f(0.5) == doctest::Approx(std::sin(1.5)));
  auto g = parse_function("-(cosine(2, 3) - const(1)) / 2");
  CHECK(g(0.4) == doctest::Approx(-(3 * std::cos(0.8) - 1) / 2));
  auto h = parse_function("2*pi*const(1)");
  CHECK(h(0.0) == doctest::Approx(2 * pi));
  CHECK_NOTHROW(parse_function("example-b"));
  CHECK_NOTHROW(parse_function("example-c()"));
  CHECK_NOTHROW(parse_function("slowdecay(kind=exp)"));
  CHECK_NOTHROW(parse_function("slowdecay(kind=poly, p=2)"));
}

TEST_CASE("measure specs") {
  auto mu = parse_measure("dirac(0) + atoms(1, 0.5, 2, 0.25)");
  CHECK(mu.total_mass() == doctest::Approx(1.75));
  CHECK(mu.atoms().size() == 3);
  auto nu = parse_measure("2*dirac(0.5, 3)");
  CHECK(nu.total_mass() == doctest::Approx(6.0));
  CHECK(std::holds_alternative<RadialMeasure>(parse_spec("dirac(1)")));
}

TEST_CASE("spec errors carry the column") {
  auto mix = parse_error("0.5*chi(-1,0) + dirac(0)");
  CHECK(mix.find("column 15") != std::string::npos);
  CHECK(mix.find("mixing function and measure") != std::string::npos);
  CHECK(parse_error("foo(1)").find("unknown identifier") != std::string::npos);
  CHECK(parse_error("3").find("const(c)") != std::string::npos);
  CHECK(parse_error("sine(2").find("column 7") != std::string::npos);
  CHECK(parse_error("dirac(0) - dirac(1)").find("positive") != std::string::npos);
  CHECK(parse_error("chi(1)").find("column 1") != std::string::npos);
  CHECK_THROWS_AS(parse_measure("sine(1)"), Error);
}

TEST_CASE("norm and list options") {
  CHECK(parse_norm("alexiewicz").alexiewicz);
  CHECK(std::isinf(parse_norm("inf").p));
  CHECK(parse_norm("2.5").p == 2.5);
  CHECK_THROWS_AS(parse_norm("0.5"), Error);
  CHECK_THROWS_AS(parse_norm("two"), Error);
  auto v = parse_real_list("0, 0.5,0.9");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == 0.5);
  CHECK_THROWS_AS(parse_real_list("0.5,,0.9"), Error);
}

TEST_CASE("kernel-norms rows match the closed form") {
  CommandSpec cmd;
  cmd.subcommand = "kernel-norms";
  cmd.p = {"1", "2", "3"};
  cmd.r_grid = {0.5, 0.9};
  auto res = run(cmd);
  CHECK(res.exit_code == 0);
  REQUIRE(res.report.rows.size() == 6);
  for (const auto& row : res.report.rows) {
    CHECK(row.verdict == kPass);
    CHECK(row.lhs == doctest::Approx(kernel_lp_norm(row.r, std::stod(row.p))).epsilon(1e-14));
  }
}

TEST_CASE("example c diverges as expected") {
  CommandSpec cmd;
  cmd.subcommand = "example";
  cmd.name = "c";
  auto res = run(cmd);
  CHECK(res.exit_code == 0);
  REQUIRE(!res.report.rows.empty());
  for (const auto& row : res.report.rows) CHECK(row.verdict == "diverges");

  cmd.expect = "o-small";
  CHECK(run(cmd).exit_code == 1);
}

TEST_CASE("errors become exit code 2") {
  CommandSpec cmd;
  cmd.subcommand = "scan";
  cmd.function_spec = "0.5*chi(-1,0) + dirac(0)";
  auto res = run(cmd);
  CHECK(res.exit_code == 2);
  cmd.subcommand = "bogus";
  CHECK(run(cmd).exit_code == 2);
}

TEST_CASE("CSV and JSON writers") {
  ScanReport rep;
  rep.command = "demo";
  rep.set("note", "a, b");
  rep.rows.push_back({"ctx", 0.5, "", 1.0, kInfinity, std::nan(""), kPass});
  std::ostringstream csv;
  write_csv(csv, rep);
  std::string s = csv.str();
  CHECK(s.find("# command: demo\n") == 0);
  CHECK(s.find("context,r,p,lhs,rhs,normalized,verdict\n") != std::string::npos);
  CHECK(s.find("ctx,0.5,,1,inf,,pass\n") != std::string::npos);
  CHECK(s.find("# note: a, b\n") != std::string::npos);

  std::ostringstream js;
  write_json(js, rep, "2026-01-01T00:00:00Z");
  auto j = nlohmann::json::parse(js.str());
  CHECK(j["metadata"]["timestamp"] == "2026-01-01T00:00:00Z");
  CHECK(j["rows"][0]["rhs"] == "inf");
  CHECK(j["rows"][0]["normalized"].is_null());
}
