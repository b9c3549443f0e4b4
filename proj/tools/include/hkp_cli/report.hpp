#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkp/bound_report.hpp"

namespace hkp::cli {

inline constexpr double kNa = std::numeric_limits<double>::quiet_NaN();

/// Verdict vocabulary for report rows.
inline constexpr const char* kPass = "pass";
inline constexpr const char* kFail = "fail";

struct Row {
  std::string context;
  double r = kNa;
  std::string p;
  double lhs = kNa;
  double rhs = kNa;
  double normalized = kNa;
  std::string verdict;
};

struct ScanReport {
  std::string command;
  /// Ordered key/value metadata (specs, tolerances, expected verdict, error).
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Row> rows;
  /// Structured payload for commands that have one (dirichlet).
  nlohmann::ordered_json payload;

  void set(const std::string& key, const std::string& value);
  /// Stable sort by (context, r).
  void sort_rows();
};

/// Row from a BoundReport; a trailing " r=<value>" in the context moves to
/// the r column.
Row row_from(const BoundReport& b, const std::string& p = "");

/// %.17g, with "inf"/"-inf" and an empty field for NaN.
std::string format_number(double v);

void write_csv(std::ostream& os, const ScanReport& report);
/// `timestamp` empty omits the field.
void write_json(std::ostream& os, const ScanReport& report, const std::string& timestamp);

}  // namespace hkp::cli
