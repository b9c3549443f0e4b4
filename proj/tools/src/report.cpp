#include "hkp_cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hkp::cli {

void ScanReport::set(const std::string& key, const std::string& value) {
  for (auto& kv : metadata) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

void ScanReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.context != b.context) return a.context < b.context;
    if (std::isnan(a.r) || std::isnan(b.r)) return !std::isnan(a.r) && std::isnan(b.r);
    return a.r < b.r;
  });
}

Row row_from(const BoundReport& b, const std::string& p) {
  Row row;
  row.context = b.context;
  std::size_t at = row.context.rfind(" r=");
  if (at != std::string::npos) {
    try {
      std::size_t used = 0;
      std::string tail = row.context.substr(at + 3);
      double r = std::stod(tail, &used);
      if (used == tail.size()) {
        row.r = r;
        row.context.erase(at);
      }
    } catch (const std::exception&) {
    }
  }
  row.p = p;
  row.lhs = b.lhs;
  row.rhs = b.rhs;
  row.verdict = b.pass ? kPass : kFail;
  return row;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const ScanReport& report) {
  os << "# command: " << report.command << '\n';
  for (const auto& [k, v] : report.metadata) os << "# " << k << ": " << v << '\n';
  os << "context,r,p,lhs,rhs,normalized,verdict\n";
  for (const Row& row : report.rows) {
    os << csv_field(row.context) << ',' << format_number(row.r) << ',' << csv_field(row.p) << ','
       << format_number(row.lhs) << ',' << format_number(row.rhs) << ',' << format_number(row.normalized) << ','
       << row.verdict << '\n';
  }
}

void write_json(std::ostream& os, const ScanReport& report, const std::string& timestamp) {
  nlohmann::ordered_json meta;
  meta["command"] = report.command;
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  if (!timestamp.empty()) meta["timestamp"] = timestamp;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& row : report.rows) {
    rows.push_back({{"context", row.context},
                    {"r", json_number(row.r)},
                    {"p", row.p},
                    {"lhs", json_number(row.lhs)},
                    {"rhs", json_number(row.rhs)},
                    {"normalized", json_number(row.normalized)},
                    {"verdict", row.verdict}});
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = meta;
  doc["rows"] = rows;
  if (!report.payload.is_null()) doc["report"] = report.payload;
  os << doc.dump(2) << '\n';
}

}  // namespace hkp::cli
