#include "csv.hpp"

#include <cctype>
#include <sstream>

#include "hkp/error.hpp"

namespace hkp::detail {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

}  // namespace

std::vector<std::vector<double>> read_numeric_csv(std::istream& is, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (rows.empty() && lineno == 1 && !cells.empty()) {
      char c = cells[0].empty() ? 'x' : cells[0][0];
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) continue;
    }
    if (cells.size() != columns) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(columns) + " columns");
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, lineno));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hkp::detail
