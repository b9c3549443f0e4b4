#pragma once

#include <istream>
#include <vector>

namespace hkp::detail {

/// Numeric rows of a CSV stream; a non-numeric first row is taken as header.
std::vector<std::vector<double>> read_numeric_csv(std::istream& is, std::size_t columns);

}  // namespace hkp::detail
