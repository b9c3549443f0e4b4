#pragma once

#include <filesystem>
#include <string_view>
#include <variant>

#include "hkp/boundary.hpp"

namespace hkp::cli {

using ParsedSpec = std::variant<BoundaryFunction, RadialMeasure>;

/// Recursive-descent parser for function and measure specs:
///
///   expr    := term (('+' | '-') term)*
///   term    := factor (('*' | '/') factor)*
///   factor  := '-' factor | number | 'pi' | call | '(' expr ')'
///   call    := const(c) | sine(n[,amp]) | cosine(n[,amp]) | chi(a,b)
///            | spikes(file) | tab(file) | slowdecay(kind=exp|poly[, p=<real>])
///            | example-b | example-c | dirac(theta[,mass]) | atoms(theta,mass,...)
///
/// Relative file names resolve against `base_dir`. Errors are kParse with the
/// 1-based column of the offending token.
ParsedSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir = {});

BoundaryFunction parse_function(std::string_view text, const std::filesystem::path& base_dir = {});
RadialMeasure parse_measure(std::string_view text, const std::filesystem::path& base_dir = {});

}  // namespace hkp::cli
