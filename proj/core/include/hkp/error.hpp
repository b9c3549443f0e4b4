#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hkp {

enum class ErrorKind {
  kDomain,
  kInvalidArgument,
  kUndefinedAtSingularity,
  kNotBoundedVariation,
  kAccuracyFailure,
  kUnhandledSingularity,
  kNotAbsolutelyIntegrable,
  kNotInHardySpace,
  kPsiNotLittleOh,
  kInvalidProfile,
  kParse,
  kIo,
};

/// Stable kebab-case name used in reports ("accuracy-failure", ...).
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an adaptive rule cannot reach the requested tolerance.
/// Carries the best estimate found so callers can still report it.
class AccuracyFailure : public Error {
 public:
  AccuracyFailure(double best_estimate, double error_estimate, const std::string& what);

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace hkp
