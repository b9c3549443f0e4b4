#include "hkp/error.hpp"

namespace hkp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain: return "domain-error";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kUndefinedAtSingularity: return "undefined-at-singularity";
    case ErrorKind::kNotBoundedVariation: return "not-bounded-variation";
    case ErrorKind::kAccuracyFailure: return "accuracy-failure";
    case ErrorKind::kUnhandledSingularity: return "unhandled-singularity";
    case ErrorKind::kNotAbsolutelyIntegrable: return "not-absolutely-integrable";
    case ErrorKind::kNotInHardySpace: return "not-in-hHK";
    case ErrorKind::kPsiNotLittleOh: return "psi-not-little-oh";
    case ErrorKind::kInvalidProfile: return "invalid-profile";
    case ErrorKind::kParse: return "parse-error";
    case ErrorKind::kIo: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

AccuracyFailure::AccuracyFailure(double best_estimate, double error_estimate,
                                 const std::string& what)
    : Error(ErrorKind::kAccuracyFailure, what),
      best_estimate_(best_estimate),
      error_estimate_(error_estimate) {}

}  // namespace hkp
