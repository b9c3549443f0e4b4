#pragma once

#include <string>
#include <utility>

namespace hkp {

/// One inequality check: pass iff slack >= -tol.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string context;

  static BoundReport make(double lhs, double rhs, double tol, std::string context) {
    BoundReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tol = tol;
    r.pass = r.slack >= -tol;
    r.context = std::move(context);
    return r;
  }
};

}  // namespace hkp
