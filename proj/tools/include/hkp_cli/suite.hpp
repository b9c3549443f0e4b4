#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hkp::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs acceptance criteria 1-14 in order; `on_result` sees each as it finishes.
std::vector<CriterionResult> run_suite(const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace hkp::cli
