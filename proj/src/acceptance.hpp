#pragma once

#include <functional>
#include <string>
#include <vector>

// The acceptance suite: nine numbered criteria, each reporting pass/fail
// with a one-line detail and its wall time.
namespace hypschwarz::acceptance {

inline constexpr int kCriterionCount = 9;

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
  double budget_seconds;  // 0 when the criterion has no runtime limit
};

/// Runs one criterion (1..9). Library errors inside a criterion are caught
/// and reported as a failure.
CriterionResult run_criterion(int id);

/// Runs all criteria in order, invoking `on_result` after each.
std::vector<CriterionResult> run_all(
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion 3 PASS <title>: <detail>", plus the runtime when requested.
std::string format_line(const CriterionResult& result, bool with_timing);

}  // namespace hypschwarz::acceptance
