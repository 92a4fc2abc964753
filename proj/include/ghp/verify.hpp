/* Apache License, Version 2.0 */
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ghp {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double time_budget_s = 0.0;  // 0 means untimed
  std::function<std::pair<bool, std::string>()> run;
};

// The quantitative release gate: every inequality and oracle-equivalence
// check with its tolerance pinned in code.
const std::vector<Criterion>& verification_criteria();

// Runs the criteria whose id or name matches any filter entry (all when the
// filter is empty), streaming one pass/fail line each to `progress` if given.
std::vector<CriterionResult> run_verification(
    const std::vector<std::string>& filter = {}, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace ghp
