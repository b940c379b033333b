#pragma once

#include <string>
#include <vector>

namespace grkhs::cli {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // measured quantities; deterministic text
};

/// One acceptance criterion, 1..11. Criterion 12 (determinism) needs a
/// second run and is handled by run_acceptance.
CriterionResult run_criterion(int id);

/// All criteria in order. Criterion 12 re-runs 1..11 and compares the
/// rendered lines byte for byte.
std::vector<CriterionResult> run_acceptance();

/// "criterion <id> PASS|FAIL <title>: <detail>".
std::string render(const CriterionResult& r);

}  // namespace grkhs::cli
