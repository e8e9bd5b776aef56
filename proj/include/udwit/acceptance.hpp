#pragma once

#include <string>
#include <vector>

namespace udwit {

struct CriterionResult {
  int index = 0;       // 1-based position in the fixed suite order
  std::string name;
  bool pass = false;
  std::string detail;  // sample counts, worst values, pinned tolerances
  double seconds = 0.0;
};

// Runs the eight-part acceptance suite in order.  Pure and deterministic;
// `jobs` > 1 parallelizes the independent sample loops.  Never throws:
// an escaping exception fails its criterion with the message as detail.
std::vector<CriterionResult> run_acceptance(int jobs = 1);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace udwit
