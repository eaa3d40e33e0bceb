#ifndef PHASESTAR_CORE_SELFTEST_HPP
#define PHASESTAR_CORE_SELFTEST_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace phasestar::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;       // key measured numbers, human readable
  nlohmann::json metrics;   // same numbers, machine readable
};

// Runs the numeric verification battery (criteria 1..9).  Deterministic:
// fixed seeds, fixed summation trees.  The tenth check, byte-identical
// reports across reruns, is performed by callers that invoke this twice.
std::vector<CriterionResult> run_all();

nlohmann::json report_json(const std::vector<CriterionResult>& results,
                           double timing_ms);
std::string summary_text(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace phasestar::selftest

#endif
