#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace speclat {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the reproduction suite for "chebyshev", "honeycomb" or "all".
/// Criteria touching both examples are restricted to the requested one;
/// criteria not involving it are omitted. Throws InvalidInput for other ids.
std::vector<CriterionResult> run_acceptance(std::string_view scope);

/// One "[PASS]/[FAIL] #id title (seconds) detail" line per result.
void print_results(const std::vector<CriterionResult>& results, std::ostream& os);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace speclat
