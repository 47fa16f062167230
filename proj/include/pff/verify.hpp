#pragma once

#include <string>
#include <vector>

namespace pff {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Acceptance checks, one group per numbered criterion. Each function is
/// self-contained and prints nothing; the callers render pass/fail lines.
std::vector<CheckResult> verify_critical_strength();       // 1
std::vector<CheckResult> verify_table1();                  // 2 (minutes)
std::vector<CheckResult> verify_accumulation_equivalence();// 3
std::vector<CheckResult> verify_alpha0_roundtrip();        // 4
std::vector<CheckResult> verify_endurance();               // 5
std::vector<CheckResult> verify_load_ratio_trends();       // 6
std::vector<CheckResult> verify_single_element_oracle();   // 7
std::vector<CheckResult> verify_notched_trends();          // 8 (tens of minutes)
std::vector<CheckResult> verify_tangents();                // 9
std::vector<CheckResult> verify_split_consistency();       // 10

/// All criteria in order 1..10.
std::vector<CheckResult> verify_all();

/// Named sub-suites exposed by the command line: "invariants" (tangent,
/// split and accumulation property checks), "table1", "oracle".
std::vector<CheckResult> verify_suite(const std::string& name);

/// Renders results as one line per check; returns true when all passed.
bool report(const std::vector<CheckResult>& results);

}  // namespace pff
