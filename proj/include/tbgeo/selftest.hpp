#pragma once

// The built-in verification suite: seven numeric criteria covering the
// operator identities, the tangent-bundle oracle, the closed forms on the
// model charts, the first variation, and the ODE blow-up demonstration.

#include <iosfwd>
#include <string>
#include <vector>

namespace tbg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Run the suite. An empty filter runs everything; otherwise only criteria
/// whose name contains the filter substring run.
std::vector<CriterionResult> run_selftest(const std::string& filter = "");

/// One line per criterion; returns true when every selected criterion passed.
bool print_selftest(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace tbg
