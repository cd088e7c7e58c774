#pragma once

// Seeded verification suites. Each check reports a measured value against a
// tolerance; the report text is deterministic for a given seed.

#include <cstdint>
#include <string>
#include <vector>

namespace stratwave {

struct CheckResult {
  std::string suite;
  std::string check;
  double measured = 0.0;
  double tol = 0.0;
  /// Lower-bound checks (negative controls) pass when measured >= tol.
  bool lower_bound = false;

  bool passed() const;
};

/// "PASS|FAIL <suite> <check> <measured> <tol>"
std::string format_check(const CheckResult& r);

const std::vector<std::string>& suite_names();

/// Runs one of adjoint, conservation, variational, symmetry, exact, or all.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace stratwave
