#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace simplex_margin {

struct PropertyOptions {
  std::uint64_t seed = 20260810;
  /// Testing hook: perturbs the analytic gradients fed to the
  /// finite-difference check so the suite must report a failure.
  bool inject_gradient_fault = false;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string details;
};

/// Runs the statistical/analytic property checks backing the library:
/// codebook invariants, finite-difference gradient checks, the binary
/// closed-form minimizer oracle, the risk-vs-Hamming and decode-stability
/// inequalities, and the generator margin laws.
std::vector<PropertyResult> run_property_suite(const PropertyOptions& options);

bool all_passed(const std::vector<PropertyResult>& results);

/// Prints one line per check to stdout; returns the number of failures.
int print_property_report(const PropertyOptions& options);

}  // namespace simplex_margin
