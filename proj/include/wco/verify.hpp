#pragma once

// Invariant suites run by `wco verify`. Each suite returns a pass flag, the
// names of failed checks and a JSON table of what was measured.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wco/report.hpp"

namespace wco::verify {

struct Options {
  std::optional<double> alpha;  // overrides the suite's α sweep when set
  std::optional<int> d;         // overrides the dimension sweep {1, 2, 5}
  std::uint64_t seed = 42;
  int K = 14;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> failures;
  report::Json details;
};

const std::vector<std::string>& suite_names();

/// Throws ValidationError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const Options& opts);

}  // namespace wco::verify
