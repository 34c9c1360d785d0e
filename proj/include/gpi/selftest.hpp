#pragma once

// Identity checks run by `gpi selftest`: each suite evaluates one identity
// on a batch of points and reports how many held.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gpi {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double tolerance = 0.0;
  double worst_rel_err = 0.0;
  std::string first_failure;  // empty when every case held
};

struct SelftestOptions {
  std::uint64_t seed = 20240611;
  bool inject_fault = false;  // negative control: flips a sign in dual_path_gap
};

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts = {});

bool all_passed(const std::vector<SuiteResult>& suites);
std::string selftest_text(const std::vector<SuiteResult>& suites);
std::string selftest_json(const std::vector<SuiteResult>& suites);

}  // namespace gpi
