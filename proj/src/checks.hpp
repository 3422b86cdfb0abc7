// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopstar {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  int order = 8;
};

/// Suite names accepted by run_checks, without "all".
const std::vector<std::string>& check_suites();

/// Runs one suite, or every suite for "all". Deterministic for a fixed seed.
/// Throws Error(InvalidArgument) on an unknown suite name.
std::vector<CheckResult> run_checks(const std::string& suite, const CheckOptions& options = {});

}  // namespace loopstar
