// Copyright 2026 The qdistill authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance gate: runs the full verification suite and prints one
// pass/fail line per check.  Exits nonzero if any check fails.

#include <cstdio>

#include "qdistill/verify.hpp"

int main() {
  const std::vector<qdistill::CheckResult> checks = qdistill::run_acceptance_checks();
  for (const qdistill::CheckResult& check : checks) {
    std::printf("[%s] %2d. %s — %s (%.2f s)\n", check.passed ? "PASS" : "FAIL", check.id,
                check.name.c_str(), check.detail.c_str(), check.seconds);
  }
  const bool ok = qdistill::all_passed(checks);
  std::printf("%s\n", ok ? "acceptance: all checks passed"
                         : "acceptance: SOME CHECKS FAILED");
  return ok ? 0 : 1;
}
