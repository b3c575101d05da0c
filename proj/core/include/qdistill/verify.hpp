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

#pragma once

#include <string>
#include <vector>

/// End-to-end verification checks.
///
/// Each check pins a mathematical property of the simulator to an explicit
/// tolerance and reports pass/fail with a diagnostic detail string.  The
/// set doubles as the acceptance gate for the whole library: `qdistill
/// verify` and the `acceptance` ctest target both run exactly this list.
namespace qdistill {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;   ///< Worst observed error or a short failure note.
  double seconds = 0.0; ///< Wall-clock time of the check.
};

/// Runs all checks in order.  Never throws; an exception inside a check is
/// reported as that check's failure.
std::vector<CheckResult> run_acceptance_checks();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace qdistill
