// Copyright 2026 The qdbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Self-check suites run by `qdb verify`. The fast level compares small
// instances (at most 10 qubits) against the dense and closed-form oracles;
// the full level adds the transfer-route vs imbalanced-route extension sweep.

#include <string>
#include <vector>

namespace qdb {

enum class VerifyLevel { kFast, kFull };

VerifyLevel parse_verify_level(const std::string& name);
std::string to_string(VerifyLevel level);

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct VerifyReport {
  std::string level;
  std::vector<CheckResult> checks;

  bool passed() const;
  friend bool operator==(const VerifyReport&, const VerifyReport&) = default;
};

VerifyReport run_verify(VerifyLevel level);

std::string report_to_json(const VerifyReport& report);
/// Throws kParse on malformed input.
VerifyReport report_from_json(const std::string& text);

}  // namespace qdb
