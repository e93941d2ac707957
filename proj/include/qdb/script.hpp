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

// Operation scripts. One command per line (or separated by ';'):
//
//   prepare k=4 l=4 m=2          # mode=general|balanced
//   write f=1 d=10               # mode=cnot|swap
//   extend-imbalanced l=4 z=1    # route=direct|marker, ldd=<l''>
//   extend l=3
//   read-copy f=2                # or f=all
//   read-projective f=1
//   remove f=3                   # mode=reservoir|projective (needs --seed)
//   permute pi=1,0,3,2           # or i=0 j=2
//   release-sensor
//   plan k=4 l=4
//   emit                         # what=history|last, decompose=0|1
//   dump
//   save
//
// Artifacts are named after the command index: dump_<i>.<json|csv>,
// circuit_<i>.txt, plan_<i>[_<chunk>].json, descriptor_<i>.json, read_<i>.json,
// remove_<i>.json.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdb/dump.hpp"
#include "qdb/qdb.hpp"

namespace qdb {

struct ScriptCommand {
  int index = 0;  // 0-based position in the script
  int line = 0;   // 1-based source line
  std::string name;
  std::map<std::string, std::string> args;
};

/// Throws kParse with "line N: ..." on malformed input.
std::vector<ScriptCommand> parse_script(std::string_view text);

/// An Error tagged with the failing command.
class CommandError : public Error {
 public:
  CommandError(const ScriptCommand& command, const Error& cause);
  int command_index() const noexcept { return index_; }

 private:
  int index_;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  DumpFormat format = DumpFormat::kJson;
  /// Database to start from instead of an initial `prepare`.
  std::optional<QdbDescriptor> initial;
};

struct RunResult {
  std::vector<std::filesystem::path> artifacts;
  std::optional<QdbState> final_state;
};

/// Checks every command against the evolving descriptor without simulating.
/// Throws CommandError (kParse or kSemantic) on the first invalid command.
void dry_run(const std::vector<ScriptCommand>& script, const RunOptions& options);

/// dry_run, then execution. Throws CommandError on the first failure.
RunResult run_script(const std::vector<ScriptCommand>& script, const RunOptions& options);

}  // namespace qdb
