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

// qdb: build, run and verify quantum databases from the command line.
//
//   qdb run script.txt [--descriptor db.json]
//   qdb build db.json
//   qdb plan --k 4 --l 4
//   qdb simulate circuit.txt
//   qdb verify --level fast
//
// Exit codes: 0 ok, 2 parse, 3 semantic, 4 capacity, 5 verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qdb/circuit_text.hpp"
#include "qdb/descriptor_io.hpp"
#include "qdb/dump.hpp"
#include "qdb/extend.hpp"
#include "qdb/ops.hpp"
#include "qdb/script.hpp"
#include "qdb/verify.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitCapacity = 4;
constexpr int kExitVerification = 5;

int exit_code(qdb::ErrorKind kind) {
  switch (kind) {
    case qdb::ErrorKind::kParse: return kExitParse;
    case qdb::ErrorKind::kCapacity: return kExitCapacity;
    case qdb::ErrorKind::kVerification:
    case qdb::ErrorKind::kConvergence: return kExitVerification;
    default: return kExitSemantic;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) qdb::fail(qdb::ErrorKind::kParse, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) qdb::fail(qdb::ErrorKind::kSemantic, "cannot write " + path.string());
  std::cout << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum database simulator"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int max_qubits = qdb::max_qubits();
  std::string format = "json";
  app.add_option("--seed", seed, "Seed for sampling commands");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--max-qubits", max_qubits, "Statevector qubit cap")->check(CLI::Range(1, 40));
  app.add_option("--format", format, "Amplitude dump format")->check(CLI::IsMember({"json", "csv"}));

  auto* run = app.add_subcommand("run", "Execute an operation script");
  std::string script_path;
  std::string descriptor_path;
  run->add_option("script", script_path, "Script file")->required();
  run->add_option("--descriptor", descriptor_path, "Start from this database instead of a prepare");

  auto* build = app.add_subcommand("build", "Build a database from a descriptor and dump it");
  std::string build_path;
  build->add_option("descriptor", build_path, "Descriptor JSON")->required();

  auto* plan = app.add_subcommand("plan", "Report an amplitude-transfer plan");
  int plan_k = 0;
  int plan_l = 0;
  plan->add_option("--k", plan_k, "Number of entries")->required();
  plan->add_option("--l", plan_l, "Reservoir size")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a circuit text file from |0...0>");
  std::string circuit_path;
  simulate_cmd->add_option("circuit", circuit_path, "Circuit text")->required();

  auto* verify = app.add_subcommand("verify", "Run the self-check suites");
  std::string level = "fast";
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    qdb::set_max_qubits(max_qubits);
    const qdb::DumpFormat dump_format = qdb::parse_dump_format(format);
    const std::filesystem::path out{out_dir};
    const std::string ext = dump_format == qdb::DumpFormat::kCsv ? ".csv" : ".json";

    if (*run) {
      qdb::RunOptions options{.seed = seed, .out_dir = out, .format = dump_format};
      if (!descriptor_path.empty()) options.initial = qdb::descriptor_from_json(read_file(descriptor_path));
      const qdb::RunResult r = qdb::run_script(qdb::parse_script(read_file(script_path)), options);
      for (const auto& p : r.artifacts) std::cout << p.string() << "\n";
    } else if (*build) {
      const qdb::QdbState q = qdb::build(qdb::descriptor_from_json(read_file(build_path)));
      write_file(out / ("state" + ext), qdb::dump_amplitudes(q.state, q.layout.labels(), dump_format));
      write_file(out / "circuit.txt", qdb::emit_text(*q.preparation));
    } else if (*plan) {
      std::cout << qdb::plan_to_json(qdb::plan_transfer(plan_k, plan_l));
    } else if (*simulate_cmd) {
      const qdb::Circuit c = qdb::parse_text(read_file(circuit_path));
      std::cout << qdb::dump_amplitudes(qdb::simulate(c), c.labels(), dump_format);
    } else if (*verify) {
      const qdb::VerifyReport report = qdb::run_verify(qdb::parse_verify_level(level));
      std::cout << qdb::report_to_json(report);
      return report.passed() ? 0 : kExitVerification;
    }
  } catch (const qdb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return 0;
}
