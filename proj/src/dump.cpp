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

#include "qdb/dump.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qdb {
namespace {

constexpr Register kOrder[] = {Register::kIndex, Register::kData, Register::kAncilla, Register::kSensor};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string annotate_bits(BasisIndex index, const std::vector<Register>& labels) {
  std::string out;
  for (Register r : kOrder) {
    std::string bits;
    for (int q = static_cast<int>(labels.size()) - 1; q >= 0; --q) {
      if (labels[static_cast<std::size_t>(q)] == r) bits.push_back(((index >> q) & 1U) ? '1' : '0');
    }
    if (bits.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += register_char(r);
    out += "=" + bits;
  }
  return out;
}

std::vector<AmplitudeRecord> amplitude_records(const StateVector& state,
                                               const std::vector<Register>& labels) {
  if (labels.size() != static_cast<std::size_t>(state.n_qubits())) {
    fail(ErrorKind::kInvalidArgument, "one label per qubit is required");
  }
  std::vector<AmplitudeRecord> out;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const Complex a = state[i];
    if (std::abs(a) < tol::kDumpMagnitude) continue;
    out.push_back({i, annotate_bits(i, labels), a.real(), a.imag()});
  }
  return out;
}

std::string format_dump(const std::vector<AmplitudeRecord>& records, DumpFormat format) {
  if (format == DumpFormat::kCsv) {
    std::string out = "index,bits,re,im\n";
    for (const auto& r : records) {
      out += std::to_string(r.index) + "," + r.bits + "," + num(r.re) + "," + num(r.im) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    arr.push_back({{"index", r.index}, {"bits", r.bits}, {"re", r.re}, {"im", r.im}});
  }
  return arr.dump(2) + "\n";
}

std::string dump_amplitudes(const StateVector& state, const std::vector<Register>& labels,
                            DumpFormat format) {
  return format_dump(amplitude_records(state, labels), format);
}

std::vector<AmplitudeRecord> parse_dump(const std::string& text, DumpFormat format) {
  std::vector<AmplitudeRecord> out;
  if (format == DumpFormat::kJson) {
    try {
      const auto arr = nlohmann::json::parse(text);
      for (const auto& r : arr) {
        out.push_back({r.at("index").get<BasisIndex>(), r.at("bits").get<std::string>(),
                       r.at("re").get<double>(), r.at("im").get<double>()});
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::kParse, std::string("amplitude dump: ") + e.what());
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 4) fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 4 cells");
    try {
      out.push_back({std::stoull(cells[0]), cells[1], std::stod(cells[2]), std::stod(cells[3])});
    } catch (const std::exception&) {
      fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return out;
}

DumpFormat parse_dump_format(const std::string& name) {
  if (name == "json") return DumpFormat::kJson;
  if (name == "csv") return DumpFormat::kCsv;
  fail(ErrorKind::kParse, "unknown format '" + name + "' (json|csv)");
}

}  // namespace qdb
