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

#include "qdb/circuit_text.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace qdb {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string qubit(int q) { return "q[" + std::to_string(q) + "]"; }

std::string gate_name(const GateSpec& g) {
  switch (g.kind) {
    case GateKind::kY: return g.adjoint ? "ydg" : "y";
    case GateKind::kYtilde: return g.adjoint ? "ytdg" : "yt";
    default: return to_string(g.kind);
  }
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    parse_error(line, "bad number '" + s + "'");
  }
  return v;
}

long long parse_integer(const std::string& s, int line) {
  if (s.empty()) parse_error(line, "missing integer");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE || v < 0) {
    parse_error(line, "bad integer '" + s + "'");
  }
  return v;
}

int parse_qubit(const std::string& tok, int line) {
  if (tok.size() < 4 || tok.compare(0, 2, "q[") != 0 || tok.back() != ']') {
    parse_error(line, "expected q[<n>], got '" + tok + "'");
  }
  return static_cast<int>(parse_integer(tok.substr(2, tok.size() - 3), line));
}

std::vector<std::string> split_params(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string emit_gate(const GateSpec& g) {
  std::string s = gate_name(g);
  switch (g.kind) {
    case GateKind::kRy:
    case GateKind::kY:
    case GateKind::kYtilde:
    case GateKind::kPhase:
      s += "(" + num(g.param) + ")";
      break;
    case GateKind::kTwoLevel:
      s += "(" + std::to_string(g.level_a) + "," + std::to_string(g.level_b) + "," + num(g.param) + ")";
      break;
    default:
      break;
  }
  for (int t : g.targets) s += " " + qubit(t);
  const Polarity* mode = nullptr;
  for (const Control& c : g.controls) {
    if (mode == nullptr || *mode != c.polarity) {
      s += c.polarity == Polarity::kOne ? " ctrl" : " nctrl";
      mode = &c.polarity;
    }
    s += " " + qubit(c.qubit);
  }
  return s;
}

std::string emit_text(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.n_qubits()) + "\n";
  for (int q = 0; q < circuit.n_qubits(); ++q) {
    if (circuit.label(q) != Register::kIndex) {
      out += "label " + qubit(q) + " " + register_char(circuit.label(q)) + "\n";
    }
  }
  for (const GateSpec& g : circuit.gates()) out += emit_gate(g) + "\n";
  return out;
}

Circuit parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<Circuit> circuit;
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::vector<std::string> tok = split_ws(raw);
    if (tok.empty()) continue;

    if (tok[0] == "qubits") {
      if (circuit) parse_error(line_no, "duplicate qubits header");
      if (tok.size() != 2) parse_error(line_no, "expected 'qubits N'");
      const long long n = parse_integer(tok[1], line_no);
      if (n > 62) parse_error(line_no, "too many qubits");
      circuit.emplace(static_cast<int>(n));
      continue;
    }
    if (!circuit) parse_error(line_no, "missing 'qubits N' header");
    if (tok[0] == "label") {
      if (tok.size() != 3 || tok[2].size() != 1) parse_error(line_no, "expected 'label q[i] R'");
      const int q = parse_qubit(tok[1], line_no);
      try {
        circuit->set_label(q, register_from_char(tok[2][0]));
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
      continue;
    }

    std::string name = tok[0];
    std::vector<std::string> params;
    if (const auto open = name.find('('); open != std::string::npos) {
      if (name.back() != ')') parse_error(line_no, "unterminated parameter list");
      params = split_params(name.substr(open + 1, name.size() - open - 2));
      name.erase(open);
    }
    GateSpec g;
    std::size_t want_params = 0;
    std::size_t want_targets = 1;
    if (name == "x") {
      g.kind = GateKind::kX;
    } else if (name == "h") {
      g.kind = GateKind::kH;
    } else if (name == "ry") {
      g.kind = GateKind::kRy;
      want_params = 1;
    } else if (name == "y" || name == "ydg") {
      g.kind = GateKind::kY;
      g.adjoint = name == "ydg";
      want_params = 1;
    } else if (name == "yt" || name == "ytdg") {
      g.kind = GateKind::kYtilde;
      g.adjoint = name == "ytdg";
      want_params = 1;
    } else if (name == "phase") {
      g.kind = GateKind::kPhase;
      want_params = 1;
    } else if (name == "swap") {
      g.kind = GateKind::kSwap;
      want_targets = 2;
    } else if (name == "tlr") {
      g.kind = GateKind::kTwoLevel;
      want_params = 3;
      want_targets = 0;
    } else {
      parse_error(line_no, "unknown gate '" + name + "'");
    }
    if (params.size() != want_params) parse_error(line_no, "wrong parameter count for " + name);
    if (g.kind == GateKind::kTwoLevel) {
      g.level_a = static_cast<BasisIndex>(parse_integer(params[0], line_no));
      g.level_b = static_cast<BasisIndex>(parse_integer(params[1], line_no));
      g.param = parse_double(params[2], line_no);
    } else if (want_params == 1) {
      g.param = parse_double(params[0], line_no);
    }

    const Polarity* mode = nullptr;
    static constexpr Polarity kOne = Polarity::kOne;
    static constexpr Polarity kZero = Polarity::kZero;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (tok[i] == "ctrl") {
        mode = &kOne;
      } else if (tok[i] == "nctrl") {
        mode = &kZero;
      } else if (mode == nullptr) {
        g.targets.push_back(parse_qubit(tok[i], line_no));
      } else {
        g.controls.push_back({parse_qubit(tok[i], line_no), *mode});
      }
    }
    if (want_targets != 0 && g.targets.size() != want_targets) {
      parse_error(line_no, "wrong target count for " + name);
    }
    try {
      circuit->append(std::move(g));
    } catch (const Error& e) {
      parse_error(line_no, e.what());
    }
  }
  if (!circuit) fail(ErrorKind::kParse, "line " + std::to_string(line_no) + ": empty circuit text");
  return *circuit;
}

}  // namespace qdb
