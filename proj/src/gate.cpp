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

#include "qdb/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qdb {
namespace gates {

GateSpec x(int q) { return GateSpec{.kind = GateKind::kX, .targets = {q}}; }
GateSpec h(int q) { return GateSpec{.kind = GateKind::kH, .targets = {q}}; }
GateSpec ry(int q, double theta) {
  return GateSpec{.kind = GateKind::kRy, .targets = {q}, .param = theta};
}

GateSpec y(int q, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorKind::kInvalidArgument, "Y(p) needs p in [0, 1], got " + std::to_string(p));
  }
  return GateSpec{.kind = GateKind::kY, .targets = {q}, .param = p};
}

GateSpec ytilde(int q, double p) {
  GateSpec g = y(q, p);
  g.kind = GateKind::kYtilde;
  return g;
}

GateSpec phase(int q, double phi) {
  return GateSpec{.kind = GateKind::kPhase, .targets = {q}, .param = phi};
}

GateSpec swap(int a, int b) { return GateSpec{.kind = GateKind::kSwap, .targets = {a, b}}; }

GateSpec two_level(std::vector<int> targets, BasisIndex a, BasisIndex b, double theta) {
  return GateSpec{.kind = GateKind::kTwoLevel,
                  .targets = std::move(targets),
                  .param = theta,
                  .level_a = a,
                  .level_b = b};
}

}  // namespace gates

namespace {

Mat2 ry_matrix(double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

Mat2 transpose(const Mat2& m) { return {m[0], m[2], m[1], m[3]}; }

}  // namespace

Mat2 y_matrix(double p) {
  p = std::clamp(p, 0.0, 1.0);
  const double a = std::sqrt(p);
  const double b = std::sqrt(1.0 - p);
  return {Complex{a}, Complex{-b}, Complex{b}, Complex{a}};
}

Mat2 single_target_matrix(const GateSpec& gate) {
  switch (gate.kind) {
    case GateKind::kX:
      return {Complex{0}, Complex{1}, Complex{1}, Complex{0}};
    case GateKind::kH: {
      const double s = std::numbers::sqrt2 / 2;
      return {Complex{s}, Complex{s}, Complex{s}, Complex{-s}};
    }
    case GateKind::kRy:
      return ry_matrix(gate.param);
    case GateKind::kY: {
      // Real orthogonal, so the adjoint is the transpose.
      const Mat2 m = y_matrix(gate.param);
      return gate.adjoint ? transpose(m) : m;
    }
    case GateKind::kYtilde: {
      // Rotations about one axis add: Y(p) Y(1/2)^-1 = Ry(2 acos sqrt p - pi/2).
      const double theta =
          2 * std::acos(std::sqrt(std::clamp(gate.param, 0.0, 1.0))) - std::numbers::pi / 2;
      return ry_matrix(gate.adjoint ? -theta : theta);
    }
    case GateKind::kPhase:
      return {Complex{1}, Complex{0}, Complex{0}, std::polar(1.0, gate.param)};
    default:
      fail(ErrorKind::kInvalidArgument, "not a single-target gate: " + to_string(gate.kind));
  }
}

bool is_single_target(GateKind kind) {
  return kind != GateKind::kSwap && kind != GateKind::kTwoLevel;
}

int control_count(const GateSpec& gate) { return static_cast<int>(gate.controls.size()); }

GateSpec inverse(const GateSpec& gate) {
  GateSpec g = gate;
  switch (gate.kind) {
    case GateKind::kRy:
    case GateKind::kPhase:
    case GateKind::kTwoLevel:
      g.param = -gate.param;
      break;
    case GateKind::kY:
    case GateKind::kYtilde:
      g.adjoint = !gate.adjoint;
      break;
    default:
      break;
  }
  return g;
}

void validate(const GateSpec& gate, int n_qubits) {
  const auto bad = [&](const std::string& why) {
    fail(ErrorKind::kInvalidArgument, to_string(gate.kind) + " gate: " + why);
  };
  const std::size_t want = gate.kind == GateKind::kSwap ? 2 : (gate.kind == GateKind::kTwoLevel ? 0 : 1);
  if (want != 0 && gate.targets.size() != want) bad("wrong number of targets");
  if (gate.kind == GateKind::kTwoLevel) {
    if (gate.targets.empty() || gate.targets.size() > 62) bad("needs 1..62 targets");
    const BasisIndex range = BasisIndex{1} << gate.targets.size();
    if (gate.level_a >= range || gate.level_b >= range) bad("level out of range");
    if (gate.level_a == gate.level_b) bad("levels must differ");
  }
  if ((gate.kind == GateKind::kY || gate.kind == GateKind::kYtilde) &&
      !(gate.param >= 0.0 && gate.param <= 1.0)) {
    bad("p outside [0, 1]");
  }
  if (!std::isfinite(gate.param)) bad("non-finite parameter");
  std::set<int> seen;
  const auto use = [&](int q) {
    if (q < 0 || q >= n_qubits) bad("qubit " + std::to_string(q) + " out of range");
    if (!seen.insert(q).second) bad("qubit " + std::to_string(q) + " used twice");
  };
  for (int q : gate.targets) use(q);
  for (const Control& c : gate.controls) use(c.qubit);
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kX: return "x";
    case GateKind::kH: return "h";
    case GateKind::kRy: return "ry";
    case GateKind::kY: return "y";
    case GateKind::kYtilde: return "yt";
    case GateKind::kPhase: return "phase";
    case GateKind::kSwap: return "swap";
    case GateKind::kTwoLevel: return "tlr";
  }
  return "?";
}

}  // namespace qdb
