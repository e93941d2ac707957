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

#include <array>
#include <string>
#include <vector>

#include "qdb/common.hpp"

namespace qdb {

enum class GateKind {
  kX,
  kH,
  kRy,       // param = theta (radians)
  kY,        // param = p, Y(p) = Ry(2 acos(sqrt p))
  kYtilde,   // param = p, Y(p) * Y(1/2)^-1
  kPhase,    // param = phi, diag(1, e^{i phi})
  kSwap,     // two targets
  kTwoLevel  // Givens rotation by param in the plane {|a>, |b>} of the target register
};

enum class Polarity { kOne, kZero };

struct Control {
  int qubit = 0;
  Polarity polarity = Polarity::kOne;

  friend bool operator==(const Control&, const Control&) = default;
};

/// Row-major 2x2 matrix.
using Mat2 = std::array<Complex, 4>;

/// One gate of the IR. Controls fire when every listed qubit matches its polarity.
struct GateSpec {
  GateKind kind = GateKind::kX;
  std::vector<int> targets;
  std::vector<Control> controls;
  double param = 0.0;
  // Plane of a two-level rotation, as values of the target register
  // (bit i of the value is targets[i]).
  BasisIndex level_a = 0;
  BasisIndex level_b = 0;
  // Only meaningful for kY and kYtilde, which have no angle to negate.
  bool adjoint = false;

  friend bool operator==(const GateSpec&, const GateSpec&) = default;

  GateSpec& ctrl(int q) {
    controls.push_back({q, Polarity::kOne});
    return *this;
  }
  GateSpec& nctrl(int q) {
    controls.push_back({q, Polarity::kZero});
    return *this;
  }
  GateSpec& with_controls(const std::vector<Control>& extra) {
    controls.insert(controls.end(), extra.begin(), extra.end());
    return *this;
  }
};

namespace gates {
GateSpec x(int q);
GateSpec h(int q);
GateSpec ry(int q, double theta);
/// Throws kInvalidArgument unless 0 <= p <= 1.
GateSpec y(int q, double p);
GateSpec ytilde(int q, double p);
GateSpec phase(int q, double phi);
GateSpec swap(int a, int b);
GateSpec two_level(std::vector<int> targets, BasisIndex a, BasisIndex b, double theta);
}  // namespace gates

/// Y(p) as a matrix; p is clamped against rounding just outside [0, 1].
Mat2 y_matrix(double p);

/// Matrix of a single-target gate (X, H, Ry, Y, Ytilde, Phase), including adjoint.
Mat2 single_target_matrix(const GateSpec& gate);

bool is_single_target(GateKind kind);
int control_count(const GateSpec& gate);

GateSpec inverse(const GateSpec& gate);

/// Throws kInvalidArgument when targets/controls overlap, repeat, or leave [0, n_qubits).
void validate(const GateSpec& gate, int n_qubits);

std::string to_string(GateKind kind);

}  // namespace qdb
