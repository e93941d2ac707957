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

// Line-oriented circuit text.
//
//   # comment
//   qubits 3
//   label q[0] I
//   label q[2] D
//   y(0.72727272727272729) q[1]
//   ydg(0.5) q[0] ctrl q[1] nctrl q[2]
//   swap q[0] q[1]
//   tlr(0,3,-0.78539816339744828) q[0] q[1]
//
// Gate names: x h ry(theta) y(p) ydg(p) yt(p) ytdg(p) phase(phi) swap tlr(a,b,theta).
// Parameters are printed with 17 significant digits so parse(emit(c)) == c.
// Qubits without a label line default to I.

#include <string>
#include <string_view>

#include "qdb/circuit.hpp"

namespace qdb {

std::string emit_text(const Circuit& circuit);
std::string emit_gate(const GateSpec& gate);

/// Throws Error(kParse) with "line N: ..." on malformed input.
Circuit parse_text(std::string_view text);

}  // namespace qdb
