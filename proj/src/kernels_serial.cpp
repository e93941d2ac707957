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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qdb/kernels.hpp"

namespace qdb::kernels {

ControlMask make_control_mask(const std::vector<Control>& controls) {
  ControlMask m;
  for (const Control& c : controls) {
    m.mask |= bit(c.qubit);
    if (c.polarity == Polarity::kOne) m.value |= bit(c.qubit);
  }
  return m;
}

namespace serial {
#define QDB_FOR
#include "kernels_impl.inc"
#undef QDB_FOR
}  // namespace serial

}  // namespace qdb::kernels
