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

// Descriptor JSON:
//
//   {"k": 4, "l": 0, "data": {"1": "01", "3": "10"}, "u_d": null}
//
// "u_d" is circuit text or null. Optional keys: "data_width" (otherwise the
// bitstring length, or 1 when there is no data), "removed" (array of indices)
// and "weights" (array of k probabilities).

#include <string>

#include "qdb/qdb.hpp"

namespace qdb {

std::string descriptor_to_json(const QdbDescriptor& descriptor);
/// Throws kParse on malformed JSON and kInvalidArgument on inconsistent content.
QdbDescriptor descriptor_from_json(const std::string& text);

}  // namespace qdb
