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

// Amplitude dumps: one record per amplitude with magnitude >= 1e-12, in basis
// order. The bitstring groups qubits by register, e.g. "I=0101 D=10", each
// register printed most significant qubit first; registers appear in the order
// I, D, A, S and only if present.

#include <string>
#include <vector>

#include "qdb/circuit.hpp"
#include "qdb/state_vector.hpp"

namespace qdb {

enum class DumpFormat { kJson, kCsv };

struct AmplitudeRecord {
  BasisIndex index = 0;
  std::string bits;
  double re = 0.0;
  double im = 0.0;

  friend bool operator==(const AmplitudeRecord&, const AmplitudeRecord&) = default;
};

std::string annotate_bits(BasisIndex index, const std::vector<Register>& labels);

std::vector<AmplitudeRecord> amplitude_records(const StateVector& state,
                                               const std::vector<Register>& labels);

std::string format_dump(const std::vector<AmplitudeRecord>& records, DumpFormat format);
std::string dump_amplitudes(const StateVector& state, const std::vector<Register>& labels,
                            DumpFormat format);

std::vector<AmplitudeRecord> parse_dump(const std::string& text, DumpFormat format);

DumpFormat parse_dump_format(const std::string& name);

}  // namespace qdb
