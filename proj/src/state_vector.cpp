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

#include "qdb/state_vector.hpp"

#include <cmath>

#include "qdb/kernels.hpp"

namespace qdb {
namespace {

void check_capacity(int n_qubits) {
  if (n_qubits < 0) fail(ErrorKind::kInvalidArgument, "negative qubit count");
  if (n_qubits > max_qubits()) {
    fail(ErrorKind::kCapacity, "state needs " + std::to_string(n_qubits) +
                                   " qubits, cap is " + std::to_string(max_qubits()));
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_capacity(n_qubits);
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex{0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::basis(int n_qubits, BasisIndex index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) fail(ErrorKind::kInvalidArgument, "basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, double norm_tol) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    fail(ErrorKind::kInvalidArgument, "amplitude count must be a power of two");
  }
  const int n = ceil_log2(dim);
  check_capacity(n);
  StateVector s(n, std::move(amplitudes));
  if (std::abs(s.norm_squared() - 1.0) > norm_tol) {
    fail(ErrorKind::kInvalidArgument, "amplitudes are not normalised");
  }
  return s;
}

double StateVector::norm_squared() const { return kernels::parallel::norm_squared(amplitudes_); }

void StateVector::normalize() {
  const double n2 = norm_squared();
  if (n2 <= 0.0) fail(ErrorKind::kZeroProbability, "cannot normalise the zero vector");
  kernels::parallel::scale(amplitudes_, 1.0 / std::sqrt(n2));
}

}  // namespace qdb
