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

// Amplitude kernels. `serial` is the reference implementation kept for testing;
// `parallel` is the OpenMP version used by the simulator. Both expose the same
// functions and must produce bit-identical results: the gate kernels touch
// disjoint amplitude groups, and every reduction sums fixed-size chunks in
// index order regardless of the thread count.

#include <span>

#include "qdb/common.hpp"
#include "qdb/gate.hpp"

namespace qdb::kernels {

/// A basis index i satisfies the controls when (i & mask) == value.
struct ControlMask {
  BasisIndex mask = 0;
  BasisIndex value = 0;
};

ControlMask make_control_mask(const std::vector<Control>& controls);

/// Reduction chunk length (amplitudes). Fixed so sums do not depend on threads.
inline constexpr std::size_t kReductionChunk = std::size_t{1} << 14;

#define QDB_KERNEL_DECLS                                                                     \
  void apply_matrix2(std::span<Complex> amps, int target, const Mat2& m, ControlMask c);     \
  void apply_x(std::span<Complex> amps, int target, ControlMask c);                          \
  void apply_phase(std::span<Complex> amps, int target, Complex phase, ControlMask c);       \
  void apply_swap(std::span<Complex> amps, int a, int b, ControlMask c);                     \
  void apply_two_level(std::span<Complex> amps, BasisIndex target_mask, BasisIndex level_a,  \
                       BasisIndex level_b, double theta, ControlMask c);                     \
  double norm_squared(std::span<const Complex> amps);                                        \
  Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);         \
  double masked_probability(std::span<const Complex> amps, BasisIndex mask, BasisIndex value); \
  void scale(std::span<Complex> amps, double factor);

namespace serial {
QDB_KERNEL_DECLS
}  // namespace serial

namespace parallel {
QDB_KERNEL_DECLS
/// Threads the parallel kernels will use (1 when built without OpenMP).
int thread_count();
void set_thread_count(int n);
}  // namespace parallel

#undef QDB_KERNEL_DECLS

}  // namespace qdb::kernels
