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

#include <algorithm>
#include <random>

#include "qdb/circuit.hpp"
#include "qdb/oracle.hpp"

namespace qdb::testing {

inline double max_diff(const StateVector& a, const StateVector& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < std::min(a.dim(), b.dim()); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return a.dim() == b.dim() ? err : 1e300;
}

inline GateSpec random_gate(std::mt19937_64& rng, int n, int max_controls) {
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-3.1, 3.1);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const int t = order[0];
  GateSpec g;
  std::size_t used = 1;
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0: g = gates::x(t); break;
    case 1: g = gates::h(t); break;
    case 2: g = gates::ry(t, angle(rng)); break;
    case 3: g = gates::y(t, prob(rng)); break;
    case 4: g = gates::ytilde(t, prob(rng)); break;
    case 5: g = gates::phase(t, angle(rng)); break;
    case 6:
      if (n < 2) return gates::h(t);
      g = gates::swap(t, order[1]);
      used = 2;
      break;
    default: {
      if (n < 2) return gates::x(t);
      const int width = std::uniform_int_distribution<int>(1, std::min(n, 3))(rng);
      std::vector<int> targets(order.begin(), order.begin() + width);
      const BasisIndex levels = BasisIndex{1} << width;
      const BasisIndex a = rng() % levels;
      BasisIndex b = rng() % levels;
      if (b == a) b = (a + 1) % levels;
      if (levels == 1) return gates::x(t);
      g = gates::two_level(targets, a, b, angle(rng));
      used = static_cast<std::size_t>(width);
    }
  }
  const int room = n - static_cast<int>(used);
  const int nc = std::uniform_int_distribution<int>(0, std::max(0, std::min(room, max_controls)))(rng);
  for (int i = 0; i < nc; ++i) {
    g.controls.push_back({order[used + static_cast<std::size_t>(i)], (rng() & 1U) ? Polarity::kOne : Polarity::kZero});
  }
  return g;
}

inline Circuit random_circuit(std::mt19937_64& rng, int n, int count, int max_controls = 2) {
  Circuit c(n);
  for (int i = 0; i < count; ++i) c.append(random_gate(rng, n, max_controls));
  return c;
}

inline StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (Complex& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (Complex& x : a) x /= std::sqrt(norm);
  return StateVector::from_amplitudes(std::move(a));
}

}  // namespace qdb::testing
