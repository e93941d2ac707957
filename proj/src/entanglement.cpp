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

#include "qdb/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace qdb {
namespace {

std::vector<int> complement(int n, const std::vector<int>& subsystem) {
  std::set<int> in;
  for (int q : subsystem) {
    if (q < 0 || q >= n) fail(ErrorKind::kInvalidArgument, "subsystem qubit out of range");
    if (!in.insert(q).second) fail(ErrorKind::kInvalidArgument, "subsystem qubit repeated");
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!in.contains(q)) rest.push_back(q);
  }
  return rest;
}

// Amplitudes arranged as (subsystem value) x (rest value).
Eigen::MatrixXcd reshape(const StateVector& state, const std::vector<int>& sub,
                         const std::vector<int>& rest) {
  Eigen::MatrixXcd m(Eigen::Index{1} << sub.size(), Eigen::Index{1} << rest.size());
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    const BasisIndex ia = scatter_bits(static_cast<BasisIndex>(a), sub);
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      m(a, b) = state[ia | scatter_bits(static_cast<BasisIndex>(b), rest)];
    }
  }
  return m;
}

}  // namespace

EntanglementReport schmidt(const StateVector& state, const std::vector<int>& subsystem) {
  const std::vector<int> rest = complement(state.n_qubits(), subsystem);
  if (subsystem.empty() || rest.empty()) {
    fail(ErrorKind::kInvalidArgument, "bipartition must be a proper nonempty subset");
  }
  const Eigen::MatrixXcd m = reshape(state, subsystem, rest);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd sv = svd.singularValues();

  EntanglementReport r;
  r.schmidt_coefficients.assign(sv.data(), sv.data() + sv.size());
  std::sort(r.schmidt_coefficients.rbegin(), r.schmidt_coefficients.rend());
  r.purity = 0.0;
  for (double lambda : r.schmidt_coefficients) {
    if (lambda > tol::kSchmidtRank) ++r.schmidt_rank;
    const double p = lambda * lambda;
    r.purity += p * p;
    if (p > 1e-300) r.entropy_bits -= p * std::log2(p);
  }
  r.entropy_bits = std::max(0.0, r.entropy_bits);
  return r;
}

double subsystem_purity(const StateVector& state, const std::vector<int>& subsystem) {
  const std::vector<int> rest = complement(state.n_qubits(), subsystem);
  if (subsystem.empty() || rest.empty()) return 1.0;
  const Eigen::MatrixXcd m = reshape(state, subsystem, rest);
  // Tr(rho^2) is the same on both sides of the cut; use the smaller one.
  const Eigen::MatrixXcd rho = m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint())
                                                    : Eigen::MatrixXcd(m.adjoint() * m);
  return rho.squaredNorm();
}

}  // namespace qdb
