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

#include "qdb/extend.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "qdb/ops.hpp"
#include "qdb/oracle.hpp"
#include "qdb/simulator.hpp"

namespace qdb {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRhoGrid = 720;
constexpr double kPlanTolerance = 1e-10;
constexpr double kTransferTolerance = 1e-8;

[[noreturn]] void semantic(const std::string& op, const std::string& why) {
  fail(ErrorKind::kSemantic, op + ": " + why);
}

// State of the two-dimensional model: amplitudes on the good state |0>_{I,D}
// and on the normalised remainder of U|0>.
using Vec2 = std::array<Complex, 2>;

struct FinalStep {
  Complex c;  // good amplitude that does not depend on phi
  Complex d;  // part multiplied by e^{i phi}
};

// One step Q(phi, rho) up to its global sign, for U|0> = s|g> + c|h>.
Vec2 step(const Vec2& v, double s, double c, double phi, double rho) {
  const Vec2 w{v[0] * std::polar(1.0, rho), v[1]};
  const Complex mu = s * w[0] + c * w[1];
  const Complex f = (std::polar(1.0, phi) - 1.0) * mu;
  return {w[0] + f * s, w[1] + f * c};
}

FinalStep final_step(const Vec2& v, double s, double c, double rho) {
  const Complex w0 = v[0] * std::polar(1.0, rho);
  const Complex mu = s * w0 + c * v[1];
  return {w0 - s * mu, s * mu};
}

// Distance from the target to the nearer end of the reachable modulus range.
double slack(const FinalStep& f, double target) {
  const double a = std::abs(f.c);
  const double b = std::abs(f.d);
  return std::min(a + b - target, target - std::abs(a - b));
}

BasisIndex reservoir_value(const QdbState& q) {
  return q.layout.basis_index(q.layout.physical_index(0), 0);
}

double reservoir_amplitude(const QdbState& q) {
  const BasisIndex mask = q.layout.index_mask() | q.layout.data_mask();
  return std::sqrt(probability(q.state, mask, reservoir_value(q)));
}

void check_reservoir(const QdbState& q, const std::string& op) {
  if (q.consumed) semantic(op, "the database was consumed by a projective read");
  if (q.descriptor.weights) semantic(op, "branch weights no longer follow the reservoir pattern");
  if (q.descriptor.removed.contains(0) || q.descriptor.value(0) != 0) {
    semantic(op, "entry 0 must be an empty reservoir");
  }
}

std::vector<int> id_qubits(const QdbLayout& layout) {
  std::vector<int> out = layout.index_qubits;
  out.insert(out.end(), layout.data_qubits.begin(), layout.data_qubits.end());
  return out;
}

}  // namespace

AmplificationPlan plan_transfer(int k, int l) {
  if (k < 2) fail(ErrorKind::kInvalidArgument, "transfer needs k >= 2");
  if (l < 0 || l > k) fail(ErrorKind::kInvalidArgument, "transfer needs 0 <= l <= k");
  AmplificationPlan plan;
  plan.k = k;
  plan.l = l;
  plan.target_amplitude = std::sqrt(static_cast<double>(l + 1) / (k + l));
  if (l == 0) {
    plan.noop = true;
    plan.predicted_amplitude = plan.target_amplitude;
    return plan;
  }

  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(k)));
  const double beta = std::asin(1.0 / std::sqrt(static_cast<double>(k + l)));
  plan.m_star = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= 2; ++n) {
    for (int sign : {-1, 1}) {
      const double m = (sign * beta - theta + kPi * n) / (2 * theta);
      if (m > 0 && m < plan.m_star) {
        plan.m_star = m;
        plan.n = n;
        plan.sign = sign;
      }
    }
  }
  plan.m = static_cast<int>(std::floor(plan.m_star));

  const double s = 1.0 / std::sqrt(static_cast<double>(k));
  const double c = std::sqrt(1.0 - s * s);
  Vec2 v{Complex{s}, Complex{c}};
  for (int i = 0; i < plan.m; ++i) v = step(v, s, c, kPi, kPi);

  // phi follows from rho in closed form, so pick the rho that keeps the target
  // farthest inside the reachable range, then refine it by golden section.
  const double target = plan.target_amplitude;
  const auto score = [&](double rho) { return slack(final_step(v, s, c, rho), target); };
  double best_rho = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kRhoGrid; ++i) {
    const double rho = 2 * kPi * i / kRhoGrid;
    if (const double sc = score(rho); sc > best) {
      best = sc;
      best_rho = rho;
    }
  }
  double lo = best_rho - 2 * kPi / kRhoGrid;
  double hi = best_rho + 2 * kPi / kRhoGrid;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
    const double x1 = hi - g * (hi - lo);
    const double x2 = lo + g * (hi - lo);
    if (score(x1) >= score(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  const double rho = (lo + hi) / 2;
  const FinalStep f = final_step(v, s, c, rho);
  const double a = std::abs(f.c);
  const double b = std::abs(f.d);
  double phi = 0.0;
  if (a > 0 && b > 0) {
    const double kappa = std::clamp((target * target - a * a - b * b) / (2 * a * b), -1.0, 1.0);
    phi = std::arg(f.c) - std::arg(f.d) + std::acos(kappa);
  }
  plan.final_rho = std::remainder(rho, 2 * kPi);
  plan.final_phi = std::remainder(phi, 2 * kPi);
  const Vec2 out = step(v, s, c, plan.final_phi, plan.final_rho);
  plan.predicted_amplitude = std::abs(out[0]);
  plan.phase_correction = std::remainder(std::arg(out[1]) - std::arg(out[0]), 2 * kPi);
  plan.residual = std::abs(plan.predicted_amplitude - target);
  if (!(plan.residual < kPlanTolerance)) {
    fail(ErrorKind::kConvergence, "transfer plan for k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                                      " did not converge (residual " + std::to_string(plan.residual) + ")");
  }
  return plan;
}

Complex transfer_amplitude(int k, int m, double final_phi, double final_rho) {
  const double s = 1.0 / std::sqrt(static_cast<double>(k));
  const double c = std::sqrt(1.0 - s * s);
  Vec2 v{Complex{s}, Complex{c}};
  for (int i = 0; i < m; ++i) v = step(v, s, c, kPi, kPi);
  return step(v, s, c, final_phi, final_rho)[0];
}

std::string plan_to_json(const AmplificationPlan& plan) {
  nlohmann::ordered_json j;
  j["k"] = plan.k;
  j["l"] = plan.l;
  j["m_star"] = plan.m_star;
  j["n"] = plan.n;
  j["sign"] = plan.sign < 0 ? "-" : "+";
  j["m"] = plan.m;
  j["phi"] = plan.final_phi;
  j["rho"] = plan.final_rho;
  j["target_amplitude"] = plan.target_amplitude;
  j["predicted_amplitude"] = plan.predicted_amplitude;
  j["residual"] = plan.residual;
  j["phase_correction"] = plan.phase_correction;
  j["noop"] = plan.noop;
  return j.dump(2) + "\n";
}

Circuit amplification_step(const Circuit& u, double phi, double rho) {
  std::vector<int> good;
  std::vector<int> all;
  for (int q = 0; q < u.n_qubits(); ++q) {
    all.push_back(q);
    if (u.label(q) == Register::kIndex || u.label(q) == Register::kData) good.push_back(q);
  }
  Circuit c(u.n_qubits());
  for (int q = 0; q < u.n_qubits(); ++q) c.set_label(q, u.label(q));
  for (const GateSpec& g : zero_state_phase(good, rho)) c.append(g);
  c.append(u.inverse());
  for (const GateSpec& g : zero_state_phase(all, phi)) c.append(g);
  c.append(u);
  return c;
}

QdbState transfer(QdbState q, const AmplificationPlan& plan, const Circuit& u_qdb) {
  const std::string op = "transfer";
  check_reservoir(q, op);
  if (q.descriptor.l != 0 || !q.descriptor.balanced()) semantic(op, "the database must be balanced");
  if (plan.k != q.descriptor.live_count()) {
    fail(ErrorKind::kInvalidArgument, "plan is for k=" + std::to_string(plan.k) + " but the database holds " +
                                          std::to_string(q.descriptor.live_count()) + " entries");
  }
  if (plan.noop) {
    q.last_circuit = q.empty_circuit();
    return q;
  }
  if (u_qdb.n_qubits() != q.state.n_qubits() ||
      distance_up_to_phase(simulate(u_qdb), q.state) > kTransferTolerance) {
    fail(ErrorKind::kVerification, "transfer: the supplied unitary does not prepare the database");
  }
  q.preparation = u_qdb;

  Circuit c = q.empty_circuit();
  const Circuit standard = amplification_step(*q.preparation, kPi, kPi);
  for (int i = 0; i < plan.m; ++i) c.append(standard);
  c.append(amplification_step(*q.preparation, plan.final_phi, plan.final_rho));
  if (std::abs(plan.phase_correction) > 1e-15) {
    for (const GateSpec& g : zero_state_phase(id_qubits(q.layout), plan.phase_correction)) c.append(g);
  }
  apply_recorded(q, c);

  const double got = reservoir_amplitude(q);
  if (std::abs(got - plan.target_amplitude) > kTransferTolerance) {
    fail(ErrorKind::kVerification, "transfer reached " + std::to_string(got) + ", expected " +
                                       std::to_string(plan.target_amplitude));
  }
  q.descriptor.l = plan.l;
  return q;
}

QdbState unfold(QdbState q, int count) {
  const std::string op = "unfold";
  check_reservoir(q, op);
  QdbDescriptor& d = q.descriptor;
  if (count < 1) fail(ErrorKind::kInvalidArgument, "unfold needs at least one new entry");
  if (count > d.l) {
    semantic(op, "the reservoir holds " + std::to_string(d.l) + " spare units, " + std::to_string(count) +
                     " requested");
  }
  const std::vector<int> old_index = q.layout.index_qubits;
  const int w = static_cast<int>(old_index.size());
  if (w < 62 && static_cast<std::uint64_t>(count) > (std::uint64_t{1} << w)) {
    fail(ErrorKind::kCapacity, "unfold: " + std::to_string(count) + " new entries exceed the " +
                                   std::to_string(w) + "-qubit index register");
  }
  const double units = d.l + 1;
  if (reservoir_amplitude(q) < std::sqrt(d.probability(0)) - kTransferTolerance) {
    semantic(op, "insufficient reservoir amplitude");
  }

  const int anc = allocate_qubits(q, &QdbLayout::index_qubits, 1).front();
  Circuit c = q.empty_circuit();
  GateSpec rot = gates::ry(anc, 2 * std::acos(std::sqrt((units - count) / units)));
  for (int qb : old_index) rot.nctrl(qb);
  for (int qb : q.layout.data_qubits) rot.nctrl(qb);
  c.append(rot);
  c.append(add_controls(prepare_circuit(count, 0, old_index, c.n_qubits()), {{anc, Polarity::kOne}}));
  apply_recorded(q, c);

  for (int i = 0; i < count; ++i) {
    q.layout.logical_index_map.push_back((BasisIndex{1} << w) | static_cast<BasisIndex>(i));
  }
  d.k += count;
  d.l -= count;
  return q;
}

ExtendResult extend(QdbState q, int l, std::optional<Circuit> u_qdb) {
  if (l < 1) fail(ErrorKind::kInvalidArgument, "extend needs l >= 1");
  check_reservoir(q, "extend");
  if (u_qdb) {
    q.preparation = std::move(*u_qdb);
  } else if (!q.preparation) {
    semantic("extend", "no unitary preparing the database is available");
  }
  ExtendResult result{.state = std::move(q)};
  std::vector<Circuit> parts;
  const auto chunk = [&](int size) {
    AmplificationPlan plan = plan_transfer(result.state.descriptor.live_count(), size);
    const Circuit u = *result.state.preparation;
    result.state = transfer(std::move(result.state), plan, u);
    parts.push_back(result.state.last_circuit);
    result.state = unfold(std::move(result.state), size);
    parts.push_back(result.state.last_circuit);
    result.plans.push_back(plan);
  };
  int remaining = l;
  while (remaining > result.state.descriptor.live_count()) {
    const int size = result.state.descriptor.live_count();
    chunk(size);
    remaining -= size;
  }
  if (remaining > 0) chunk(remaining);

  Circuit all = result.state.empty_circuit();
  for (const Circuit& p : parts) all.append(p);
  result.state.last_circuit = std::move(all);
  return result;
}

bool ExtendPlan::balanced() const {
  if (z == 1) return true;
  return static_cast<long long>(l + 1) == static_cast<long long>(l_prime + 1) * l_dprime;
}

ExtendPlan plan_imbalanced(int k, int l, int z, int index_width, std::optional<int> l_dprime) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "extend-imbalanced needs k >= 1");
  if (l < 1) fail(ErrorKind::kInvalidArgument, "extend-imbalanced needs l >= 1");
  if (z < 1 || z > 20) fail(ErrorKind::kInvalidArgument, "extend-imbalanced needs 1 <= z <= 20");
  const long long per = (1LL << z) - 1;
  if (static_cast<long long>(l) > per * k) {
    fail(ErrorKind::kCapacity, "l=" + std::to_string(l) + " exceeds the (2^z - 1) k = " +
                                   std::to_string(per * k) + " capacity of z=" + std::to_string(z));
  }
  ExtendPlan p;
  p.k = k;
  p.l = l;
  p.z = z;
  const double total = static_cast<double>(l + k);
  p.beta = std::sqrt(1.0 / total);
  if (z == 1) {
    if (l > (index_width < 31 ? (1 << index_width) : l)) {
      fail(ErrorKind::kCapacity, "extend-imbalanced: l exceeds the index register");
    }
    p.l_prime = 1;
    p.l_dprime = l;
    p.alpha = p.beta;
    p.gamma = p.beta;
    p.new_entries = l;
    return p;
  }
  p.l_prime = static_cast<int>(std::min<long long>(l, per));
  if (l > per) {
    p.second_stage = true;
    p.l_dprime = l_dprime.value_or(l - p.l_prime);
    if (p.l_dprime < 1) fail(ErrorKind::kInvalidArgument, "l'' must be at least 1");
    if (index_width < 31 && p.l_dprime > (1 << index_width)) {
      fail(ErrorKind::kCapacity, "l''=" + std::to_string(p.l_dprime) + " exceeds the " +
                                     std::to_string(index_width) + "-qubit index register");
    }
  } else {
    p.l_dprime = 1;
  }
  const double lp1 = p.l_prime + 1;
  p.alpha = std::sqrt((l + 1) / (lp1 * total));
  p.gamma = std::sqrt((l + 1) / (p.l_dprime * lp1 * total));
  p.new_entries = p.l_prime * p.l_dprime;
  return p;
}

QdbState extend_imbalanced(QdbState q, int l, int z, SecondStageRoute route, std::optional<int> l_dprime) {
  const std::string op = "extend-imbalanced";
  check_reservoir(q, op);
  QdbDescriptor& d = q.descriptor;
  if (!d.removed.empty()) semantic(op, "removed entries are not supported");
  if (d.l != l) {
    semantic(op, "the database reservoir holds l=" + std::to_string(d.l) + ", not " + std::to_string(l));
  }
  const std::vector<int> old_index = q.layout.index_qubits;
  const int w = static_cast<int>(old_index.size());
  const ExtendPlan plan = plan_imbalanced(d.k, l, z, w, l_dprime);
  if (z == 1) return unfold(std::move(q), l);

  const std::vector<int> anc = allocate_qubits(q, &QdbLayout::index_qubits, z);
  int marker = -1;
  if (plan.second_stage && route == SecondStageRoute::kMarker) {
    marker = allocate_qubits(q, &QdbLayout::work_qubits, 1).front();
  }
  Circuit c = q.empty_circuit();
  const int n = c.n_qubits();
  std::vector<Control> index_zero;
  for (int qb : old_index) index_zero.push_back({qb, Polarity::kZero});
  c.append(add_controls(prepare_circuit(plan.l_prime + 1, 0, anc, n), index_zero));

  if (plan.second_stage) {
    const Circuit spread = prepare_circuit(plan.l_dprime, 0, old_index, n);
    std::vector<Control> anc_zero;
    for (int qb : anc) anc_zero.push_back({qb, Polarity::kZero});
    if (route == SecondStageRoute::kDirect) {
      // Spread everywhere, then undo it where the new qubits are all zero.
      c.append(spread);
      c.append(add_controls(spread.inverse(), anc_zero));
    } else {
      c.append(gates::x(marker).with_controls(anc_zero));
      c.append(add_controls(spread, {{marker, Polarity::kZero}}));
      c.append(gates::x(marker).with_controls(anc_zero));
    }
  }
  apply_recorded(q, c);

  for (int i = 1; i <= plan.l_prime; ++i) {
    for (int h = 0; h < plan.l_dprime; ++h) {
      q.layout.logical_index_map.push_back((static_cast<BasisIndex>(i) << w) | static_cast<BasisIndex>(h));
    }
  }
  const int old_k = d.k;
  d.k += plan.new_entries;
  if (plan.balanced()) {
    d.l = plan.l_dprime - 1;
  } else {
    std::vector<double> wts(static_cast<std::size_t>(d.k), plan.gamma * plan.gamma);
    wts[0] = plan.alpha * plan.alpha;
    for (int j = 1; j < old_k; ++j) wts[static_cast<std::size_t>(j)] = plan.beta * plan.beta;
    double total = 0.0;
    for (double x : wts) total += x;
    for (double& x : wts) x /= total;
    d.weights = std::move(wts);
    d.l = 0;
  }
  return q;
}

namespace {

// Amplitudes of the index and data registers; every other register must be |0>.
StateVector index_data_state(const QdbState& q) {
  const std::vector<int> qubits = id_qubits(q.layout);
  const BasisIndex mask = scatter_bits(~BasisIndex{0}, qubits);
  std::vector<Complex> amps(std::size_t{1} << qubits.size());
  for (std::size_t i = 0; i < q.state.dim(); ++i) {
    if ((i & ~mask) != 0) {
      if (std::abs(q.state[i]) > 1e-12) fail(ErrorKind::kVerification, "auxiliary registers are not clean");
      continue;
    }
    amps[gather_bits(i, qubits)] = q.state[i];
  }
  return StateVector::from_amplitudes(std::move(amps), 1e-9);
}

StateVector extended_state(const QdbDescriptor& d, int l) {
  const int k = d.k + l;
  const int kt = ceil_log2(static_cast<std::uint64_t>(k));
  std::vector<Complex> amps(std::size_t{1} << (kt + d.data_width));
  const double a = 1.0 / std::sqrt(static_cast<double>(k));
  for (int j = 0; j < k; ++j) {
    const std::uint64_t v = j < d.k ? d.value(j) : 0;
    amps[static_cast<std::size_t>(j) | (v << kt)] = a;
  }
  return StateVector::from_amplitudes(std::move(amps), 1e-9);
}

}  // namespace

OverlapCheck check_no_unitary_extend(const QdbDescriptor& db1, const QdbDescriptor& db2, int l) {
  validate(db1);
  validate(db2);
  if (db1.k != db2.k || db1.data_width != db2.data_width || db1.l != 0 || db2.l != 0) {
    fail(ErrorKind::kInvalidArgument, "the two databases must share k and data width, with l = 0");
  }
  if (db1.u_d || db2.u_d) fail(ErrorKind::kInvalidArgument, "computational-basis data required");
  if (l < 1) fail(ErrorKind::kInvalidArgument, "l must be at least 1");
  if (db1.value(0) != 0 || db2.value(0) != 0) fail(ErrorKind::kInvalidArgument, "entry 0 must be empty");

  OverlapCheck r;
  std::tie(r.before_formula, r.after_formula) = oracle::overlap_lemma_sides(db1, db2, l);
  r.before_simulated = overlap(index_data_state(build(db1)), index_data_state(build(db2))).real();
  r.after_simulated = overlap(extended_state(db1, l), extended_state(db2, l)).real();
  r.preserved = std::abs(r.before_simulated - r.after_simulated) < 1e-9;
  r.identical = true;
  for (int j = 0; j < db1.k; ++j) r.identical = r.identical && db1.value(j) == db2.value(j);
  return r;
}

}  // namespace qdb
