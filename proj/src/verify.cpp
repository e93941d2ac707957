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

#include "qdb/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "json.hpp"
#include "qdb/circuit_text.hpp"
#include "qdb/decompose.hpp"
#include "qdb/entanglement.hpp"
#include "qdb/extend.hpp"
#include "qdb/ops.hpp"
#include "qdb/oracle.hpp"
#include "qdb/simulator.hpp"

namespace qdb {
namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome within(double err, double tolerance) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "max error %.3g (tolerance %.1g)", err, tolerance);
  return {err <= tolerance, buf};
}

class Suite {
 public:
  void check(const std::string& group, const std::string& name, const std::function<Outcome()>& body) {
    CheckResult r{.group = group, .name = name};
    try {
      const Outcome o = body();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(r));
  }

  VerifyReport report;
};

QdbDescriptor random_descriptor(std::mt19937_64& rng, int max_k, int max_l, int width) {
  QdbDescriptor d;
  d.k = std::uniform_int_distribution<int>(1, max_k)(rng);
  d.l = std::uniform_int_distribution<int>(0, max_l)(rng);
  d.data_width = width;
  std::uniform_int_distribution<std::uint64_t> value(0, (std::uint64_t{1} << width) - 1);
  for (int j = 1; j < d.k; ++j) {
    if (const std::uint64_t v = value(rng); v != 0) d.data[j] = v;
  }
  return d;
}

Circuit random_circuit(std::mt19937_64& rng, int n, int gates_count) {
  Circuit c(n);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 7);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  for (int i = 0; i < gates_count; ++i) {
    const int t = qubit(rng);
    int u = qubit(rng);
    while (n > 1 && u == t) u = qubit(rng);
    GateSpec g;
    switch (kind(rng)) {
      case 0: g = gates::x(t); break;
      case 1: g = gates::h(t); break;
      case 2: g = gates::ry(t, angle(rng)); break;
      case 3: g = gates::y(t, prob(rng)); break;
      case 4: g = gates::ytilde(t, prob(rng)); break;
      case 5: g = gates::phase(t, angle(rng)); break;
      case 6: g = n > 1 ? gates::swap(t, u) : gates::x(t); break;
      default: g = n > 1 ? gates::two_level({t, u}, 1, 2, angle(rng)) : gates::h(t); break;
    }
    if (n > 2 && g.kind != GateKind::kSwap && g.kind != GateKind::kTwoLevel && (rng() & 1U)) {
      int cq = qubit(rng);
      while (cq == t) cq = qubit(rng);
      g.controls.push_back({cq, (rng() & 1U) ? Polarity::kOne : Polarity::kZero});
    }
    c.append(g);
  }
  return c;
}

StateVector oracle_run(const Circuit& c, const StateVector& initial) {
  return oracle::dense_operator(c).apply(initial);
}

double state_error(const StateVector& a, const StateVector& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

void fast_checks(Suite& s) {
  s.check("core-sim", "random circuits match dense operators", [] {
    std::mt19937_64 rng(kSeed);
    double err = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + trial % 6;
      const Circuit c = random_circuit(rng, n, 12);
      err = std::max(err, state_error(simulate(c), oracle_run(c, StateVector(n))));
    }
    return within(err, 1e-12);
  });
  s.check("circuit-ir", "text emit and parse round-trip", [] {
    std::mt19937_64 rng(kSeed + 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Circuit c = random_circuit(rng, 4, 10);
      if (!(parse_text(emit_text(c)) == c)) return Outcome{false, "round-trip changed a circuit"};
    }
    return Outcome{true, "20 circuits"};
  });
  s.check("circuit-ir", "toffoli chain equals multi-controlled X", [] {
    double err = 0.0;
    for (int tau = 3; tau <= 5; ++tau) {
      Circuit c(tau + 1);
      GateSpec g = gates::x(tau);
      for (int q = 0; q < tau; ++q) g.ctrl(q);
      c.append(g);
      const Circuit d = decompose_mcx(c);
      const auto full = oracle::dense_operator(d);
      const auto ref = oracle::dense_operator(c);
      // Compare on the subspace where the appended ancillas start and end in |0>.
      const Eigen::Index dim = Eigen::Index{1} << (tau + 1);
      err = std::max(err, (full.matrix.topLeftCorner(dim, dim) - ref.matrix).cwiseAbs().maxCoeff());
    }
    return within(err, 1e-9);
  });
  s.check("qdb-ops", "prepare matches closed form", [] {
    double err = 0.0;
    for (int k = 1; k <= 16; ++k) {
      for (int l = 0; l <= 4; ++l) {
        const QdbState q = prepare_general(k, l, 1);
        err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(q.descriptor), q.state));
      }
    }
    return within(err, 1e-9);
  });
  s.check("qdb-ops", "writes match closed form", [] {
    std::mt19937_64 rng(kSeed + 2);
    double err = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const QdbState q = build(random_descriptor(rng, 8, 2, 2));
      err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(q), q.state));
    }
    return within(err, 1e-9);
  });
  s.check("qdb-ops", "write leaves the sensor in a product state", [] {
    std::mt19937_64 rng(kSeed + 3);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      QdbDescriptor d = random_descriptor(rng, 8, 2, 2);
      d.k = std::max(d.k, 2);
      QdbState q = prepare_general(d.k, d.l, 2);
      q = write(std::move(q), d.k - 1, 3);
      worst = std::max(worst, std::abs(1.0 - subsystem_purity(q.state, q.layout.sensor_qubits)));
    }
    return within(worst, 1e-10);
  });
  s.check("qdb-ops", "operations match the dense oracle", [] {
    double err = 0.0;
    QdbState q = prepare_general(5, 1, 2);
    const auto step = [&](QdbState next) {
      const StateVector before = q.state.n_qubits() == next.state.n_qubits()
                                     ? q.state
                                     : add_ancillas(q.state, next.state.n_qubits() - q.state.n_qubits());
      err = std::max(err, state_error(next.state, oracle_run(next.last_circuit, before)));
      q = std::move(next);
    };
    step(write(q, 2, 1));
    step(write(q, 3, 2));
    step(read_copy(q, 2));
    step(permute(q, Permutation({0, 3, 1, 2, 4})));
    step(remove_reservoir(q, 4));
    return within(err, 1e-12);
  });
  s.check("qdb-ops", "permutations match M_pi", [] {
    std::mt19937_64 rng(kSeed + 4);
    double err = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
      const int k = 2 + trial % 7;
      std::vector<int> m(static_cast<std::size_t>(k));
      std::iota(m.begin(), m.end(), 0);
      std::shuffle(m.begin(), m.end(), rng);
      const Permutation pi(m);
      const QdbState q = prepare_balanced(1 << ceil_log2(static_cast<std::uint64_t>(k)), 1);
      Circuit c(q.state.n_qubits());
      for (const auto& [i, j] : pi.transpositions()) {
        for (const GateSpec& g : index_transposition_gates(q.layout.index_qubits, i, j)) c.append(g);
      }
      err = std::max(err, oracle::operator_distance_up_to_phase(oracle::dense_operator(c),
                                                                oracle::permutation_matrix(pi, 1)));
    }
    return within(err, 1e-10);
  });
  s.check("extend-ops", "transfer plans converge", [] {
    double worst = 0.0;
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {4, 4}, {4, 2}, {8, 8}, {3, 1}, {5, 5}}) {
      worst = std::max(worst, plan_transfer(k, l).residual);
    }
    return within(worst, 1e-10);
  });
  s.check("extend-ops", "simulated transfer reaches the target", [] {
    double worst = 0.0;
    for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 2}, {4, 4}, {4, 2}, {8, 8}}) {
      QdbState q = prepare_general(k, 0, 1);
      const Circuit u = *q.preparation;
      const AmplificationPlan plan = plan_transfer(k, l);
      q = transfer(std::move(q), plan, u);
      const double got = std::abs(q.state[0]);
      worst = std::max(worst, std::abs(got - plan.target_amplitude));
    }
    return within(worst, 1e-8);
  });
  s.check("extend-ops", "imbalanced extension matches closed forms", [] {
    double err = 0.0;
    for (auto [k, l, z] : std::vector<std::array<int, 3>>{{4, 3, 1}, {4, 3, 2}, {3, 5, 2}, {5, 9, 2}, {4, 7, 3}}) {
      QdbState q = extend_imbalanced(prepare_general(k, l, 1), l, z);
      err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(q), q.state));
    }
    return within(err, 1e-9);
  });
  s.check("extend-ops", "unitary extension changes overlaps", [] {
    int failures = 0;
    for (int k = 2; k <= 3; ++k) {
      for (std::uint64_t a = 0; a < (1U << (k - 1)); ++a) {
        for (std::uint64_t b = 0; b < (1U << (k - 1)); ++b) {
          QdbDescriptor d1{.k = k, .data_width = 1};
          QdbDescriptor d2{.k = k, .data_width = 1};
          for (int j = 1; j < k; ++j) {
            if ((a >> (j - 1)) & 1U) d1.data[j] = 1;
            if ((b >> (j - 1)) & 1U) d2.data[j] = 1;
          }
          const OverlapCheck r = check_no_unitary_extend(d1, d2, 1);
          if (r.preserved != r.identical) ++failures;
        }
      }
    }
    return Outcome{failures == 0, std::to_string(failures) + " mismatching pairs"};
  });
}

void full_checks(Suite& s) {
  s.check("extend-ops", "transfer route equals imbalanced route", [] {
    double err = 0.0;
    for (int k = 2; k <= 6; ++k) {
      for (int l = 1; l <= k; ++l) {
        const ExtendResult a = extend(prepare_general(k, 0, 1), l);
        const QdbState b = extend_imbalanced(prepare_general(k, l, 1), l, 1);
        const std::vector<double> pa = read_probabilities(a.state);
        const std::vector<double> pb = read_probabilities(b);
        if (pa.size() != pb.size()) return Outcome{false, "entry counts differ"};
        for (std::size_t j = 0; j < pa.size(); ++j) {
          err = std::max(err, std::abs(pa[j] - pb[j]));
          err = std::max(err, std::abs(pa[j] - 1.0 / (k + l)));
        }
        err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(a.state), a.state.state));
        err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(b), b.state));
      }
    }
    return within(err, 1e-8);
  });
  s.check("qdb-ops", "prepare sweep to k = 64", [] {
    double err = 0.0;
    for (int k = 17; k <= 64; ++k) {
      for (int l : {0, 1, 7, 30}) {
        const QdbState q = prepare_general(k, l, 1);
        err = std::max(err, oracle::amplitude_error(oracle::expected_qdb_amplitudes(q.descriptor), q.state));
      }
    }
    return within(err, 1e-9);
  });
  s.check("extend-ops", "chunked extension stays balanced", [] {
    double err = 0.0;
    for (int l = 1; l <= 9; ++l) {
      const ExtendResult r = extend(prepare_general(2, 0, 1), l);
      for (double p : read_probabilities(r.state)) err = std::max(err, std::abs(p - 1.0 / (2 + l)));
    }
    return within(err, 1e-8);
  });
}

}  // namespace

VerifyLevel parse_verify_level(const std::string& name) {
  if (name == "fast") return VerifyLevel::kFast;
  if (name == "full") return VerifyLevel::kFull;
  fail(ErrorKind::kParse, "unknown verify level '" + name + "' (use fast or full)");
}

std::string to_string(VerifyLevel level) { return level == VerifyLevel::kFast ? "fast" : "full"; }

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(VerifyLevel level) {
  Suite s;
  s.report.level = to_string(level);
  fast_checks(s);
  if (level == VerifyLevel::kFull) full_checks(s);
  return std::move(s.report);
}

std::string report_to_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["level"] = report.level;
  j["passed"] = report.passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"group", c.group}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

VerifyReport report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    VerifyReport r;
    r.level = j.at("level").get<std::string>();
    for (const auto& c : j.at("checks")) {
      r.checks.push_back({c.at("group").get<std::string>(), c.at("name").get<std::string>(),
                          c.at("passed").get<bool>(), c.value("detail", std::string())});
    }
    if (j.contains("passed") && j["passed"].get<bool>() != r.passed()) {
      fail(ErrorKind::kParse, "report summary disagrees with its checks");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("verify report: ") + e.what());
  }
}

}  // namespace qdb
