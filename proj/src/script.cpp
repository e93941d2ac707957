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

#include "qdb/script.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qdb/circuit_text.hpp"
#include "qdb/decompose.hpp"
#include "qdb/descriptor_io.hpp"
#include "qdb/extend.hpp"
#include "qdb/ops.hpp"
#include "qdb/simulator.hpp"

namespace qdb {
namespace {

struct CommandSpec {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, CommandSpec>& command_specs() {
  static const std::map<std::string, CommandSpec> specs{
      {"prepare", {{"k"}, {"l", "m", "mode"}}},
      {"write", {{"f", "d"}, {"mode"}}},
      {"extend-imbalanced", {{"l", "z"}, {"route", "ldd"}}},
      {"extend", {{"l"}, {}}},
      {"read-copy", {{"f"}, {}}},
      {"read-projective", {{}, {"f"}}},
      {"remove", {{"f"}, {"mode"}}},
      {"permute", {{}, {"pi", "i", "j"}}},
      {"release-sensor", {{}, {}}},
      {"plan", {{"l"}, {"k"}}},
      {"emit", {{}, {"what", "decompose"}}},
      {"dump", {{}, {}}},
      {"save", {{}, {}}},
  };
  return specs;
}

const std::map<std::string, std::set<std::string>>& enum_values() {
  static const std::map<std::string, std::set<std::string>> values{
      {"prepare.mode", {"general", "balanced"}},
      {"write.mode", {"cnot", "swap"}},
      {"extend-imbalanced.route", {"direct", "marker"}},
      {"remove.mode", {"reservoir", "projective"}},
      {"emit.what", {"history", "last"}},
      {"emit.decompose", {"0", "1"}},
  };
  return values;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::optional<long long> to_int(const std::string& s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || v < 0 || v > (1LL << 31) - 1) return std::nullopt;
  return v;
}

std::vector<int> to_int_list(const std::string& s, int line) {
  std::vector<int> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    const auto v = to_int(item);
    if (!v) parse_error(line, "bad list element '" + item + "'");
    out.push_back(static_cast<int>(*v));
  }
  return out;
}

void check_value(const std::string& cmd, const std::string& key, const std::string& value, int line) {
  if (const auto it = enum_values().find(cmd + "." + key); it != enum_values().end()) {
    if (!it->second.contains(value)) parse_error(line, "bad value '" + value + "' for " + key);
    return;
  }
  if (key == "pi") {
    to_int_list(value, line);
  } else if (key == "d") {
    if (value.empty() || value.find_first_not_of("01") != std::string::npos || value.size() > 62) {
      parse_error(line, "d must be a bitstring");
    }
  } else if (!(cmd == "read-copy" && key == "f" && value == "all") && !to_int(value)) {
    parse_error(line, "bad integer '" + value + "' for " + key);
  }
}

int int_arg(const ScriptCommand& c, const std::string& key, int fallback = 0) {
  const auto it = c.args.find(key);
  return it == c.args.end() ? fallback : static_cast<int>(*to_int(it->second));
}

std::string str_arg(const ScriptCommand& c, const std::string& key, const std::string& fallback) {
  const auto it = c.args.find(key);
  return it == c.args.end() ? fallback : it->second;
}

bool has(const ScriptCommand& c, const std::string& key) { return c.args.contains(key); }

[[noreturn]] void semantic(const std::string& op, const std::string& why) {
  fail(ErrorKind::kSemantic, op + ": " + why);
}

Permutation permutation_arg(const ScriptCommand& c, int k) {
  if (has(c, "pi")) return Permutation(to_int_list(c.args.at("pi"), c.line));
  return Permutation::transposition(k, int_arg(c, "i"), int_arg(c, "j"));
}

// Descriptor-level model of a database, used by the dry run.
struct Model {
  QdbDescriptor d;
  bool sensor_known = true;
  std::set<int> copied;
  bool consumed = false;
  bool has_preparation = true;
};

void model_usable(const Model& m, const std::string& op) {
  if (m.consumed) semantic(op, "the database was consumed by a projective read");
}

void model_live(const Model& m, int f, const std::string& op) {
  if (f < 0 || f >= m.d.k) semantic(op, "entry " + std::to_string(f) + " outside [0, " + std::to_string(m.d.k) + ")");
  if (m.d.removed.contains(f) || m.d.probability(f) <= 0.0) {
    semantic(op, "entry " + std::to_string(f) + " is not occupied");
  }
}

void model_reservoir(const Model& m, const std::string& op) {
  model_usable(m, op);
  if (m.d.weights) semantic(op, "branch weights no longer follow the reservoir pattern");
  if (m.d.removed.contains(0) || m.d.value(0) != 0) semantic(op, "entry 0 must be an empty reservoir");
}

void require_seed(const RunOptions& o, const std::string& op) {
  if (!o.seed) semantic(op, "sampling needs --seed");
}

void check_buildable(const QdbDescriptor& d) {
  validate(d);
  if (!d.removed.empty() || d.weights) {
    semantic("build", "only reservoir-pattern descriptors without removed entries can be built");
  }
  if (d.value(0) != 0) semantic("build", "entry 0 is the reservoir and must be empty");
  if (d.u_d) check_data_transform(*d.u_d, d.data_width);
}

void imbalanced_descriptor(QdbDescriptor& d, const ExtendPlan& plan) {
  const int old_k = d.k;
  d.k += plan.new_entries;
  if (plan.z == 1) {
    d.l -= plan.new_entries;
  } else if (plan.balanced()) {
    d.l = plan.l_dprime - 1;
  } else {
    std::vector<double> w(static_cast<std::size_t>(d.k), plan.gamma * plan.gamma);
    w[0] = plan.alpha * plan.alpha;
    for (int j = 1; j < old_k; ++j) w[static_cast<std::size_t>(j)] = plan.beta * plan.beta;
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    d.weights = std::move(w);
    d.l = 0;
  }
}

// Applies one command to one model; returns every model the command can lead to.
std::vector<Model> step_model(const Model& in, const ScriptCommand& c, const RunOptions& o) {
  const std::string& op = c.name;
  Model m = in;
  if (op == "write") {
    const int f = int_arg(c, "f");
    const std::uint64_t v = parse_bitstring(c.args.at("d"));
    model_usable(m, op);
    if (f == 0) semantic(op, "entry 0 is the reservoir");
    model_live(m, f, op);
    if (m.d.value(f) != 0) semantic(op, "entry " + std::to_string(f) + " is not empty");
    if (v >= (std::uint64_t{1} << m.d.data_width)) {
      semantic(op, "value wider than the " + std::to_string(m.d.data_width) + "-bit data register");
    }
    if (!m.sensor_known) semantic(op, "the sensor is entangled with the database");
    if (v != 0) m.d.data[f] = v;
    if (str_arg(c, "mode", "cnot") == "swap" && v != 0) m.sensor_known = false;
    m.copied.erase(f);
  } else if (op == "release-sensor") {
    if (!m.sensor_known) semantic(op, "the sensor is entangled with the database");
  } else if (op == "read-copy") {
    model_usable(m, op);
    if (c.args.at("f") == "all") {
      for (int j = 0; j < m.d.k; ++j) {
        if (!m.d.removed.contains(j) && !m.copied.erase(j)) m.copied.insert(j);
      }
    } else {
      const int f = int_arg(c, "f");
      model_live(m, f, op);
      if (!m.copied.erase(f)) m.copied.insert(f);
    }
  } else if (op == "read-projective") {
    model_usable(m, op);
    if (has(c, "f")) {
      model_live(m, int_arg(c, "f"), op);
    } else {
      require_seed(o, op);
    }
    m.consumed = true;
    m.has_preparation = false;
  } else if (op == "remove") {
    const int f = int_arg(c, "f");
    model_usable(m, op);
    if (str_arg(c, "mode", "reservoir") == "projective") {
      model_live(m, f, op);
      require_seed(o, op);
      std::vector<Model> out;
      const double pf = m.d.probability(f);
      if (1.0 - pf > tol::kZeroProbability) {
        Model s = m;
        s.d.removed.insert(f);
        s.d.data.erase(f);
        if (s.d.weights) {
          auto& w = *s.d.weights;
          const double rest = 1.0 - w[static_cast<std::size_t>(f)];
          w[static_cast<std::size_t>(f)] = 0.0;
          for (double& x : w) x /= rest;
        } else if (f == 0) {
          s.d.l = 0;
        }
        s.copied.erase(f);
        s.has_preparation = false;
        out.push_back(std::move(s));
      }
      if (pf > tol::kZeroProbability) {
        Model s = m;
        std::vector<double> w(static_cast<std::size_t>(m.d.k), 0.0);
        w[static_cast<std::size_t>(f)] = 1.0;
        s.d.weights = std::move(w);
        s.has_preparation = false;
        out.push_back(std::move(s));
      }
      return out;
    }
    if (f == 0) semantic(op, "entry 0 is the reservoir");
    model_live(m, f, op);
    if (m.copied.contains(f)) semantic(op, "entry " + std::to_string(f) + " has been copied out");
    if (m.d.removed.contains(0) || m.d.value(0) != 0) semantic(op, "entry 0 must be an empty reservoir");
    if (!m.sensor_known) semantic(op, "the sensor is entangled with the database");
    if (m.d.weights) {
      auto& w = *m.d.weights;
      w[0] += w[static_cast<std::size_t>(f)];
      w[static_cast<std::size_t>(f)] = 0.0;
    } else {
      m.d.l += 1;
    }
    m.d.removed.insert(f);
    m.d.data.erase(f);
  } else if (op == "permute") {
    model_usable(m, op);
    if (!has(c, "pi") && !(has(c, "i") && has(c, "j"))) {
      fail(ErrorKind::kInvalidArgument, "permute needs pi= or both i= and j=");
    }
    const Permutation pi = permutation_arg(c, m.d.k);
    if (pi.size() != m.d.k) {
      fail(ErrorKind::kInvalidArgument, "permutation size " + std::to_string(pi.size()) + " differs from k = " +
                                            std::to_string(m.d.k));
    }
    const std::vector<double> before = m.d.probabilities();
    std::map<int, std::uint64_t> data;
    for (const auto& [j, v] : m.d.data) data[pi(j)] = v;
    m.d.data = std::move(data);
    std::set<int> removed;
    for (int j : m.d.removed) removed.insert(pi(j));
    m.d.removed = std::move(removed);
    std::set<int> copied;
    for (int j : m.copied) copied.insert(pi(j));
    m.copied = std::move(copied);
    if (m.d.weights || (m.d.l > 0 && pi(0) != 0)) {
      std::vector<double> w(before.size());
      for (int j = 0; j < m.d.k; ++j) w[static_cast<std::size_t>(pi(j))] = before[static_cast<std::size_t>(j)];
      m.d.weights = std::move(w);
    }
  } else if (op == "extend") {
    const int l = int_arg(c, "l");
    model_reservoir(m, op);
    if (l < 1) fail(ErrorKind::kInvalidArgument, "extend needs l >= 1");
    if (!m.has_preparation) semantic(op, "no unitary preparing the database is available");
    int remaining = l;
    while (remaining > 0) {
      if (m.d.l != 0 || !m.d.balanced()) semantic("transfer", "the database must be balanced");
      const int live = m.d.live_count();
      if (live < 2) fail(ErrorKind::kInvalidArgument, "transfer needs k >= 2");
      const int size = std::min(remaining, live);
      m.d.k += size;
      remaining -= size;
    }
  } else if (op == "extend-imbalanced") {
    const int l = int_arg(c, "l");
    model_reservoir(m, op);
    if (!m.d.removed.empty()) semantic(op, "removed entries are not supported");
    if (m.d.l != l) semantic(op, "the database reservoir holds l=" + std::to_string(m.d.l) + ", not " + std::to_string(l));
    std::optional<int> ldd;
    if (has(c, "ldd")) ldd = int_arg(c, "ldd");
    imbalanced_descriptor(m.d, plan_imbalanced(m.d.k, l, int_arg(c, "z"), 62, ldd));
  } else if (op == "emit") {
    if (str_arg(c, "what", "history") == "history" && !m.has_preparation) {
      semantic(op, "the preparation history was discarded by a measurement");
    }
  }
  return {std::move(m)};
}

Model model_of(const QdbDescriptor& d) { return Model{.d = d}; }

std::string artifact_name(const ScriptCommand& c, const std::string& stem, const std::string& ext) {
  return stem + "_" + std::to_string(c.index) + ext;
}

class Runner {
 public:
  explicit Runner(const RunOptions& o) : options_(o), rng_(o.seed.value_or(0)) {
    std::filesystem::create_directories(o.out_dir);
    if (o.initial) state_ = build(*o.initial);
  }

  void execute(const ScriptCommand& c) {
    const std::string& op = c.name;
    if (op == "prepare") {
      const int k = int_arg(c, "k");
      const int l = int_arg(c, "l");
      const int width = int_arg(c, "m", 1);
      if (str_arg(c, "mode", "general") == "balanced") {
        if (l != 0) fail(ErrorKind::kInvalidArgument, "balanced prepare takes no reservoir");
        state_ = prepare_balanced(k, width);
      } else {
        state_ = prepare_general(k, l, width);
      }
      return;
    }
    if (op == "plan") {
      const int k = has(c, "k") ? int_arg(c, "k") : db().descriptor.live_count();
      write_file(artifact_name(c, "plan", ".json"), plan_to_json(plan_transfer(k, int_arg(c, "l"))));
      return;
    }
    QdbState& q = db();
    if (op == "write") {
      const std::uint64_t v = parse_bitstring(c.args.at("d"));
      const int f = int_arg(c, "f");
      q = str_arg(c, "mode", "cnot") == "swap" ? write_swap_conditional(std::move(q), f, v)
                                               : write(std::move(q), f, v);
    } else if (op == "release-sensor") {
      q = release_sensor(std::move(q));
    } else if (op == "read-copy") {
      q = c.args.at("f") == "all" ? read_copy_all(std::move(q)) : read_copy(std::move(q), int_arg(c, "f"));
    } else if (op == "read-projective") {
      read_projective_cmd(c, q);
    } else if (op == "remove") {
      remove_cmd(c, q);
    } else if (op == "permute") {
      const Permutation pi = permutation_arg(c, q.descriptor.k);
      q = permute(std::move(q), pi);
    } else if (op == "extend") {
      ExtendResult r = extend(std::move(q), int_arg(c, "l"));
      q = std::move(r.state);
      for (std::size_t i = 0; i < r.plans.size(); ++i) {
        write_file("plan_" + std::to_string(c.index) + "_" + std::to_string(i) + ".json", plan_to_json(r.plans[i]));
      }
    } else if (op == "extend-imbalanced") {
      std::optional<int> ldd;
      if (has(c, "ldd")) ldd = int_arg(c, "ldd");
      const SecondStageRoute route =
          str_arg(c, "route", "direct") == "marker" ? SecondStageRoute::kMarker : SecondStageRoute::kDirect;
      q = extend_imbalanced(std::move(q), int_arg(c, "l"), int_arg(c, "z"), route, ldd);
    } else if (op == "emit") {
      if (str_arg(c, "what", "history") == "history" && !q.preparation) {
        semantic(op, "the preparation history was discarded by a measurement");
      }
      Circuit circuit = str_arg(c, "what", "history") == "history" ? *q.preparation : q.last_circuit;
      if (str_arg(c, "decompose", "0") == "1") circuit = decompose_mcx(circuit);
      write_file(artifact_name(c, "circuit", ".txt"), emit_text(circuit));
    } else if (op == "dump") {
      const bool csv = options_.format == DumpFormat::kCsv;
      write_file(artifact_name(c, "dump", csv ? ".csv" : ".json"),
                 dump_amplitudes(q.state, q.layout.labels(), options_.format));
    } else if (op == "save") {
      write_file(artifact_name(c, "descriptor", ".json"), descriptor_to_json(q.descriptor));
    }
  }

  RunResult finish() && { return {std::move(artifacts_), std::move(state_)}; }

 private:
  QdbState& db() {
    if (!state_) semantic("script", "no database; start with prepare");
    return *state_;
  }

  void write_file(const std::string& name, const std::string& text) {
    const std::filesystem::path path = options_.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) fail(ErrorKind::kInvalidArgument, "cannot write " + path.string());
    artifacts_.push_back(path);
  }

  int sample_entry(const std::vector<double>& p) {
    const double u = rng_.uniform();
    double acc = 0.0;
    int last = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] <= 0.0) continue;
      acc += p[j];
      last = static_cast<int>(j);
      if (u < acc) return last;
    }
    return last;
  }

  void read_projective_cmd(const ScriptCommand& c, QdbState& q) {
    int f = 0;
    if (has(c, "f")) {
      f = int_arg(c, "f");
      if (f < 0 || f >= q.descriptor.k || q.descriptor.removed.contains(f) || q.descriptor.probability(f) <= 0.0) {
        semantic("read-projective", "entry " + std::to_string(f) + " is not occupied");
      }
    } else {
      if (!options_.seed) semantic("read-projective", "sampling needs --seed");
      f = sample_entry(read_probabilities(q));
    }
    ReadoutResult r = read_projective(q, f);
    nlohmann::ordered_json j;
    j["entry"] = f;
    j["probability"] = r.probability;
    nlohmann::ordered_json amps = nlohmann::ordered_json::array();
    for (const AmplitudeRecord& rec :
         amplitude_records(r.data_state, std::vector<Register>(r.data_state.n_qubits(), Register::kData))) {
      amps.push_back({{"bits", rec.bits}, {"re", rec.re}, {"im", rec.im}});
    }
    j["data"] = amps;
    write_file(artifact_name(c, "read", ".json"), j.dump(2) + "\n");
    q = std::move(r.collapsed);
  }

  void remove_cmd(const ScriptCommand& c, QdbState& q) {
    const int f = int_arg(c, "f");
    if (str_arg(c, "mode", "reservoir") != "projective") {
      q = remove_reservoir(std::move(q), f);
      return;
    }
    if (!options_.seed) semantic("remove", "sampling needs --seed");
    RemovalOutcome r = remove_projective(q, f);
    const bool success = r.on_success && (!r.on_failure || rng_.uniform() < r.success_probability);
    nlohmann::ordered_json j;
    j["entry"] = f;
    j["success_probability"] = r.success_probability;
    j["success"] = success;
    write_file(artifact_name(c, "remove", ".json"), j.dump(2) + "\n");
    q = success ? std::move(*r.on_success) : std::move(*r.on_failure);
  }

  const RunOptions& options_;
  Rng rng_;
  std::optional<QdbState> state_;
  std::vector<std::filesystem::path> artifacts_;
};

}  // namespace

CommandError::CommandError(const ScriptCommand& command, const Error& cause)
    : Error(cause.kind(), "command " + std::to_string(command.index) + " (" + command.name + ", line " +
                              std::to_string(command.line) + "): " + cause.what()),
      index_(command.index) {}

std::vector<ScriptCommand> parse_script(std::string_view text) {
  std::vector<ScriptCommand> out;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::stringstream parts(raw);
    for (std::string part; std::getline(parts, part, ';');) {
      std::istringstream words(part);
      std::vector<std::string> tok;
      for (std::string w; words >> w;) tok.push_back(w);
      if (tok.empty()) continue;
      const auto spec = command_specs().find(tok[0]);
      if (spec == command_specs().end()) parse_error(line_no, "unknown command '" + tok[0] + "'");
      ScriptCommand c{.index = static_cast<int>(out.size()), .line = line_no, .name = tok[0]};
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto eq = tok[i].find('=');
        if (eq == std::string::npos || eq == 0) parse_error(line_no, "expected key=value, got '" + tok[i] + "'");
        const std::string key = tok[i].substr(0, eq);
        const std::string value = tok[i].substr(eq + 1);
        if (!spec->second.required.contains(key) && !spec->second.optional.contains(key)) {
          parse_error(line_no, "unknown argument '" + key + "' for " + c.name);
        }
        if (c.args.contains(key)) parse_error(line_no, "duplicate argument '" + key + "'");
        check_value(c.name, key, value, line_no);
        c.args[key] = value;
      }
      for (const std::string& key : spec->second.required) {
        if (!c.args.contains(key)) parse_error(line_no, c.name + " needs " + key + "=");
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

void dry_run(const std::vector<ScriptCommand>& script, const RunOptions& options) {
  std::vector<Model> models;
  if (options.initial) {
    check_buildable(*options.initial);
    models.push_back(model_of(*options.initial));
  }
  for (const ScriptCommand& c : script) {
    try {
      if (c.name == "prepare") {
        const int k = int_arg(c, "k");
        const int l = int_arg(c, "l");
        if (k < 1) fail(ErrorKind::kInvalidArgument, "prepare needs k >= 1");
        if (str_arg(c, "mode", "general") == "balanced") {
          if (l != 0) fail(ErrorKind::kInvalidArgument, "balanced prepare takes no reservoir");
          if (!is_power_of_two(static_cast<std::uint64_t>(k))) {
            fail(ErrorKind::kInvalidArgument, "prepare_balanced needs a power-of-two k, got " + std::to_string(k));
          }
        }
        models = {model_of({.k = k, .l = l, .data_width = int_arg(c, "m", 1)})};
        validate(models.front().d);
        continue;
      }
      if (c.name == "plan") {
        std::vector<int> ks;
        if (has(c, "k")) {
          ks.push_back(int_arg(c, "k"));
        } else {
          if (models.empty()) semantic("script", "no database; start with prepare");
          for (const Model& m : models) ks.push_back(m.d.live_count());
        }
        for (int k : ks) {
          if (k < 2) fail(ErrorKind::kInvalidArgument, "transfer needs k >= 2");
          if (int_arg(c, "l") > k) fail(ErrorKind::kInvalidArgument, "transfer needs 0 <= l <= k");
        }
        continue;
      }
      if (models.empty()) semantic("script", "no database; start with prepare");
      std::vector<Model> next;
      for (const Model& m : models) {
        for (Model& n : step_model(m, c, options)) next.push_back(std::move(n));
      }
      models = std::move(next);
    } catch (const Error& e) {
      throw CommandError(c, e);
    }
  }
}

RunResult run_script(const std::vector<ScriptCommand>& script, const RunOptions& options) {
  dry_run(script, options);
  Runner runner(options);
  for (const ScriptCommand& c : script) {
    try {
      runner.execute(c);
    } catch (const CommandError&) {
      throw;
    } catch (const Error& e) {
      throw CommandError(c, e);
    }
  }
  return std::move(runner).finish();
}

}  // namespace qdb
