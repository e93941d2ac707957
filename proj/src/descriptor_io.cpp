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

#include "qdb/descriptor_io.hpp"

#include "json.hpp"
#include "qdb/circuit_text.hpp"

namespace qdb {

using nlohmann::ordered_json;

std::string descriptor_to_json(const QdbDescriptor& d) {
  ordered_json j;
  j["k"] = d.k;
  j["l"] = d.l;
  j["data_width"] = d.data_width;
  ordered_json data = ordered_json::object();
  for (const auto& [idx, v] : d.data) {
    if (v != 0) data[std::to_string(idx)] = to_bitstring(v, d.data_width);
  }
  j["data"] = data;
  j["u_d"] = d.u_d ? ordered_json(emit_text(*d.u_d)) : ordered_json(nullptr);
  if (!d.removed.empty()) j["removed"] = d.removed;
  if (d.weights) j["weights"] = *d.weights;
  return j.dump(2) + "\n";
}

QdbDescriptor descriptor_from_json(const std::string& text) {
  QdbDescriptor d;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) fail(ErrorKind::kParse, "descriptor must be a JSON object");
    d.k = j.at("k").get<int>();
    d.l = j.value("l", 0);
    int width = -1;
    std::map<int, std::string> raw;
    if (j.contains("data") && !j["data"].is_null()) {
      for (const auto& [key, val] : j["data"].items()) {
        std::size_t used = 0;
        const int idx = std::stoi(key, &used);
        if (used != key.size()) fail(ErrorKind::kParse, "data key '" + key + "' is not an integer");
        const std::string bits = val.get<std::string>();
        if (width >= 0 && static_cast<int>(bits.size()) != width) {
          fail(ErrorKind::kInvalidArgument, "data bitstrings must share one length");
        }
        width = static_cast<int>(bits.size());
        raw[idx] = bits;
      }
    }
    if (j.contains("data_width")) {
      d.data_width = j["data_width"].get<int>();
      if (width >= 0 && width > d.data_width) {
        fail(ErrorKind::kInvalidArgument, "data bitstring longer than data_width");
      }
    } else {
      d.data_width = width >= 0 ? width : 1;
    }
    for (const auto& [idx, bits] : raw) {
      const std::uint64_t v = parse_bitstring(bits);
      if (v != 0) d.data[idx] = v;
    }
    if (j.contains("u_d") && !j["u_d"].is_null()) d.u_d = parse_text(j["u_d"].get<std::string>());
    if (j.contains("removed")) d.removed = j["removed"].get<std::set<int>>();
    if (j.contains("weights")) d.weights = j["weights"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("descriptor: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::kParse, "descriptor: data keys must be integers");
  } catch (const std::out_of_range&) {
    fail(ErrorKind::kParse, "descriptor: data key out of range");
  }
  validate(d);
  return d;
}

}  // namespace qdb
