// Copyright 2026 The ExeDec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "exedec/io.hpp"

#include <fstream>

namespace exedec {

std::vector<Json> read_jsonl(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw ProtocolError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Json> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_jsonl(in);
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw ProtocolError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ProtocolError(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::int64_t require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw ProtocolError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

Json spec_to_json(const rf::Spec& spec) {
  Json examples = Json::array();
  for (const auto& ex : spec.examples) {
    Json e;
    e["inputs"] = Json::array({rf::quote(ex.input)});
    e["remaining_output"] = rf::quote(ex.output);
    e["bindings"] = Json::array();
    examples.push_back(std::move(e));
  }
  Json out;
  out["examples"] = std::move(examples);
  return out;
}

Json spec_to_json(const dc::Spec& spec) {
  Json examples = Json::array();
  for (const auto& ex : spec.examples) {
    Json inputs = Json::array();
    Json bindings = Json::array();
    for (std::size_t v = 0; v < ex.state.size(); ++v) {
      const std::string text = dc::to_string(ex.state[v]);
      if (v < spec.num_inputs) inputs.push_back(text);
      bindings.push_back(Json::array({dc::var_name(static_cast<int>(v)), text}));
    }
    Json e;
    e["inputs"] = std::move(inputs);
    e["remaining_output"] = dc::to_string(ex.output);
    e["bindings"] = std::move(bindings);
    examples.push_back(std::move(e));
  }
  Json out;
  out["examples"] = std::move(examples);
  return out;
}

namespace {

const Json& examples_of(const Json& j) {
  const Json& examples = require(j, "examples");
  if (!examples.is_array() || examples.empty()) throw ProtocolError("spec needs a nonempty examples array");
  return examples;
}

std::vector<std::string> string_array(const Json& j, const char* key) {
  const Json& a = require(j, key);
  if (!a.is_array()) throw ProtocolError(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const Json& v : a) {
    if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

void spec_from_json(const Json& j, rf::Spec& spec) {
  spec.examples.clear();
  for (const Json& e : examples_of(j)) {
    const auto inputs = string_array(e, "inputs");
    if (inputs.size() != 1) throw ProtocolError("RobustFill examples take exactly one input");
    spec.examples.push_back({rf::unquote(inputs[0]), rf::unquote(require_string(e, "remaining_output"))});
  }
}

void spec_from_json(const Json& j, dc::Spec& spec) {
  spec.examples.clear();
  spec.num_inputs = 0;
  for (const Json& e : examples_of(j)) {
    const auto inputs = string_array(e, "inputs");
    if (inputs.empty() || inputs.size() > 2) throw ProtocolError("DeepCoder examples take 1 or 2 inputs");
    if (spec.num_inputs == 0) spec.num_inputs = inputs.size();
    if (inputs.size() != spec.num_inputs) throw ProtocolError("examples disagree on input count");
    dc::Example ex;
    for (const auto& text : inputs) ex.state.push_back(dc::parse_value(text));
    const auto it = e.find("bindings");
    if (it != e.end() && !it->empty()) {
      if (!it->is_array() || it->size() < spec.num_inputs) throw ProtocolError("bindings must start with the inputs");
      for (std::size_t v = 0; v < it->size(); ++v) {
        const Json& b = (*it)[v];
        if (!b.is_array() || b.size() != 2 || !b[1].is_string()) throw ProtocolError("binding must be [name, value]");
        dc::Value value = dc::parse_value(b[1].get<std::string>());
        if (v < spec.num_inputs) {
          if (value != ex.state[v]) throw ProtocolError("bindings disagree with inputs");
        } else {
          ex.state.push_back(std::move(value));
        }
      }
    }
    ex.output = dc::parse_value(require_string(e, "remaining_output"));
    if (!spec.examples.empty() && ex.state.size() != spec.examples[0].state.size())
      throw ProtocolError("examples disagree on binding count");
    spec.examples.push_back(std::move(ex));
  }
}

Domain task_domain(const Json& j) { return parse_domain(require_string(j, "domain")); }

AnyTask any_task_from_json(const Json& j) {
  if (task_domain(j) == Domain::RobustFill) return task_from_json<RobustFill>(j);
  return task_from_json<DeepCoder>(j);
}

}  // namespace exedec
