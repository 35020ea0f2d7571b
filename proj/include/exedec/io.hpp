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

// JSON forms shared by dataset files, result files and the wire protocol.
// Values travel as their surface syntax.

#pragma once

#include <cstdint>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "exedec/common.hpp"
#include "exedec/domain.hpp"
#include "exedec/split.hpp"
#include "exedec/task.hpp"

namespace exedec {

using Json = nlohmann::ordered_json;

inline constexpr int kWireVersion = 1;

// One JSON object per non-blank line. Throws ProtocolError naming the line.
std::vector<Json> read_jsonl(std::istream& in);
std::vector<Json> read_jsonl_file(const std::string& path);

const Json& require(const Json& j, const char* key);
std::string require_string(const Json& j, const char* key);
std::int64_t require_int(const Json& j, const char* key);

// {"examples":[{"inputs":[...],"remaining_output":...,"bindings":[[name,value],...]}]}
// RobustFill has no bindings. DeepCoder lists every variable in creation
// order, inputs first, under canonical names.
Json spec_to_json(const rf::Spec& spec);
Json spec_to_json(const dc::Spec& spec);
void spec_from_json(const Json& j, rf::Spec& spec);
void spec_from_json(const Json& j, dc::Spec& spec);

template <class D>
typename D::Spec parse_spec(const Json& j) {
  typename D::Spec spec;
  spec_from_json(j, spec);
  return spec;
}

// Dataset line:
// {"domain","split","side","seed","examples":[{"inputs":[...],"output":...}],
//  "program","trace":[{"spec","subgoals":[...],"subprogram"}]}
template <class D>
Json task_to_json(const Task<D>& task, bool with_trace = true) {
  Json j;
  j["domain"] = std::string(domain_id(D::kDomain));
  j["split"] = std::string(split_id(task.split));
  j["side"] = std::string(side_id(task.side));
  j["seed"] = task.seed;
  Json examples = Json::array();
  const Json wire = spec_to_json(task.spec);
  for (const Json& e : wire["examples"]) {
    Json ex;
    ex["inputs"] = e["inputs"];
    ex["output"] = e["remaining_output"];
    examples.push_back(std::move(ex));
  }
  j["examples"] = std::move(examples);
  j["program"] = D::to_text(task.solution);
  if (with_trace) {
    Json steps = Json::array();
    for (const auto& step : decompose(task).steps) {
      Json s;
      s["spec"] = spec_to_json(step.spec);
      Json goals = Json::array();
      for (const auto& g : step.subgoals) goals.push_back(D::value_text(g));
      s["subgoals"] = std::move(goals);
      s["subprogram"] = D::to_text(step.subprogram);
      steps.push_back(std::move(s));
    }
    j["trace"] = std::move(steps);
  }
  return j;
}

Domain task_domain(const Json& j);

template <class D>
Task<D> task_from_json(const Json& j) {
  if (task_domain(j) != D::kDomain) throw ProtocolError("dataset line is for another domain");
  Task<D> task;
  task.split = parse_split(require_string(j, "split"));
  task.side = parse_side(require_string(j, "side"));
  task.seed = static_cast<std::uint64_t>(require_int(j, "seed"));
  Json wire;
  wire["examples"] = Json::array();
  for (const Json& ex : require(j, "examples")) {
    Json e;
    e["inputs"] = require(ex, "inputs");
    e["remaining_output"] = require(ex, "output");
    wire["examples"].push_back(std::move(e));
  }
  spec_from_json(wire, task.spec);
  task.solution = D::parse_program(require_string(j, "program"));
  return task;
}

using AnyTask = std::variant<Task<RobustFill>, Task<DeepCoder>>;
AnyTask any_task_from_json(const Json& j);

}  // namespace exedec
