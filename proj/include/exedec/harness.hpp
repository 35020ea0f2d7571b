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

// Experiment plumbing behind the command line: dataset generation, search
// runs with result records, evaluation reports and single-step accuracy.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "exedec/backends.hpp"
#include "exedec/io.hpp"
#include "exedec/remote.hpp"
#include "exedec/search.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {

// ---------------------------------------------------------------------------
// Dataset generation

struct DatasetRequest {
  Domain domain = Domain::RobustFill;
  SplitKind split = SplitKind::None;
  Side side = Side::Train;
  std::size_t count = 0;
  std::uint64_t seed_start = 0;
  unsigned jobs = 1;
  bool verify = false;      // re-check every task invariant
  bool with_trace = true;
};

// One JSON line per task, ordered by seed whatever the job count.
std::vector<Json> generate_dataset(const DatasetRequest& request);

// ---------------------------------------------------------------------------
// Search runs

enum class SearchMode { ExeDec, NoSubgoal };
enum class BackendKind { Oracle, Enum, Remote };

std::string_view mode_id(SearchMode m);
SearchMode parse_mode(std::string_view id);
std::string_view backend_id(BackendKind b);
BackendKind parse_backend(std::string_view id);

struct RunConfig {
  SearchMode mode = SearchMode::ExeDec;
  BackendKind backend = BackendKind::Oracle;
  SearchConfig search;
  std::string endpoint;      // remote only
  int timeout_ms = 30000;    // remote only
};

struct SearchRecord {
  Domain domain = Domain::RobustFill;
  SplitKind split = SplitKind::None;
  Side side = Side::Train;
  std::uint64_t seed = 0;
  std::string mode;
  std::string backend;
  int beam_size = 0;
  bool solved = false;
  std::string program;   // empty when unsolved
  double score = 0.0;
  int steps = 0;
  double wall_ms = 0.0;  // around the search call only
};

Json record_to_json(const SearchRecord& r);
SearchRecord record_from_json(const Json& j);

// Builds backends per task and runs the configured search. Oracle answers
// come from each task's own trace; the enumerative synthesizer takes oracle
// subgoals.
class SearchRunner {
 public:
  explicit SearchRunner(RunConfig config);
  ~SearchRunner();

  SearchRecord run(const AnyTask& task);
  const RunConfig& config() const { return config_; }
  // Remote protocol failures so far; 0 for local backends.
  std::size_t protocol_errors() const;

 private:
  template <class D>
  SearchRecord run_domain(const Task<D>& task);

  RunConfig config_;
  EnumBackend<RobustFill> rf_enum_;
  EnumBackend<DeepCoder> dc_enum_;
  std::shared_ptr<RemoteClient> remote_;
};

// ---------------------------------------------------------------------------
// Evaluation

struct EvalCell {
  std::size_t solved = 0;
  std::size_t total = 0;     // dataset tasks in the cell
  std::size_t results = 0;   // result lines in the cell
  double wall_ms_sum = 0.0;

  double success_rate() const { return total == 0 ? 0.0 : static_cast<double>(solved) / static_cast<double>(total); }
  double mean_wall_ms() const { return results == 0 ? 0.0 : wall_ms_sum / static_cast<double>(results); }
};

using CellKey = std::tuple<Domain, Side, SplitKind>;

// All results sharing (mode, backend, beam size).
struct EvalGroup {
  std::string mode = "-";
  std::string backend = "-";
  int beam_size = 0;
  std::map<CellKey, EvalCell> cells;
};

struct EvalReport {
  std::vector<EvalGroup> groups;
  std::vector<std::string> flagged;  // claimed solutions that failed re-execution
};

// Aligns results with dataset tasks by (domain, split, side, seed) and
// re-executes every claimed solution. Throws MismatchError when a result
// has no task or a task has two results in one group.
EvalReport evaluate(std::span<const Json> results, std::span<const Json> dataset);

Json report_to_json(const EvalReport& report);
// Success rates in percent, one row per group, domain and side; GenAvg
// averages the generalization splits present.
std::string report_table(const EvalReport& report);

// ---------------------------------------------------------------------------
// Single-step accuracy over ground-truth traces

struct StepAccuracy {
  std::size_t steps = 0;
  std::size_t subgoal_hits = 0;    // top-1 subgoals equal the recorded ones
  std::size_t behavior_hits = 0;   // top-1 subprogram reproduces the recorded results

  double subgoal_rate() const { return steps == 0 ? 0.0 : static_cast<double>(subgoal_hits) / static_cast<double>(steps); }
  double behavior_rate() const { return steps == 0 ? 0.0 : static_cast<double>(behavior_hits) / static_cast<double>(steps); }
};

// `program_source` is a synthesizer (fed the recorded subgoals) or a
// combined backend (fed the step spec). Either backend may be null.
template <class D>
void add_step_accuracy(const Task<D>& task, ProposalBackend<D>* subgoals, ProposalBackend<D>* program_source,
                       StepAccuracy& acc) {
  for (const auto& step : decompose(task).steps) {
    ++acc.steps;
    if (subgoals) {
      const auto top = subgoals->propose(step.spec, 1);
      if (!top.empty()) {
        try {
          if (parse_values_text<D>(top[0].text) == step.subgoals) ++acc.subgoal_hits;
        } catch (const ParseError&) {
        }
      }
    }
    if (!program_source) continue;
    const auto query = program_source->role() == Role::Combined
                           ? step.spec
                           : with_outputs<D>(step.spec, step.subgoals);
    const auto top = program_source->propose(query, 1);
    if (top.empty()) continue;
    typename D::Subprogram sub;
    try {
      sub = D::parse_subprogram(top[0].text);
    } catch (const ParseError&) {
      continue;
    }
    bool same = true;
    for (std::size_t i = 0; i < step.spec.examples.size() && same; ++i) {
      const auto v = D::execute(sub, step.spec, i);
      same = v && *v == step.subgoals[i];
    }
    if (same) ++acc.behavior_hits;
  }
}

}  // namespace exedec
