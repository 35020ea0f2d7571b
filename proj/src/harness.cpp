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

#include "exedec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spdlog/spdlog.h"

namespace exedec {
namespace {

template <class D>
Json generate_one(const DatasetRequest& req, std::uint64_t seed) {
  Task<D> task;
  std::string why;
  bool ok = true;
  if constexpr (D::kDomain == Domain::RobustFill) {
    task = sample_rf_task(seed, req.split, req.side);
    if (req.verify) ok = verify_task(task, &why);
  } else {
    task = build_dc_task(seed, req.split, req.side);
    if (req.verify) ok = verify_task(task, true, &why);
  }
  if (!ok) throw std::logic_error("task " + std::to_string(seed) + " fails verification: " + why);
  return task_to_json(task, req.with_trace);
}

std::string cell_name(Domain d, SplitKind s, Side side, std::uint64_t seed) {
  return std::string(domain_id(d)) + "/" + std::string(split_id(s)) + "/" + std::string(side_id(side)) + "/" +
         std::to_string(seed);
}

}  // namespace

std::vector<Json> generate_dataset(const DatasetRequest& req) {
  std::vector<Json> out(req.count);
  std::vector<std::exception_ptr> errors(req.count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < req.count; j = next++) {
      try {
        const std::uint64_t seed = req.seed_start + j;
        out[j] = req.domain == Domain::RobustFill ? generate_one<RobustFill>(req, seed)
                                                  : generate_one<DeepCoder>(req, seed);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(req.jobs, static_cast<unsigned>(std::max<std::size_t>(req.count, 1))));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view mode_id(SearchMode m) { return m == SearchMode::ExeDec ? "exedec" : "nosubgoal"; }

SearchMode parse_mode(std::string_view id) {
  if (id == "exedec") return SearchMode::ExeDec;
  if (id == "nosubgoal") return SearchMode::NoSubgoal;
  throw std::invalid_argument("unknown search mode '" + std::string(id) + "'");
}

std::string_view backend_id(BackendKind b) {
  switch (b) {
    case BackendKind::Oracle: return "oracle";
    case BackendKind::Enum: return "enum";
    case BackendKind::Remote: return "remote";
  }
  return "?";
}

BackendKind parse_backend(std::string_view id) {
  if (id == "oracle") return BackendKind::Oracle;
  if (id == "enum") return BackendKind::Enum;
  if (id == "remote") return BackendKind::Remote;
  throw std::invalid_argument("unknown backend '" + std::string(id) + "'");
}

Json record_to_json(const SearchRecord& r) {
  Json j;
  j["domain"] = std::string(domain_id(r.domain));
  j["split"] = std::string(split_id(r.split));
  j["side"] = std::string(side_id(r.side));
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  j["backend"] = r.backend;
  j["beam_size"] = r.beam_size;
  j["solved"] = r.solved;
  j["program"] = r.solved ? Json(r.program) : Json(nullptr);
  j["score"] = r.solved ? Json(r.score) : Json(nullptr);
  j["steps"] = r.steps;
  j["wall_ms"] = r.wall_ms;
  return j;
}

SearchRecord record_from_json(const Json& j) {
  SearchRecord r;
  r.domain = parse_domain(require_string(j, "domain"));
  r.split = parse_split(require_string(j, "split"));
  r.side = parse_side(require_string(j, "side"));
  r.seed = static_cast<std::uint64_t>(require_int(j, "seed"));
  r.mode = j.value("mode", "-");
  r.backend = j.value("backend", "-");
  r.beam_size = j.value("beam_size", 0);
  const Json& solved = require(j, "solved");
  if (!solved.is_boolean()) throw ProtocolError("'solved' must be a boolean");
  r.solved = solved.get<bool>();
  if (const auto it = j.find("program"); it != j.end() && it->is_string()) r.program = it->get<std::string>();
  if (const auto it = j.find("score"); it != j.end() && it->is_number()) r.score = it->get<double>();
  r.steps = j.value("steps", 0);
  r.wall_ms = j.value("wall_ms", 0.0);
  return r;
}

// ---------------------------------------------------------------------------

SearchRunner::SearchRunner(RunConfig config) : config_(std::move(config)) {
  if (config_.backend == BackendKind::Remote) {
    if (config_.endpoint.empty()) throw std::invalid_argument("the remote backend needs an endpoint");
    remote_ = std::make_shared<RemoteClient>(config_.endpoint, config_.timeout_ms);
  }
}

SearchRunner::~SearchRunner() = default;

std::size_t SearchRunner::protocol_errors() const { return remote_ ? remote_->protocol_errors() : 0; }

SearchRecord SearchRunner::run(const AnyTask& task) {
  return std::visit([&](const auto& t) { return run_domain(t); }, task);
}

template <class D>
SearchRecord SearchRunner::run_domain(const Task<D>& task) {
  std::unique_ptr<ProposalBackend<D>> subgoals, synthesizer, combined;
  std::unique_ptr<ProposalBackend<D>> chained;
  ProposalBackend<D>* synth = nullptr;
  switch (config_.backend) {
    case BackendKind::Oracle:
    case BackendKind::Enum: {
      const auto trace = decompose(task);
      subgoals = std::make_unique<OracleBackend<D>>(Role::Subgoal, trace);
      if (config_.backend == BackendKind::Oracle) {
        synthesizer = std::make_unique<OracleBackend<D>>(Role::Synthesizer, trace);
        combined = std::make_unique<OracleBackend<D>>(Role::Combined, trace);
        synth = synthesizer.get();
      } else {
        if constexpr (D::kDomain == Domain::RobustFill) synth = &rf_enum_;
        else synth = &dc_enum_;
        chained = std::make_unique<ChainedBackend<D>>(*subgoals, *synth);
      }
      break;
    }
    case BackendKind::Remote:
      subgoals = std::make_unique<RemoteBackend<D>>(Role::Subgoal, remote_);
      synthesizer = std::make_unique<RemoteBackend<D>>(Role::Synthesizer, remote_);
      combined = std::make_unique<RemoteBackend<D>>(Role::Combined, remote_);
      synth = synthesizer.get();
      break;
  }
  ProposalBackend<D>& whole = chained ? *chained : *combined;

  const auto start = std::chrono::steady_clock::now();
  const SearchResult<D> result = config_.mode == SearchMode::ExeDec
                                     ? exedec_search(task.spec, *subgoals, *synth, config_.search)
                                     : nosubgoal_search(task.spec, whole, config_.search);
  const auto stop = std::chrono::steady_clock::now();

  SearchRecord r;
  r.domain = D::kDomain;
  r.split = task.split;
  r.side = task.side;
  r.seed = task.seed;
  r.mode = std::string(mode_id(config_.mode));
  r.backend = std::string(backend_id(config_.backend));
  r.beam_size = config_.search.beam_size;
  r.steps = result.steps;
  r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if (!result.programs.empty()) {
    r.solved = true;
    r.program = D::to_text(result.programs.front().program);
    r.score = result.programs.front().score;
  }
  return r;
}

template SearchRecord SearchRunner::run_domain(const Task<RobustFill>&);
template SearchRecord SearchRunner::run_domain(const Task<DeepCoder>&);

// ---------------------------------------------------------------------------

EvalReport evaluate(std::span<const Json> results, std::span<const Json> dataset) {
  using TaskKey = std::tuple<Domain, SplitKind, Side, std::uint64_t>;
  std::map<TaskKey, AnyTask> tasks;
  std::map<CellKey, std::size_t> totals;
  for (const Json& line : dataset) {
    AnyTask t = any_task_from_json(line);
    const TaskKey key = std::visit(
        [](const auto& task) {
          return TaskKey{std::decay_t<decltype(task)>::domain_type::kDomain, task.split, task.side, task.seed};
        },
        t);
    if (!tasks.emplace(key, std::move(t)).second)
      throw MismatchError("dataset holds task " + cell_name(std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key)) + " twice");
    ++totals[{std::get<0>(key), std::get<2>(key), std::get<1>(key)}];
  }

  EvalReport report;
  std::vector<std::set<TaskKey>> seen;
  auto group_of = [&](const SearchRecord& r) -> std::size_t {
    for (std::size_t g = 0; g < report.groups.size(); ++g) {
      const auto& grp = report.groups[g];
      if (grp.mode == r.mode && grp.backend == r.backend && grp.beam_size == r.beam_size) return g;
    }
    report.groups.push_back({r.mode, r.backend, r.beam_size, {}});
    seen.emplace_back();
    return report.groups.size() - 1;
  };

  for (const Json& line : results) {
    const SearchRecord r = record_from_json(line);
    const TaskKey key{r.domain, r.split, r.side, r.seed};
    const std::string name = cell_name(r.domain, r.split, r.side, r.seed);
    const auto it = tasks.find(key);
    if (it == tasks.end()) throw MismatchError("result for " + name + " has no dataset task");
    const std::size_t g = group_of(r);
    if (!seen[g].insert(key).second) throw MismatchError("two results for " + name + " in one run");
    EvalCell& cell = report.groups[g].cells[{r.domain, r.side, r.split}];
    ++cell.results;
    cell.wall_ms_sum += r.wall_ms;
    if (!r.solved) continue;
    const bool verified = std::visit(
        [&](const auto& task) {
          using D = typename std::decay_t<decltype(task)>::domain_type;
          try {
            return satisfies<D>(D::parse_program(r.program), task.spec);
          } catch (const ParseError&) {
            return false;
          }
        },
        it->second);
    if (verified) {
      ++cell.solved;
    } else {
      report.flagged.push_back(name);
      spdlog::warn("claimed solution for {} fails re-execution", name);
    }
  }
  if (report.groups.empty()) report.groups.emplace_back();
  for (auto& grp : report.groups)
    for (const auto& [key, n] : totals) grp.cells[key].total = n;
  return report;
}

Json report_to_json(const EvalReport& report) {
  Json j;
  Json groups = Json::array();
  for (const auto& grp : report.groups) {
    Json g;
    g["mode"] = grp.mode;
    g["backend"] = grp.backend;
    g["beam_size"] = grp.beam_size;
    Json cells = Json::array();
    for (const auto& [key, cell] : grp.cells) {
      Json c;
      c["domain"] = std::string(domain_id(std::get<0>(key)));
      c["side"] = std::string(side_id(std::get<1>(key)));
      c["split"] = std::string(split_id(std::get<2>(key)));
      c["solved"] = cell.solved;
      c["total"] = cell.total;
      c["success_rate"] = cell.success_rate();
      c["mean_wall_ms"] = cell.mean_wall_ms();
      cells.push_back(std::move(c));
    }
    g["cells"] = std::move(cells);
    groups.push_back(std::move(g));
  }
  j["groups"] = std::move(groups);
  j["flagged"] = report.flagged;
  return j;
}

std::string report_table(const EvalReport& report) {
  std::ostringstream out;
  char buf[64];
  auto col = [&](const std::string& text, int width) {
    std::snprintf(buf, sizeof buf, "%-*s", width, text.c_str());
    out << buf;
  };
  col("mode", 10);
  col("backend", 8);
  col("beam", 5);
  col("domain", 7);
  col("side", 6);
  for (std::size_t s = 0; s < kNumSplits; ++s) col(std::string(split_id(static_cast<SplitKind>(s))), 18);
  out << "GenAvg\n";
  for (const auto& grp : report.groups) {
    std::set<std::pair<Domain, Side>> rows;
    for (const auto& [key, cell] : grp.cells) rows.insert({std::get<0>(key), std::get<1>(key)});
    for (const auto& [domain, side] : rows) {
      col(grp.mode, 10);
      col(grp.backend, 8);
      col(std::to_string(grp.beam_size), 5);
      col(std::string(domain_id(domain)), 7);
      col(std::string(side_id(side)), 6);
      double gen_sum = 0.0;
      int gen_n = 0;
      for (std::size_t s = 0; s < kNumSplits; ++s) {
        const auto split = static_cast<SplitKind>(s);
        const auto it = grp.cells.find({domain, side, split});
        if (it == grp.cells.end() || it->second.total == 0) {
          col("-", 18);
          continue;
        }
        const double rate = it->second.success_rate();
        std::snprintf(buf, sizeof buf, "%.1f (%zu/%zu)", 100.0 * rate, it->second.solved, it->second.total);
        col(buf, 18);
        if (split != SplitKind::None) {
          gen_sum += rate;
          ++gen_n;
        }
      }
      if (gen_n == 0) {
        out << "-\n";
      } else {
        std::snprintf(buf, sizeof buf, "%.1f", 100.0 * gen_sum / gen_n);
        out << buf << '\n';
      }
    }
  }
  if (!report.flagged.empty()) {
    out << "failed re-execution:";
    for (const auto& f : report.flagged) out << ' ' << f;
    out << '\n';
  }
  return out.str();
}

}  // namespace exedec
