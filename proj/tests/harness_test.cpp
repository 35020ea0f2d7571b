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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "exedec/harness.hpp"

namespace exedec {
namespace {

std::vector<Json> small_dataset() {
  std::vector<Json> out;
  for (auto [domain, split] : {std::pair{Domain::RobustFill, SplitKind::Length},
                               std::pair{Domain::RobustFill, SplitKind::NewOp},
                               std::pair{Domain::DeepCoder, SplitKind::ConceptOrder}}) {
    DatasetRequest req;
    req.domain = domain;
    req.split = split;
    req.side = Side::Test;
    req.count = 4;
    for (auto& j : generate_dataset(req)) out.push_back(std::move(j));
  }
  return out;
}

std::vector<Json> run_all(const std::vector<Json>& dataset, const RunConfig& config) {
  SearchRunner runner(config);
  std::vector<Json> results;
  for (const auto& line : dataset) results.push_back(record_to_json(runner.run(any_task_from_json(line))));
  return results;
}

TEST(GenerateDataset, IndependentOfJobCount) {
  DatasetRequest req;
  req.domain = Domain::DeepCoder;
  req.split = SplitKind::NewOp;
  req.side = Side::Test;
  req.count = 6;
  req.seed_start = 10;
  req.verify = true;
  const auto one = generate_dataset(req);
  req.jobs = 3;
  EXPECT_EQ(one, generate_dataset(req));
  ASSERT_EQ(one.size(), 6u);
  EXPECT_EQ(one[0]["seed"], 10);
  EXPECT_EQ(one[5]["seed"], 15);
  req.with_trace = false;
  req.count = 1;
  EXPECT_FALSE(generate_dataset(req)[0].contains("trace"));
}

TEST(SearchRecord, JsonRoundTrip) {
  SearchRecord r{Domain::DeepCoder, SplitKind::Length, Side::Test, 7, "exedec", "enum", 10, true, "x0 = INPUT\nx1 = Sort x0", -1.5, 2, 3.25};
  const Json j = record_to_json(r);
  const SearchRecord back = record_from_json(j);
  EXPECT_EQ(record_to_json(back), j);
  r.solved = false;
  r.program.clear();
  const Json u = record_to_json(r);
  EXPECT_TRUE(u["program"].is_null());
  EXPECT_TRUE(u["score"].is_null());
  EXPECT_FALSE(record_from_json(u).solved);
}

TEST(Evaluate, OracleSolvesEverything) {
  const auto dataset = small_dataset();
  for (SearchMode mode : {SearchMode::ExeDec, SearchMode::NoSubgoal}) {
    RunConfig config;
    config.mode = mode;
    config.search.beam_size = 1;
    const auto report = evaluate(run_all(dataset, config), dataset);
    ASSERT_EQ(report.groups.size(), 1u);
    EXPECT_TRUE(report.flagged.empty());
    EXPECT_EQ(report.groups[0].cells.size(), 3u);
    for (const auto& [key, cell] : report.groups[0].cells) {
      EXPECT_EQ(cell.total, 4u);
      EXPECT_EQ(cell.solved, 4u);
      EXPECT_DOUBLE_EQ(cell.success_rate(), 1.0);
    }
  }
}

TEST(Evaluate, MissingResultsCountAsFailures) {
  const auto dataset = small_dataset();
  const auto report = evaluate({}, dataset);
  ASSERT_EQ(report.groups.size(), 1u);
  for (const auto& [key, cell] : report.groups[0].cells) {
    EXPECT_EQ(cell.total, 4u);
    EXPECT_EQ(cell.solved, 0u);
  }
  auto results = run_all(dataset, {});
  results.resize(5);
  const auto partial = evaluate(results, dataset);
  std::size_t solved = 0, total = 0;
  for (const auto& [key, cell] : partial.groups[0].cells) solved += cell.solved, total += cell.total;
  EXPECT_EQ(solved, 5u);
  EXPECT_EQ(total, 12u);
}

TEST(Evaluate, FlagsFalseClaims) {
  const auto dataset = small_dataset();
  auto results = run_all(dataset, {});
  results[0]["program"] = "Const('#')";
  results[1]["program"] = "not a program";
  const auto report = evaluate(results, dataset);
  EXPECT_EQ(report.flagged.size(), 2u);
  std::size_t solved = 0;
  for (const auto& [key, cell] : report.groups[0].cells) solved += cell.solved;
  EXPECT_EQ(solved, 10u);
}

TEST(Evaluate, Mismatches) {
  const auto dataset = small_dataset();
  auto results = run_all(dataset, {});
  auto dup = results;
  dup.push_back(results[0]);
  EXPECT_THROW(evaluate(dup, dataset), MismatchError);
  auto orphan = results;
  orphan[0]["seed"] = 999;
  EXPECT_THROW(evaluate(orphan, dataset), MismatchError);
  auto twice = dataset;
  twice.push_back(dataset[0]);
  EXPECT_THROW(evaluate(results, twice), MismatchError);
  // The same task in two groups is fine.
  auto other = results[0];
  other["beam_size"] = 3;
  dup.back() = other;
  EXPECT_EQ(evaluate(dup, dataset).groups.size(), 2u);
}

TEST(Evaluate, OrderInvariant) {
  const auto dataset = small_dataset();
  auto results = run_all(dataset, {});
  results[2]["solved"] = false;
  results[2]["program"] = nullptr;
  const Json base = report_to_json(evaluate(results, dataset));
  std::mt19937 rng(5);
  for (int t = 0; t < 5; ++t) {
    auto r = results;
    auto d = dataset;
    std::shuffle(r.begin(), r.end(), rng);
    std::shuffle(d.begin(), d.end(), rng);
    auto rep = report_to_json(evaluate(r, d));
    // Wall-time sums may differ in the last bits with the summation order.
    for (auto* j : {&rep, const_cast<Json*>(&base)})
      for (auto& g : (*j)["groups"])
        for (auto& c : g["cells"]) c.erase("mean_wall_ms");
    EXPECT_EQ(rep, base);
  }
}

TEST(ReportTable, Layout) {
  EvalReport report;
  EvalGroup g{"exedec", "oracle", 1, {}};
  g.cells[{Domain::RobustFill, Side::Test, SplitKind::Length}] = {3, 4, 4, 0.0};
  g.cells[{Domain::RobustFill, Side::Test, SplitKind::NewOp}] = {1, 4, 4, 0.0};
  g.cells[{Domain::RobustFill, Side::Test, SplitKind::None}] = {0, 4, 4, 0.0};
  report.groups.push_back(g);
  const std::string table = report_table(report);
  EXPECT_NE(table.find("75.0 (3/4)"), std::string::npos);
  EXPECT_NE(table.find("25.0 (1/4)"), std::string::npos);
  // GenAvg skips NONE: (75 + 25) / 2.
  EXPECT_NE(table.find("50.0\n"), std::string::npos);
  EXPECT_EQ(table.find("flagged"), std::string::npos);
}

TEST(StepAccuracy, OracleAndEmpty) {
  StepAccuracy oracle, empty;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto task = sample_rf_task(seed, SplitKind::ConceptMix, Side::Test);
    const auto trace = decompose(task);
    OracleBackend<RobustFill> goals(Role::Subgoal, trace), synth(Role::Synthesizer, trace);
    add_step_accuracy(task, &goals, &synth, oracle);
    OracleBackend<RobustFill> nothing(Role::Subgoal);
    OracleBackend<RobustFill> nothing_synth(Role::Synthesizer);
    add_step_accuracy(task, &nothing, &nothing_synth, empty);
  }
  EXPECT_GT(oracle.steps, 10u);
  EXPECT_DOUBLE_EQ(oracle.subgoal_rate(), 1.0);
  EXPECT_DOUBLE_EQ(oracle.behavior_rate(), 1.0);
  EXPECT_EQ(empty.steps, oracle.steps);
  EXPECT_DOUBLE_EQ(empty.subgoal_rate(), 0.0);
  EXPECT_DOUBLE_EQ(empty.behavior_rate(), 0.0);
}

TEST(Ids, RoundTrip) {
  for (SearchMode m : {SearchMode::ExeDec, SearchMode::NoSubgoal}) EXPECT_EQ(parse_mode(mode_id(m)), m);
  for (BackendKind b : {BackendKind::Oracle, BackendKind::Enum, BackendKind::Remote})
    EXPECT_EQ(parse_backend(backend_id(b)), b);
  EXPECT_THROW(parse_mode("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace exedec
