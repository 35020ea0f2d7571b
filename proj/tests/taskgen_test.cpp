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

#include <set>

#include "exedec/domain.hpp"
#include "exedec/io.hpp"
#include "exedec/search.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {
namespace {

constexpr SplitKind kAllSplits[] = {SplitKind::None,         SplitKind::Length, SplitKind::ConceptMix,
                                    SplitKind::ConceptOrder, SplitKind::NewOp,  SplitKind::OpFunctionality};

TEST(RfInputs, SeedZeroGolden) {
  // Regression values: the generator's output for seed 0 at the time the
  // sampler was written.
  const std::vector<std::string> golden{" UFdiBElXj42Qf", "ruMm9wXp", "t", "aJ]JyI6hN2&IsN Y"};
  EXPECT_EQ(sample_rf_inputs(0), golden);
}

TEST(RfInputs, LengthsAlphabetAndSeeds) {
  std::set<std::vector<std::string>> distinct;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inputs = sample_rf_inputs(seed);
    ASSERT_EQ(inputs.size(), RobustFill::kNumExamples);
    for (const auto& s : inputs) {
      ASSERT_GE(s.size(), 1u);
      ASSERT_LE(s.size(), kRfMaxInputLength);
      for (char c : s) ASSERT_TRUE(rf::is_character(c)) << s;
      ASSERT_FALSE(rf::matches(rf::Regex::of(rf::RegexClass::Word), s).empty()) << s;
    }
    EXPECT_EQ(inputs, sample_rf_inputs(seed));
    distinct.insert(inputs);
  }
  EXPECT_EQ(distinct.size(), 300u);
}

TEST(RfTask, LengthAndNewOpShapes) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto train = sample_rf_task(seed, SplitKind::Length, Side::Train);
    EXPECT_GE(train.solution.expressions.size(), 1u);
    EXPECT_LE(train.solution.expressions.size(), 6u);
    const auto test = sample_rf_task(seed, SplitKind::NewOp, Side::Test);
    EXPECT_GE(test.solution.expressions.size(), 2u);
    EXPECT_LE(test.solution.expressions.size(), 6u);
    bool has_compose = false;
    for (const auto& e : test.solution.expressions) has_compose = has_compose || rf::category_of(e) == rf::Category::Compose;
    EXPECT_TRUE(has_compose);
    EXPECT_EQ(test, sample_rf_task(seed, SplitKind::NewOp, Side::Test));
  }
}

TEST(RfTask, EveryConfigurationVerifies) {
  for (SplitKind k : kAllSplits)
    for (Side side : {Side::Train, Side::Test})
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto task = sample_rf_task(seed, k, side);
        std::string why;
        ASSERT_TRUE(verify_task(task, &why)) << split_id(k) << " " << side_id(side) << " seed " << seed << ": " << why;
        for (const auto& e : task.solution.expressions)
          for (const auto& ex : task.spec.examples) {
            const auto part = rf::execute(e, ex.input);
            ASSERT_TRUE(part && !part->empty());
          }
      }
}

TEST(DcInputs, BoundsAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inputs = sample_dc_inputs(seed);
    ASSERT_EQ(inputs.size(), DeepCoder::kNumExamples);
    const std::size_t arity = inputs[0].size();
    ASSERT_TRUE(arity == 1 || arity == 2);
    for (const auto& row : inputs) {
      ASSERT_EQ(row.size(), arity);
      ASSERT_TRUE(row[0].is_list());
      for (std::size_t j = 0; j < row.size(); ++j) {
        ASSERT_EQ(row[j].is_list(), inputs[0][j].is_list());
        if (row[j].is_int()) {
          ASSERT_LE(std::abs(row[j].as_int()), kDcInputBound);
          continue;
        }
        ASSERT_GE(row[j].as_list().size(), 1u);
        ASSERT_LE(row[j].as_list().size(), kDcMaxListLength);
        for (dc::Int x : row[j].as_list()) ASSERT_LE(std::abs(x), kDcInputBound);
      }
    }
    EXPECT_EQ(inputs, sample_dc_inputs(seed));
  }
}

TEST(DcTask, TrainSidesSatisfyTheirPredicate) {
  for (SplitKind k : kAllSplits)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto task = build_dc_task(seed, k, Side::Train);
      std::string why;
      ASSERT_TRUE(verify_task(task, true, &why)) << split_id(k) << " seed " << seed << ": " << why;
      EXPECT_TRUE(GeneralizationSplit::make(k, Domain::DeepCoder).in_train(features_of(task.solution)));
    }
}

TEST(DcTask, LengthTestHasNoShorterSolution) {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const auto task = build_dc_task(seed, SplitKind::Length, Side::Test);
    EXPECT_EQ(task.solution.statements.size(), 5u);
    std::vector<std::vector<dc::Value>> inputs;
    std::vector<dc::Value> outputs;
    for (const auto& ex : task.spec.examples) {
      inputs.push_back(ex.state);
      outputs.push_back(ex.output);
    }
    const auto split = GeneralizationSplit::make(SplitKind::Length, Domain::DeepCoder);
    EXPECT_EQ(find_minimal_solutions(inputs, outputs, 4, split).min_length, 0);
    EXPECT_EQ(task, build_dc_task(seed, SplitKind::Length, Side::Test));
  }
}

TEST(DcTask, TestSidesPassMinimalityCheck) {
  for (SplitKind k : {SplitKind::ConceptMix, SplitKind::ConceptOrder, SplitKind::NewOp, SplitKind::OpFunctionality})
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto task = build_dc_task(seed, k, Side::Test);
      std::string why;
      ASSERT_TRUE(verify_task(task, true, &why)) << split_id(k) << " seed " << seed << ": " << why;
    }
}

TEST(DcTask, VariableNamesComeFromThePool) {
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto task = build_dc_task(seed, SplitKind::None, Side::Train);
    std::set<int> names(task.solution.inputs.begin(), task.solution.inputs.end());
    for (const auto& s : task.solution.statements) names.insert(s.target);
    EXPECT_EQ(names.size(), task.solution.inputs.size() + task.solution.statements.size());
    for (int v : names) {
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 9);
    }
    seen.insert(names.begin(), names.end());
  }
  EXPECT_GT(seen.size(), 5u);  // names vary across tasks
}

// ---------------------------------------------------------------------------
// Decomposition traces

TEST(Trace, NameReformattingSteps) {
  Task<RobustFill> task;
  for (const char* in : {"TURING, Alan", "knuth Donald", "Hopper Grace", "DIJKSTRA... Edsger"}) task.spec.examples.push_back({in, ""});
  task.solution = rf::parse_program("GetFrom(' ') | Const('.') | Compose(ToCase(PROPER), GetToken(WORD, 1))");
  for (auto& ex : task.spec.examples) ex.output = *rf::execute(task.solution, ex.input);
  const auto trace = decompose(task);
  ASSERT_EQ(trace.steps.size(), 3u);
  EXPECT_EQ(trace.steps[0].subgoals, (std::vector<std::string>{"Alan", "Donald", "Grace", "Edsger"}));
  EXPECT_EQ(trace.steps[1].spec.examples[0].output, ".Turing");
  EXPECT_EQ(trace.steps[2].spec.examples[0].output, "Turing");
}

TEST(Trace, SquaresFirstStep) {
  Task<DeepCoder> task;
  task.spec.examples.push_back({{dc::List{5, 3, -4}}, dc::List{9, 16, 25}});
  task.solution = dc::parse_program("x0 = INPUT | x1 = Map (**2) x0 | x2 = Sort x1");
  const auto trace = decompose(task);
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].subgoals[0], dc::Value(dc::List{25, 9, 16}));
  EXPECT_EQ(trace.steps[1].spec.examples[0].state.back(), dc::Value(dc::List{25, 9, 16}));
}

TEST(Trace, SingleStepSubgoalIsTheOutput) {
  Task<DeepCoder> task;
  task.spec.examples.push_back({{dc::List{2, 1}}, dc::List{1, 2}});
  task.solution = dc::parse_program("x0 = INPUT | x1 = Sort x0");
  const auto trace = decompose(task);
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_EQ(trace.steps[0].subgoals[0], task.spec.examples[0].output);
}

TEST(Trace, InconsistentSolutionIsReported) {
  Task<DeepCoder> task;
  task.spec.examples.push_back({{dc::List{}}, dc::Value(0)});
  task.solution = dc::parse_program("x0 = INPUT | x1 = Head x0");
  EXPECT_THROW(decompose(task), InconsistentSolution);
}

// Replaying each recorded subprogram through the specification update
// reproduces the next recorded spec and ends with the task solved.
template <class D>
void check_replay(const Task<D>& task) {
  const auto trace = decompose(task);
  typename D::Spec spec = task.spec;
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    ASSERT_EQ(trace.steps[t].spec, spec);
    std::vector<typename D::Value> results;
    for (std::size_t i = 0; i < spec.examples.size(); ++i) results.push_back(*D::execute(trace.steps[t].subprogram, spec, i));
    ASSERT_EQ(results, trace.steps[t].subgoals);
    const bool solved = results == outputs_of<D>(spec);
    ASSERT_EQ(solved, t + 1 == trace.steps.size());
    spec = std::get<typename D::Spec>(D::update_specification(spec, results));
  }
  std::vector<typename D::Subprogram> parts;
  for (const auto& s : trace.steps) parts.push_back(s.subprogram);
  EXPECT_TRUE(satisfies<D>(D::combine(parts, D::num_inputs(task.spec)), task.spec));
}

TEST(Trace, ReplayReproducesRecordedSpecs) {
  for (SplitKind k : kAllSplits)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      check_replay(sample_rf_task(seed, k, Side::Train));
      check_replay(sample_rf_task(seed, k, Side::Test));
      check_replay(build_dc_task(seed, k, Side::Train));
    }
}

}  // namespace
}  // namespace exedec
