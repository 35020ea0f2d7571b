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

#include "exedec/backends.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {
namespace {

Task<RobustFill> name_task() {
  Task<RobustFill> task;
  task.solution = rf::parse_program("GetFrom(' ') | Const('.') | Compose(ToCase(PROPER), GetToken(WORD, 1))");
  for (const char* in : {"TURING, Alan", "knuth Donald", "Hopper Grace", "DIJKSTRA... Edsger"})
    task.spec.examples.push_back({in, *rf::execute(task.solution, in)});
  return task;
}

TEST(OracleBackend, ReplaysTheTrace) {
  const auto task = name_task();
  const auto trace = decompose(task);
  OracleBackend<RobustFill> goals(Role::Subgoal, trace), synth(Role::Synthesizer, trace), combined(Role::Combined, trace);
  const auto g = goals.propose(task.spec, 5);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].text, R"("Alan" | "Donald" | "Grace" | "Edsger")");
  EXPECT_EQ(g[0].logp, 0.0);
  const auto values = parse_values_text<RobustFill>(g[0].text);
  const auto s = synth.propose(with_outputs<RobustFill>(task.spec, values), 5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].text, "GetFrom(' ')");
  EXPECT_EQ(combined.propose(task.spec, 5)[0].text, "GetFrom(' ')");

  auto off = task.spec;
  off.examples[0].output += "?";
  EXPECT_TRUE(goals.propose(off, 5).empty());
  EXPECT_TRUE(synth.propose(off, 5).empty());
  EXPECT_TRUE(goals.propose(task.spec, 0).empty());
}

TEST(EnumBackend, DeepCoderSquares) {
  dc::Spec spec;
  spec.examples.push_back({{dc::List{5, 3, -4}}, dc::List{25, 9, 16}});
  EnumBackend<DeepCoder> backend;
  const auto props = backend.propose(spec, 10);
  // Frozen from an enumerator run: operation order, then operands, then lambda.
  ASSERT_EQ(props.size(), 2u);
  EXPECT_EQ(props[0].text, "Map (**2) x0");
  EXPECT_EQ(props[0].logp, 0.0);
  EXPECT_EQ(props[1].text, "ZipWith (*) x0 x0");
  EXPECT_EQ(props[1].logp, -1.0);
}

TEST(EnumBackend, DeepCoderSubgoalEqualToABinding) {
  dc::Spec spec;
  spec.examples.push_back({{dc::List{1, 2, 5}}, dc::List{1, 2, 5}});
  spec.examples.push_back({{dc::List{-3, 0}}, dc::List{-3, 0}});
  const auto props = EnumBackend<DeepCoder>().propose(spec, 10);
  std::vector<std::string> texts;
  for (const auto& p : props) texts.push_back(p.text);
  EXPECT_EQ(texts, (std::vector<std::string>{"Sort x0", "ZipWith (min) x0 x0", "ZipWith (max) x0 x0", "Scanl1 (max) x0"}));
}

TEST(EnumBackend, DeepCoderUnreachable) {
  dc::Spec spec;
  spec.examples.push_back({{dc::List{1, 2}}, dc::Value(1000)});
  EXPECT_TRUE(EnumBackend<DeepCoder>().propose(spec, 10).empty());
}

TEST(EnumBackend, RobustFillFirstStep) {
  auto spec = name_task().spec;
  const std::vector<std::string> goals{"Alan", "Donald", "Grace", "Edsger"};
  const auto target = with_outputs<RobustFill>(spec, goals);
  EnumBackend<RobustFill> backend;
  const auto props = backend.propose(target, 4);
  ASSERT_EQ(props.size(), 4u);
  EXPECT_EQ(props[0].text, "GetFrom(' ')");
  for (std::size_t j = 0; j < props.size(); ++j) {
    EXPECT_EQ(props[j].logp, -static_cast<double>(j));
    const auto e = rf::parse_expression(props[j].text);
    for (std::size_t i = 0; i < goals.size(); ++i) EXPECT_EQ(rf::execute(e, spec.examples[i].input), goals[i]);
  }
}

TEST(EnumBackend, RobustFillComposeOnlyWhenNeeded) {
  auto spec = name_task().spec;
  const std::vector<std::string> goals{"Turing", "Knuth", "Hopper", "Dijkstra"};
  const auto props = EnumBackend<RobustFill>().propose(with_outputs<RobustFill>(spec, goals), 3);
  ASSERT_EQ(props.size(), 3u);
  for (const auto& p : props) {
    const auto e = rf::parse_expression(p.text);
    EXPECT_EQ(rf::category_of(e), rf::Category::Compose);
    for (std::size_t i = 0; i < goals.size(); ++i) EXPECT_EQ(rf::execute(e, spec.examples[i].input), goals[i]);
  }
  // A constant target needs no Compose.
  const std::vector<std::string> dots{".", ".", ".", "."};
  const auto c = EnumBackend<RobustFill>().propose(with_outputs<RobustFill>(spec, dots), 10);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].text, "Const('.')");
  for (const auto& p : c) EXPECT_NE(rf::category_of(rf::parse_expression(p.text)), rf::Category::Compose);
}

TEST(EnumBackend, PureAndExact) {
  EnumBackend<RobustFill> backend;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto task = sample_rf_task(seed, SplitKind::NewOp, Side::Test);
    for (const auto& step : decompose(task).steps) {
      const auto target = with_outputs<RobustFill>(step.spec, step.subgoals);
      const auto first = backend.propose(target, 5);
      EXPECT_EQ(first, backend.propose(target, 5));
      EXPECT_EQ(first, EnumBackend<RobustFill>().propose(target, 5));
      EXPECT_LE(first.size(), 5u);
      for (const auto& p : first) {
        const auto e = rf::parse_expression(p.text);
        for (std::size_t i = 0; i < step.subgoals.size(); ++i)
          ASSERT_EQ(rf::execute(e, step.spec.examples[i].input), step.subgoals[i]) << p.text;
      }
    }
  }
}

// Given the recorded subgoals, the enumerator finds a subprogram with the
// recorded behavior at every step of generated tasks.
TEST(EnumBackend, CompleteOnGeneratedTraces) {
  EnumBackend<RobustFill> rf_enum;
  EnumBackend<DeepCoder> dc_enum;
  for (SplitKind k : {SplitKind::None, SplitKind::NewOp, SplitKind::OpFunctionality, SplitKind::ConceptMix})
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      for (const auto& step : decompose(sample_rf_task(seed, k, Side::Test)).steps)
        ASSERT_FALSE(rf_enum.propose(with_outputs<RobustFill>(step.spec, step.subgoals), 1).empty())
            << rf::to_string(step.subprogram);
      for (const auto& step : decompose(build_dc_task(seed, k, Side::Train)).steps)
        ASSERT_FALSE(dc_enum.propose(with_outputs<DeepCoder>(step.spec, step.subgoals), 1).empty())
            << dc::rhs_string(step.subprogram);
    }
}

TEST(RandomBackend, DeterministicAndWellFormed) {
  const auto task = build_dc_task(3, SplitKind::None, Side::Train);
  const auto trace = decompose(task);
  RandomBackend<DeepCoder> a(Role::Synthesizer, 42, &trace), b(Role::Synthesizer, 42, &trace),
      c(Role::Synthesizer, 43, &trace);
  const auto pa = a.propose(task.spec, 8);
  EXPECT_EQ(pa, b.propose(task.spec, 8));
  EXPECT_EQ(pa, a.propose(task.spec, 8));
  EXPECT_NE(pa, c.propose(task.spec, 8));
  ASSERT_EQ(pa.size(), 8u);
  for (const auto& p : pa) EXPECT_LE(p.logp, 0.0);
}

TEST(RankProposals, StableAndTruncating) {
  std::vector<Proposal> ps{{"a", -1.0}, {"b", -0.5}, {"c", -1.0}, {"d", 0.0}};
  rank_proposals(ps, 3);
  EXPECT_EQ(ps, (std::vector<Proposal>{{"d", 0.0}, {"b", -0.5}, {"a", -1.0}}));
}

TEST(ChainedBackend, SumsLogProbabilities) {
  const auto task = name_task();
  const auto trace = decompose(task);
  RandomBackend<RobustFill> goals(Role::Subgoal, 1, &trace, {1.0, 0.0, 2.0});
  OracleBackend<RobustFill> synth(Role::Synthesizer, trace);
  ChainedBackend<RobustFill> chained(goals, synth);
  const auto g = goals.propose(task.spec, 2);
  const auto c = chained.propose(task.spec, 2);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].text, "GetFrom(' ')");
  EXPECT_DOUBLE_EQ(c[0].logp, std::max(g[0].logp, g[1].logp));
  EXPECT_EQ(chained.role(), Role::Combined);
}

}  // namespace
}  // namespace exedec
