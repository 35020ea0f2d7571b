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

#include <sstream>

#include "exedec/io.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {
namespace {

TEST(WireSpec, RobustFillShape) {
  rf::Spec spec;
  spec.examples.push_back({"TURING, Alan", ".Turing"});
  EXPECT_EQ(spec_to_json(spec).dump(),
            R"({"examples":[{"inputs":["\"TURING, Alan\""],"remaining_output":"\".Turing\"","bindings":[]}]})");
  EXPECT_EQ(parse_spec<RobustFill>(spec_to_json(spec)), spec);
}

TEST(WireSpec, DeepCoderShape) {
  dc::Spec spec;
  spec.num_inputs = 1;
  spec.examples.push_back({{dc::List{5, 3, -4}, dc::List{25, 9, 16}}, dc::List{9, 16, 25}});
  EXPECT_EQ(spec_to_json(spec).dump(),
            R"({"examples":[{"inputs":["[5, 3, -4]"],"remaining_output":"[9, 16, 25]",)"
            R"("bindings":[["x0","[5, 3, -4]"],["x1","[25, 9, 16]"]]}]})");
  EXPECT_EQ(parse_spec<DeepCoder>(spec_to_json(spec)), spec);
}

TEST(WireSpec, RejectsMalformedSpecs) {
  EXPECT_THROW(parse_spec<RobustFill>(Json::parse(R"({"examples":[]})")), ProtocolError);
  EXPECT_THROW(parse_spec<RobustFill>(Json::parse(R"({"examples":[{"inputs":[],"remaining_output":"\"\""}]})")),
               ProtocolError);
  EXPECT_THROW(parse_spec<DeepCoder>(Json::parse(
                   R"({"examples":[{"inputs":["[1]"],"remaining_output":"1","bindings":[["x0","[2]"]]}]})")),
               ProtocolError);
  EXPECT_THROW(parse_spec<DeepCoder>(Json::parse(R"({"examples":[{"inputs":["[1"],"remaining_output":"1"}]})")),
               ParseError);
}

TEST(Jsonl, SkipsBlankLinesAndNamesBadOnes) {
  std::istringstream ok("{\"a\":1}\n\n  \n{\"b\":2}\n");
  EXPECT_EQ(read_jsonl(ok).size(), 2u);
  std::istringstream bad("{\"a\":1}\n{oops\n");
  try {
    read_jsonl(bad);
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

template <class D>
void check_round_trip(const Task<D>& task) {
  const Json j = task_to_json(task);
  const Json reparsed = Json::parse(j.dump());
  EXPECT_EQ(task_from_json<D>(reparsed), task);
  EXPECT_EQ(reparsed["trace"].size(), D::subprograms(task.solution).size());
  EXPECT_FALSE(task_to_json(task, false).contains("trace"));
  const AnyTask any = any_task_from_json(reparsed);
  ASSERT_TRUE(std::holds_alternative<Task<D>>(any));
}

TEST(TaskJson, RoundTripsBothDomains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    check_round_trip(sample_rf_task(seed, SplitKind::ConceptMix, Side::Test));
    check_round_trip(build_dc_task(seed, SplitKind::NewOp, Side::Train));
  }
}

TEST(TaskJson, FieldOrderAndTrace) {
  const auto task = build_dc_task(1, SplitKind::None, Side::Train);
  const Json j = task_to_json(task);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"domain", "split", "side", "seed", "examples", "program", "trace"}));
  // Trace statements use canonical names even when the program does not.
  const auto& first = j["trace"][0];
  EXPECT_EQ(first["spec"]["examples"][0]["bindings"][0][0], "x0");
  EXPECT_EQ(first["subprogram"].get<std::string>().find('='), std::string::npos);
}

TEST(TaskJson, WrongDomainIsRejected) {
  const Json j = task_to_json(sample_rf_task(0, SplitKind::None, Side::Train));
  EXPECT_THROW(task_from_json<DeepCoder>(j), ProtocolError);
}

}  // namespace
}  // namespace exedec
