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
#include <string>

#include "exedec/common.hpp"
#include "exedec/dc_dsl.hpp"
#include "exedec/taskgen.hpp"

namespace exedec::dc {
namespace {

std::optional<Value> run(const std::string& program, std::vector<Value> inputs) {
  return execute(parse_program(program), inputs);
}

Value list(std::initializer_list<Int> xs) { return Value(List(xs)); }

std::optional<Value> apply_text(const std::string& rhs, std::vector<Value> operands) {
  const Statement s = parse_statement(rhs);
  std::vector<const Value*> ptrs;
  for (const auto& v : operands) ptrs.push_back(&v);
  return apply(s.op, s.lambda, ptrs);
}

TEST(DcExecute, SquaresSorted) {
  const std::string p = "x0 = INPUT | x1 = Map (**2) x0 | x2 = Sort x1";
  EXPECT_EQ(run(p, {list({5, 3, -4})}), list({9, 16, 25}));
  EXPECT_EQ(run(p, {list({-2})}), list({4}));
  EXPECT_EQ(run(p, {list({3, 7, 1, 4})}), list({1, 9, 16, 49}));
}

TEST(DcExecute, EdgeCases) {
  EXPECT_EQ(run("x0 = INPUT | x1 = Reverse x0", {list({})}), list({}));
  EXPECT_EQ(run("x0 = INPUT | x1 = Head x0", {list({})}), std::nullopt);
  EXPECT_EQ(apply_text("Scanl1 (+) x0", {list({1, 2, 3})}), list({1, 3, 6}));
  EXPECT_EQ(apply_text("ZipWith (*) x0 x1", {list({1, 3}), list({2, 2})}), list({2, 6}));
  EXPECT_EQ(apply_text("Take x0 x1", {Value(0), list({4, 5})}), list({}));
  EXPECT_EQ(apply_text("Take x0 x1", {Value(-2), list({4, 5})}), list({}));
  EXPECT_EQ(apply_text("Drop x0 x1", {Value(9), list({4, 5})}), list({}));
  EXPECT_EQ(apply_text("Access x0 x1", {Value(2), list({4, 5})}), std::nullopt);
  EXPECT_EQ(apply_text("Map (/2) x0", {list({-3, 3})}), list({-2, 1}));
  EXPECT_EQ(apply_text("Filter (%2==1) x0", {list({-3, -2, 5})}), list({-3, 5}));
  EXPECT_EQ(apply_text("Map (**2) x0", {list({17})}), std::nullopt);  // 289 exceeds the value bound
}

TEST(DcTypecheck, OperandSortsAndLambdaKinds) {
  State st;
  st.bindings = {{0, list({1, 2})}, {1, Value(3)}, {2, list({4})}};
  EXPECT_FALSE(typecheck(parse_statement("x3 = Sort x1"), st));
  EXPECT_TRUE(typecheck(parse_statement("x3 = ZipWith (max) x0 x2"), st));
  Statement bad = parse_statement("x3 = Map (+1) x0");
  bad.lambda = IntToBool::Positive;
  EXPECT_FALSE(typecheck(bad, st));
  EXPECT_THROW(parse_statement("x3 = Map (>0) x0"), ParseError);
}

TEST(DcParse, RoundTripAndErrors) {
  const std::string p = "x0 = INPUT | x1 = Sort x0";
  EXPECT_EQ(to_string(parse_program(p)), p);
  EXPECT_THROW(parse_program("x1 = Sort x0"), ParseError);
  EXPECT_THROW(parse_program("x0 = INPUT | x1 = Sort x7"), ParseError);
  EXPECT_THROW(parse_program("x0 = INPUT | x0 = Sort x0"), ParseError);
  EXPECT_EQ(rhs_string(parse_statement("x4 = Map (**2) x0")), "Map (**2) x0");
  EXPECT_EQ(parse_value("[1, -2,3]"), list({1, -2, 3}));
  EXPECT_EQ(to_string(parse_value("-7")), "-7");
  EXPECT_THROW(parse_value("[1,"), ParseError);
}

TEST(DcCanonicalize, RenamesInBindingOrder) {
  const Program p = parse_program("x7 = INPUT | x3 = INPUT | x9 = Take x3 x7 | x1 = Sort x9");
  EXPECT_EQ(to_string(canonicalize(p)), "x0 = INPUT | x1 = INPUT | x2 = Take x1 x0 | x3 = Sort x2");
}

// Property suites over sampled programs.

class DcProperty : public ::testing::TestWithParam<int> {};

TEST_P(DcProperty, RoundTripAndMonotoneState) {
  Rng rng = make_rng(static_cast<std::uint64_t>(GetParam()), {91});
  for (int n = 0; n < 200; ++n) {
    const auto inputs = sample_dc_inputs(rng);
    std::vector<Type> types;
    for (const auto& v : inputs[0]) types.push_back(v.is_int() ? Type::Int : Type::List);
    const Program p = random_dc_program(rng, types, 1 + n % 5);
    const std::string text = to_string(p);
    ASSERT_EQ(parse_program(text), p) << text;
    for (const auto& ex : inputs) {
      State st;
      for (std::size_t j = 0; j < ex.size(); ++j) st.bindings.push_back({p.inputs[j], ex[j]});
      bool ok = true;
      for (const auto& s : p.statements) {
        ASSERT_TRUE(typecheck(s, st)) << text;
        auto next = execute(s, st);
        if (!next) {
          ok = false;
          break;
        }
        ASSERT_EQ(next->bindings.size(), st.bindings.size() + 1);
        ASSERT_TRUE(std::equal(st.bindings.begin(), st.bindings.end(), next->bindings.begin()));
        st = std::move(*next);
      }
      const auto out = execute(p, ex);
      ASSERT_EQ(out.has_value(), ok) << text;
      if (ok) ASSERT_EQ(*out, st.bindings.back().value);
      ASSERT_EQ(out, execute(p, ex));
    }
  }
}

TEST_P(DcProperty, ListOperationLaws) {
  Rng rng = make_rng(static_cast<std::uint64_t>(GetParam()), {92});
  std::uniform_int_distribution<Int> elem(-50, 50), len(0, 5);
  auto random_list = [&] {
    List xs(static_cast<std::size_t>(len(rng)));
    for (auto& x : xs) x = elem(rng);
    return Value(xs);
  };
  for (int n = 0; n < 500; ++n) {
    const Value a = random_list(), b = random_list();
    const auto zipped = apply_text("ZipWith (min) x0 x1", {a, b});
    ASSERT_TRUE(zipped);
    EXPECT_EQ(zipped->as_list().size(), std::min(a.as_list().size(), b.as_list().size()));
    const auto kept = apply_text("Filter (>0) x0", {a});
    ASSERT_TRUE(kept);
    std::size_t j = 0;
    for (Int x : a.as_list())
      if (j < kept->as_list().size() && kept->as_list()[j] == x) ++j;
    EXPECT_EQ(j, kept->as_list().size());  // subsequence
    const auto sorted = apply_text("Sort x0", {a});
    ASSERT_TRUE(sorted);
    EXPECT_TRUE(std::is_permutation(a.as_list().begin(), a.as_list().end(), sorted->as_list().begin(),
                                    sorted->as_list().end()));
    EXPECT_TRUE(std::is_sorted(sorted->as_list().begin(), sorted->as_list().end()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DcProperty, ::testing::Range(0, 5));

}  // namespace
}  // namespace exedec::dc
