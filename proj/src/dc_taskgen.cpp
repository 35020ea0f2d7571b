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

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "exedec/common.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {
namespace {

constexpr std::uint32_t kTagDcInputs = 3;
constexpr std::uint32_t kTagDcTask = 4;
constexpr int kNamePool = 10;  // variables x0..x9

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

int lambda_count(dc::Op op) {
  switch (dc::signature(op).lambda_kind) {
    case 1: return dc::kNumIntToInt;
    case 2: return dc::kNumIntToBool;
    case 3: return dc::kNumIntPair;
    default: return 1;
  }
}

dc::Lambda make_lambda(dc::Op op, int index) {
  switch (dc::signature(op).lambda_kind) {
    case 1: return static_cast<dc::IntToInt>(index);
    case 2: return static_cast<dc::IntToBool>(index);
    case 3: return static_cast<dc::IntPair>(index);
    default: return std::monostate{};
  }
}

std::vector<int> admitted_lambdas(dc::Op op, const SlotConstraint& slot) {
  std::vector<int> out;
  for (int l = 0; l < lambda_count(op); ++l) {
    dc::Statement s;
    s.op = op;
    s.lambda = make_lambda(op, l);
    if (slot.admits(features_of(s))) out.push_back(l);
  }
  return out;
}

dc::List random_list(Rng& rng) {
  dc::List xs(static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(kDcMaxListLength))));
  for (auto& x : xs) x = uniform(rng, -static_cast<int>(kDcInputBound), static_cast<int>(kDcInputBound));
  return xs;
}

std::vector<dc::Value> column(const std::vector<std::vector<dc::Value>>& rows, std::size_t v) {
  std::vector<dc::Value> out;
  for (const auto& r : rows) out.push_back(r[v]);
  return out;
}

}  // namespace

std::vector<std::vector<dc::Value>> sample_dc_inputs(std::uint64_t seed) {
  Rng rng = make_rng(seed, {kTagDcInputs});
  return sample_dc_inputs(rng);
}

std::vector<std::vector<dc::Value>> sample_dc_inputs(Rng& rng) {
  const int arity = uniform(rng, 1, 2);
  const bool second_list = uniform(rng, 0, 1) == 1;
  std::vector<std::vector<dc::Value>> out;
  for (std::size_t e = 0; e < DeepCoder::kNumExamples; ++e) {
    std::vector<dc::Value> row{random_list(rng)};
    if (arity == 2) {
      if (second_list) row.emplace_back(random_list(rng));
      else row.emplace_back(static_cast<dc::Int>(uniform(rng, 0, static_cast<int>(kDcMaxIntInput))));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<dc::Statement> random_statement(Rng& rng, std::span<const dc::Type> var_types,
                                              const SlotConstraint& slot) {
  std::vector<int> ints, lists;
  for (std::size_t v = 0; v < var_types.size(); ++v)
    (var_types[v] == dc::Type::Int ? ints : lists).push_back(static_cast<int>(v));

  std::vector<std::pair<dc::Op, std::vector<int>>> options;
  for (int o = 0; o < dc::kNumOps; ++o) {
    const auto op = static_cast<dc::Op>(o);
    bool available = true;
    for (dc::Type t : dc::signature(op).operands) available = available && !(t == dc::Type::Int ? ints : lists).empty();
    if (!available) continue;
    auto lambdas = admitted_lambdas(op, slot);
    if (!lambdas.empty()) options.emplace_back(op, std::move(lambdas));
  }
  if (options.empty()) return std::nullopt;

  const auto& [op, lambdas] = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
  dc::Statement s;
  s.target = static_cast<int>(var_types.size());
  s.op = op;
  s.lambda = make_lambda(op, lambdas[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(lambdas.size()) - 1))]);
  for (dc::Type t : dc::signature(op).operands) {
    const auto& pool = t == dc::Type::Int ? ints : lists;
    s.args.push_back(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))]);
  }
  return s;
}

dc::Program random_dc_program(Rng& rng, std::span<const dc::Type> input_types, int length) {
  std::vector<dc::Type> types(input_types.begin(), input_types.end());
  dc::Program p;
  for (std::size_t j = 0; j < types.size(); ++j) p.inputs.push_back(static_cast<int>(j));
  for (int j = 0; j < length; ++j) {
    auto s = random_statement(rng, types);
    if (!s) break;
    types.push_back(dc::signature(s->op).result);
    p.statements.push_back(std::move(*s));
  }
  return p;
}

// On the train side the caller's program witnesses a train solution of
// length `length`, so only the absence of shorter solutions is checked.
bool dc_minimality_holds(std::span<const std::vector<dc::Value>> inputs, std::span<const dc::Value> outputs,
                         int length, const GeneralizationSplit& split, Side side, const DcEnumConfig& config) {
  const bool length_only = split.kind == SplitKind::None || split.kind == SplitKind::Length;
  if (side == Side::Train || length_only) {
    if (length <= 1) return length == 1;
    return find_minimal_solutions(inputs, outputs, length - 1, split, config).min_length == 0;
  }
  const auto r = find_minimal_solutions(inputs, outputs, length, split, config);
  return r.min_length == length && r.all_test;
}

Task<DeepCoder> build_dc_task(std::uint64_t seed, SplitKind split_kind, Side side, const DcGenConfig& config) {
  const auto split = GeneralizationSplit::make(split_kind, Domain::DeepCoder);
  Rng rng = make_rng(seed, {kTagDcTask, static_cast<std::uint32_t>(split_kind), static_cast<std::uint32_t>(side)});
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const auto inputs = sample_dc_inputs(rng);
    const std::size_t arity = inputs[0].size();
    const int length = sample_length(rng, split, side);
    const auto plan = slot_plan(rng, split, side, length);

    std::vector<std::vector<dc::Value>> rows = inputs;
    std::vector<dc::Type> types;
    for (const auto& v : inputs[0]) types.push_back(v.is_int() ? dc::Type::Int : dc::Type::List);
    dc::Program program;
    for (std::size_t j = 0; j < arity; ++j) program.inputs.push_back(static_cast<int>(j));
    std::uint32_t unused = 0;  // statement variables not read yet

    for (int t = 0; t < length; ++t) {
      const int left = length - 1 - t;
      bool placed = false;
      for (int tries = 0; tries < config.statement_tries && !placed; ++tries) {
        auto s = random_statement(rng, types, plan[static_cast<std::size_t>(t)]);
        if (!s) break;
        std::uint32_t pending = unused;
        for (int a : s->args) pending &= ~(1u << a);
        if (left == 0 ? pending != 0 : std::popcount(pending) > left) continue;

        std::vector<dc::Value> results;
        dc::Spec view{arity, {}};
        for (const auto& row : rows) {
          view.examples = {{row, dc::Value()}};
          auto r = DeepCoder::execute(*s, view, 0);
          if (!r) break;
          results.push_back(std::move(*r));
        }
        if (results.size() != rows.size()) continue;
        bool repeats = false;
        for (std::size_t v = 0; v < types.size() && !repeats; ++v) repeats = column(rows, v) == results;
        if (repeats) continue;

        for (std::size_t e = 0; e < rows.size(); ++e) rows[e].push_back(results[e]);
        unused = pending | (1u << types.size());
        types.push_back(dc::signature(s->op).result);
        program.statements.push_back(std::move(*s));
        placed = true;
      }
      if (!placed) break;
    }
    if (program.statements.size() != static_cast<std::size_t>(length)) continue;
    if (!split.in_side(side, features_of(program))) continue;

    const auto outputs = column(rows, rows[0].size() - 1);
    if (!dc_minimality_holds(inputs, outputs, length, split, side, config.enumeration)) continue;

    // Random distinct names from the pool, assigned in binding order.
    std::array<int, kNamePool> names;
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);
    dc::Program named;
    for (int v : program.inputs) named.inputs.push_back(names[static_cast<std::size_t>(v)]);
    for (dc::Statement s : program.statements) {
      s.target = names[static_cast<std::size_t>(s.target)];
      for (int& a : s.args) a = names[static_cast<std::size_t>(a)];
      named.statements.push_back(std::move(s));
    }

    Task<DeepCoder> task{split_kind, side, seed, {arity, {}}, std::move(named)};
    for (std::size_t e = 0; e < inputs.size(); ++e) task.spec.examples.push_back({inputs[e], outputs[e]});
    return task;
  }
  throw GenerationTimeout("no DeepCoder task after " + std::to_string(config.max_attempts) + " attempts");
}

bool verify_dc_minimality(const Task<DeepCoder>& task, const DcEnumConfig& config) {
  const auto split = GeneralizationSplit::make(task.split, Domain::DeepCoder);
  std::vector<std::vector<dc::Value>> inputs;
  std::vector<dc::Value> outputs;
  for (const auto& ex : task.spec.examples) {
    inputs.emplace_back(ex.state.begin(), ex.state.begin() + static_cast<std::ptrdiff_t>(task.spec.num_inputs));
    outputs.push_back(ex.output);
  }
  return dc_minimality_holds(inputs, outputs, static_cast<int>(task.solution.statements.size()), split, task.side,
                             config);
}

bool verify_task(const Task<DeepCoder>& task, bool check_minimality, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto& spec = task.spec;
  if (spec.examples.size() != DeepCoder::kNumExamples) return fail("expected 3 examples");
  if (spec.num_inputs < 1 || spec.num_inputs > kDcMaxInputs) return fail("expected 1 or 2 inputs");
  if (task.solution.inputs.size() != spec.num_inputs) return fail("solution arity differs from the spec");
  for (const auto& ex : spec.examples) {
    if (ex.state.size() != spec.num_inputs) return fail("example arity differs from the spec");
    for (std::size_t v = 0; v < spec.num_inputs; ++v) {
      if (ex.state[v].is_int() != spec.examples[0].state[v].is_int()) return fail("input types differ across examples");
      if (!dc::in_range(ex.state[v])) return fail("input out of range");
      if (ex.state[v].is_list() && ex.state[v].as_list().size() > kDcMaxListLength) return fail("input list too long");
    }
  }
  std::vector<int> names = task.solution.inputs;
  for (const auto& s : task.solution.statements) names.push_back(s.target);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) return fail("variable names repeat");
  if (names.front() < 0 || names.back() >= kNamePool) return fail("variable name outside x0..x9");
  if (!satisfies<DeepCoder>(task.solution, spec)) return fail("solution does not produce the outputs");
  const auto split = GeneralizationSplit::make(task.split, Domain::DeepCoder);
  if (!split.in_side(task.side, features_of(task.solution))) return fail("solution outside its side");
  if (check_minimality && !verify_dc_minimality(task)) return fail("a shorter or out-of-side solution exists");
  return true;
}

}  // namespace exedec
