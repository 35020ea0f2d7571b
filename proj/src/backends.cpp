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

#include "exedec/backends.hpp"

namespace exedec {

std::string_view role_id(Role r) {
  switch (r) {
    case Role::Subgoal: return "subgoal";
    case Role::Synthesizer: return "synthesizer";
    case Role::Combined: return "combined";
  }
  return "combined";
}

Role parse_role(std::string_view id) {
  if (id == "subgoal") return Role::Subgoal;
  if (id == "synthesizer") return Role::Synthesizer;
  if (id == "combined") return Role::Combined;
  throw std::invalid_argument("unknown role '" + std::string(id) + "'");
}

std::string_view invalid_id(Invalid r) {
  switch (r) {
    case Invalid::Parse: return "parse";
    case Invalid::Execution: return "execution";
    case Invalid::NotPrefix: return "prefix";
    case Invalid::NoOp: return "noop";
    case Invalid::OutOfSteps: return "steps";
  }
  return "parse";
}

void rank_proposals(std::vector<Proposal>& proposals, int k) {
  std::stable_sort(proposals.begin(), proposals.end(),
                   [](const Proposal& a, const Proposal& b) { return a.logp > b.logp; });
  if (k >= 0 && proposals.size() > static_cast<std::size_t>(k)) proposals.resize(static_cast<std::size_t>(k));
}

std::vector<Proposal> enumerate_statements(const dc::Spec& spec, int k) {
  std::vector<Proposal> out;
  if (k < 1 || spec.examples.empty()) return out;
  const auto& state0 = spec.examples[0].state;
  const int num_vars = static_cast<int>(state0.size());

  auto try_statement = [&](const dc::Statement& s) {
    for (std::size_t i = 0; i < spec.examples.size(); ++i) {
      const auto v = DeepCoder::execute(s, spec, i);
      if (!v || *v != spec.examples[i].output) return;
    }
    out.push_back({dc::rhs_string(s), 0.0 - static_cast<double>(out.size())});
  };

  for (int o = 0; o < dc::kNumOps && static_cast<int>(out.size()) < k; ++o) {
    dc::Statement s;
    s.op = static_cast<dc::Op>(o);
    s.target = num_vars;
    const auto& sig = dc::signature(s.op);
    int lambdas = 1;
    if (sig.lambda_kind == 1) lambdas = dc::kNumIntToInt;
    if (sig.lambda_kind == 2) lambdas = dc::kNumIntToBool;
    if (sig.lambda_kind == 3) lambdas = dc::kNumIntPair;
    const std::size_t arity = sig.operands.size();
    std::array<int, 2> args{0, 0};
    const int combos = arity == 1 ? num_vars : num_vars * num_vars;
    for (int c = 0; c < combos && static_cast<int>(out.size()) < k; ++c) {
      args[0] = arity == 1 ? c : c / num_vars;
      args[1] = c % num_vars;
      bool typed = true;
      for (std::size_t j = 0; j < arity; ++j)
        typed = typed && (state0[static_cast<std::size_t>(args[j])].is_list() == (sig.operands[j] == dc::Type::List));
      if (!typed) continue;
      s.args.assign(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(arity));
      for (int l = 0; l < lambdas && static_cast<int>(out.size()) < k; ++l) {
        switch (sig.lambda_kind) {
          case 1: s.lambda = static_cast<dc::IntToInt>(l); break;
          case 2: s.lambda = static_cast<dc::IntToBool>(l); break;
          case 3: s.lambda = static_cast<dc::IntPair>(l); break;
          default: s.lambda = std::monostate{}; break;
        }
        try_statement(s);
      }
    }
  }
  return out;
}

}  // namespace exedec
