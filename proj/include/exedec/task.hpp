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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exedec/domain.hpp"
#include "exedec/split.hpp"

namespace exedec {

template <class D>
struct Task {
  using domain_type = D;
  SplitKind split = SplitKind::None;
  Side side = Side::Train;
  std::uint64_t seed = 0;
  typename D::Spec spec;
  typename D::Program solution;
  bool operator==(const Task&) const = default;
};

// One teacher-forcing record: the specification before the step, the step's
// execution result on every example, and the subprogram itself.
template <class D>
struct TraceStep {
  typename D::Spec spec;
  std::vector<typename D::Value> subgoals;
  typename D::Subprogram subprogram;
  bool operator==(const TraceStep&) const = default;
};

template <class D>
struct DecompositionTrace {
  std::vector<TraceStep<D>> steps;
  bool operator==(const DecompositionTrace&) const = default;
};

// Replays the solution one subprogram at a time. DeepCoder statements are
// recorded with canonical variable names. Throws InconsistentSolution.
template <class D>
DecompositionTrace<D> decompose(const Task<D>& task) {
  DecompositionTrace<D> trace;
  typename D::Spec spec = task.spec;
  const auto parts = D::subprograms(task.solution);
  for (std::size_t t = 0; t < parts.size(); ++t) {
    TraceStep<D> step{spec, {}, parts[t]};
    for (std::size_t i = 0; i < spec.examples.size(); ++i) {
      auto v = D::execute(parts[t], spec, i);
      if (!v) throw InconsistentSolution("subprogram " + std::to_string(t + 1) + " fails on example " + std::to_string(i));
      step.subgoals.push_back(std::move(*v));
    }
    auto next = D::update_specification(spec, step.subgoals);
    if (std::holds_alternative<InvalidUpdate>(next))
      throw InconsistentSolution("subprogram " + std::to_string(t + 1) + " does not fit the remaining output");
    spec = std::get<typename D::Spec>(std::move(next));
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

// True iff `program` maps every example input of the original `spec` to its
// output.
template <class D>
bool satisfies(const typename D::Program& program, const typename D::Spec& spec) {
  for (std::size_t i = 0; i < spec.examples.size(); ++i) {
    const auto out = D::run(program, spec, i);
    if (!out || *out != spec.examples[i].output) return false;
  }
  return true;
}

}  // namespace exedec
