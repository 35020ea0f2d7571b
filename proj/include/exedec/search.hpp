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

// Beam search over subprogram sequences, with and without subgoal
// prediction.

#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <type_traits>
#include <vector>

#include "exedec/domain.hpp"
#include "exedec/task.hpp"

namespace exedec {

enum class Role { Subgoal, Synthesizer, Combined };
std::string_view role_id(Role r);
Role parse_role(std::string_view id);

struct Proposal {
  std::string text;
  double logp = 0.0;  // log-probability, never positive
  bool operator==(const Proposal&) const = default;
};

// A proposal source for one role. Synthesizers receive the current spec with
// its outputs replaced by the subgoals.
template <class D>
class ProposalBackend {
 public:
  virtual ~ProposalBackend() = default;
  virtual Role role() const = 0;
  virtual std::vector<Proposal> propose(const typename D::Spec& spec, int k) = 0;
};

enum class Invalid { Parse, Execution, NotPrefix, NoOp, OutOfSteps };
std::string_view invalid_id(Invalid r);

struct SearchConfig {
  int beam_size = 10;
  int max_steps = 0;  // 0: the domain default
};

struct SearchStats {
  std::size_t proposals = 0;
  std::size_t invalid_parse = 0;
  std::size_t invalid_execution = 0;
  std::size_t invalid_prefix = 0;
  std::size_t invalid_noop = 0;
  std::size_t invalid_steps = 0;
  std::size_t duplicates = 0;

  void count(Invalid r) {
    switch (r) {
      case Invalid::Parse: ++invalid_parse; break;
      case Invalid::Execution: ++invalid_execution; break;
      case Invalid::NotPrefix: ++invalid_prefix; break;
      case Invalid::NoOp: ++invalid_noop; break;
      case Invalid::OutOfSteps: ++invalid_steps; break;
    }
  }
};

template <class D>
struct BeamCandidate {
  std::vector<typename D::Subprogram> parts;
  std::vector<double> logps;  // every proposal log-probability that built this candidate
  double score = 0.0;
  typename D::Spec spec;      // updated specification after `parts`
  std::vector<std::vector<typename D::Value>> results;  // per step, per example
  bool solved = false;
};

// Per-example cumulative execution results, as one comparable string.
// RobustFill: the concatenated output so far. DeepCoder: the new bindings.
template <class D>
std::string functional_signature(const BeamCandidate<D>& c, std::size_t num_examples) {
  std::string sig;
  for (std::size_t i = 0; i < num_examples; ++i) {
    if constexpr (D::kDomain == Domain::RobustFill) {
      std::string prefix;
      for (const auto& step : c.results) prefix += step[i];
      sig += rf::quote(prefix);
    } else {
      for (const auto& step : c.results) sig += dc::to_string(step[i]) + ";";
    }
    sig += '\n';
  }
  return sig;
}

template <class D>
struct ScoredProgram {
  typename D::Program program;
  double score = 0.0;
  std::vector<double> logps;
};

template <class D>
struct SearchResult {
  std::vector<ScoredProgram<D>> programs;  // solved, best first
  int steps = 0;                           // rounds run
  SearchStats stats;
};

template <class D>
using RoundObserver = std::function<void(int step, const std::vector<BeamCandidate<D>>& beam)>;

namespace detail {

template <class D>
class BeamSearch {
 public:
  using Spec = typename D::Spec;

  BeamSearch(const Spec& spec, const SearchConfig& config, RoundObserver<D> observer)
      : spec_(spec), config_(config), observer_(std::move(observer)) {
    if (config_.beam_size < 1) throw std::invalid_argument("beam size must be positive");
    max_steps_ = config_.max_steps > 0 ? config_.max_steps : D::kDefaultMaxSteps;
  }

  // `expand(candidate, emit, reject)` calls emit(text, logps) once per
  // proposal and reject(reason) for proposals dropped before parsing.
  template <class Expand>
  SearchResult<D> run(Expand&& expand) {
    SearchResult<D> out;
    std::vector<BeamCandidate<D>> beam(1);
    beam[0].spec = spec_;
    for (int step = 1; step <= max_steps_; ++step) {
      if (std::all_of(beam.begin(), beam.end(), [](const auto& c) { return c.solved; })) break;
      out.steps = step;
      std::vector<BeamCandidate<D>> frozen, next;
      for (const auto& c : beam)
        if (c.solved) frozen.push_back(c);
      for (const auto& c : beam) {
        if (c.solved) continue;
        auto emit = [&](const std::string& text, std::initializer_list<double> logps) {
          ++out.stats.proposals;
          auto child = extend(c, text, logps);
          if (const auto* bad = std::get_if<Invalid>(&child)) {
            out.stats.count(*bad);
            return;
          }
          next.push_back(std::move(std::get<BeamCandidate<D>>(child)));
        };
        auto reject = [&](Invalid reason) {
          ++out.stats.proposals;
          out.stats.count(reason);
        };
        expand(c, emit, reject);
      }
      std::stable_sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
      // Candidates solved in earlier rounds keep their slots; new ones fill
      // the rest.
      beam = std::move(frozen);
      std::unordered_set<std::string> seen;
      for (const auto& c : beam) seen.insert(functional_signature(c, spec_.examples.size()));
      for (auto& c : next) {
        if (static_cast<int>(beam.size()) == config_.beam_size) break;
        if (!seen.insert(functional_signature(c, spec_.examples.size())).second) {
          ++out.stats.duplicates;
          continue;
        }
        beam.push_back(std::move(c));
      }
      std::stable_sort(beam.begin(), beam.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
      if (observer_) observer_(step, beam);
      if (beam.empty()) break;
    }
    for (const auto& c : beam) {
      if (!c.solved) continue;
      auto program = D::combine(c.parts, D::num_inputs(spec_));
      if (!satisfies<D>(program, spec_))
        throw std::logic_error("search returned a program that misses the spec: " + D::to_text(program));
      out.programs.push_back({std::move(program), c.score, c.logps});
    }
    return out;
  }

 private:
  std::variant<BeamCandidate<D>, Invalid> extend(const BeamCandidate<D>& parent, const std::string& text,
                                                 std::initializer_list<double> logps) const {
    typename D::Subprogram sub;
    try {
      sub = D::parse_subprogram(text);
    } catch (const ParseError&) {
      return Invalid::Parse;
    }
    std::vector<typename D::Value> results;
    for (std::size_t i = 0; i < parent.spec.examples.size(); ++i) {
      auto v = D::execute(sub, parent.spec, i);
      if (!v) return Invalid::Execution;
      results.push_back(std::move(*v));
    }
    if constexpr (D::kDomain == Domain::DeepCoder) {
      const auto& ex0 = parent.spec.examples;
      for (std::size_t v = 0; v < ex0[0].state.size(); ++v) {
        bool same = true;
        for (std::size_t i = 0; i < ex0.size() && same; ++i) same = ex0[i].state[v] == results[i];
        if (same) return Invalid::NoOp;
      }
    }
    bool solved = true;
    for (std::size_t i = 0; i < results.size(); ++i) solved = solved && results[i] == parent.spec.examples[i].output;
    auto updated = D::update_specification(parent.spec, results);
    if (std::holds_alternative<InvalidUpdate>(updated)) return Invalid::NotPrefix;
    if (!solved && static_cast<int>(parent.parts.size()) + 1 >= max_steps_) return Invalid::OutOfSteps;

    BeamCandidate<D> child = parent;
    child.parts.push_back(std::move(sub));
    for (double lp : logps) {
      child.logps.push_back(lp);
      child.score += lp;
    }
    child.spec = std::get<Spec>(std::move(updated));
    child.results.push_back(std::move(results));
    child.solved = solved;
    return child;
  }

  const Spec& spec_;
  SearchConfig config_;
  RoundObserver<D> observer_;
  int max_steps_ = 0;
};

}  // namespace detail

// Subgoal proposals, then per subgoal list a synthesizer call; each
// proposal pair extends the candidate with score += both log-probabilities.
template <class D>
SearchResult<D> exedec_search(const typename D::Spec& spec, ProposalBackend<D>& subgoals,
                              ProposalBackend<D>& synthesizer, const SearchConfig& config = {},
                              std::type_identity_t<RoundObserver<D>> observer = {}) {
  const int k = config.beam_size;
  detail::BeamSearch<D> search(spec, config, std::move(observer));
  return search.run([&](const BeamCandidate<D>& c, auto&& emit, auto&& reject) {
    for (const Proposal& goal : subgoals.propose(c.spec, k)) {
      std::vector<typename D::Value> values;
      try {
        values = parse_values_text<D>(goal.text);
      } catch (const ParseError&) {
        reject(Invalid::Parse);
        continue;
      }
      if (values.size() != c.spec.examples.size()) {
        reject(Invalid::Parse);
        continue;
      }
      const auto target = with_outputs<D>(c.spec, values);
      for (const Proposal& p : synthesizer.propose(target, k)) emit(p.text, {goal.logp, p.logp});
    }
  });
}

// The ablation: one combined proposal stage per step.
template <class D>
SearchResult<D> nosubgoal_search(const typename D::Spec& spec, ProposalBackend<D>& combined,
                                 const SearchConfig& config = {}, std::type_identity_t<RoundObserver<D>> observer = {}) {
  const int k = config.beam_size;
  detail::BeamSearch<D> search(spec, config, std::move(observer));
  return search.run([&](const BeamCandidate<D>& c, auto&& emit, auto&&) {
    for (const Proposal& p : combined.propose(c.spec, k)) emit(p.text, {p.logp});
  });
}

}  // namespace exedec
