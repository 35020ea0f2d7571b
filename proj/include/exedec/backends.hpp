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

// Proposal sources: trace replay, enumeration, a seeded random stub and
// composition of a subgoal source with a synthesizer.

#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "exedec/domain.hpp"
#include "exedec/io.hpp"
#include "exedec/search.hpp"
#include "exedec/task.hpp"
#include "exedec/taskgen.hpp"

namespace exedec {

// Canonical text of a spec, used as a lookup key.
template <class D>
std::string spec_key(const typename D::Spec& spec) {
  return spec_to_json(spec).dump();
}

// Stable sort by log-probability, best first, then keep k.
void rank_proposals(std::vector<Proposal>& proposals, int k);

// ---------------------------------------------------------------------------
// Trace replay

template <class D>
class OracleBackend : public ProposalBackend<D> {
 public:
  explicit OracleBackend(Role role) : role_(role) {}
  OracleBackend(Role role, const DecompositionTrace<D>& trace) : role_(role) { add(trace); }

  // Earlier traces win when two of them share a spec.
  void add(const DecompositionTrace<D>& trace) {
    for (const auto& step : trace.steps) {
      if (role_ == Role::Synthesizer) {
        answers_.try_emplace(spec_key<D>(with_outputs<D>(step.spec, step.subgoals)), D::to_text(step.subprogram));
      } else if (role_ == Role::Subgoal) {
        answers_.try_emplace(spec_key<D>(step.spec), values_text<D>(step.subgoals));
      } else {
        answers_.try_emplace(spec_key<D>(step.spec), D::to_text(step.subprogram));
      }
    }
  }

  Role role() const override { return role_; }

  std::vector<Proposal> propose(const typename D::Spec& spec, int k) override {
    if (k < 1) return {};
    const auto it = answers_.find(spec_key<D>(spec));
    if (it == answers_.end()) return {};
    return {Proposal{it->second, 0.0}};
  }

 private:
  Role role_;
  std::unordered_map<std::string, std::string> answers_;
};

// ---------------------------------------------------------------------------
// A subgoal source and a synthesizer acting as one combined source.

template <class D>
class ChainedBackend : public ProposalBackend<D> {
 public:
  ChainedBackend(ProposalBackend<D>& subgoals, ProposalBackend<D>& synthesizer)
      : subgoals_(subgoals), synthesizer_(synthesizer) {}

  Role role() const override { return Role::Combined; }

  std::vector<Proposal> propose(const typename D::Spec& spec, int k) override {
    std::vector<Proposal> out;
    for (const Proposal& goal : subgoals_.propose(spec, k)) {
      std::vector<typename D::Value> values;
      try {
        values = parse_values_text<D>(goal.text);
      } catch (const ParseError&) {
        continue;
      }
      if (values.size() != spec.examples.size()) continue;
      for (const Proposal& p : synthesizer_.propose(with_outputs<D>(spec, values), k))
        out.push_back({p.text, goal.logp + p.logp});
    }
    rank_proposals(out, k);
    return out;
  }

 private:
  ProposalBackend<D>& subgoals_;
  ProposalBackend<D>& synthesizer_;
};

// ---------------------------------------------------------------------------
// Enumerative synthesizer

struct RfEnumConfig {
  int max_position = 21;             // SubStr positions in [-21, -1] U [1, 21]
  std::size_t keep_per_result = 16;  // shortest expressions kept per result tuple
  std::size_t cached_inputs = 4;     // input tuples whose indexes stay cached
};

// Every Substring and Modification expression over one input tuple, grouped
// by result tuple.
class RfResultIndex {
 public:
  RfResultIndex(std::vector<std::string> inputs, const RfEnumConfig& config);
  ~RfResultIndex();
  RfResultIndex(const RfResultIndex&) = delete;
  RfResultIndex& operator=(const RfResultIndex&) = delete;

  // Expressions reproducing `targets` exactly, ordered by (category, printed
  // length, enumeration order). Compose is searched only when no cheaper
  // expression matches.
  std::vector<Proposal> propose(std::span<const std::string> targets, int k) const;
  const std::vector<std::string>& inputs() const;
  std::size_t num_results() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// DeepCoder statements over the spec's bindings in (operation, operands,
// lambda) order, keeping those that reproduce the outputs.
std::vector<Proposal> enumerate_statements(const dc::Spec& spec, int k);

template <class D>
class EnumBackend;

template <>
class EnumBackend<RobustFill> : public ProposalBackend<RobustFill> {
 public:
  explicit EnumBackend(RfEnumConfig config = {}) : config_(config) {}
  Role role() const override { return Role::Synthesizer; }
  std::vector<Proposal> propose(const rf::Spec& spec, int k) override;

 private:
  RfEnumConfig config_;
  std::list<std::shared_ptr<RfResultIndex>> cache_;  // most recent first
};

template <>
class EnumBackend<DeepCoder> : public ProposalBackend<DeepCoder> {
 public:
  Role role() const override { return Role::Synthesizer; }
  std::vector<Proposal> propose(const dc::Spec& spec, int k) override { return enumerate_statements(spec, k); }
};

// ---------------------------------------------------------------------------
// Seeded random stub. Mixes replayed trace answers, random programs or
// values and malformed text, each with a random non-positive
// log-probability. Output depends only on (seed, role, spec, k).

struct RandomConfig {
  double replay = 0.5;     // share of replayed trace answers, when known
  double malformed = 0.1;  // share of unparseable text
  double max_cost = 4.0;   // logp drawn from [-max_cost, 0]
};

template <class D>
class RandomBackend : public ProposalBackend<D> {
 public:
  RandomBackend(Role role, std::uint64_t seed, const DecompositionTrace<D>* trace = nullptr,
                RandomConfig config = {})
      : role_(role), seed_(seed), config_(config), oracle_(role) {
    if (trace) oracle_.add(*trace);
  }

  Role role() const override { return role_; }

  std::vector<Proposal> propose(const typename D::Spec& spec, int k) override {
    const std::uint64_t h = std::hash<std::string>{}(spec_key<D>(spec));
    Rng rng = make_rng(seed_ ^ h, {static_cast<std::uint32_t>(role_), static_cast<std::uint32_t>(k)});
    const auto replayed = oracle_.propose(spec, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Proposal> out;
    for (int j = 0; j < k; ++j) {
      const double logp = -config_.max_cost * unit(rng);
      const double u = unit(rng);
      if (u < config_.malformed) {
        out.push_back({"((", logp});
      } else if (u < config_.malformed + config_.replay && !replayed.empty()) {
        out.push_back({replayed[0].text, logp});
      } else {
        out.push_back({random_text(spec, rng), logp});
      }
    }
    return out;
  }

 private:
  std::string random_text(const typename D::Spec& spec, Rng& rng) const {
    if constexpr (D::kDomain == Domain::RobustFill) {
      if (role_ == Role::Subgoal) {
        // Random prefixes of the remaining outputs, so some are consistent.
        std::vector<std::string> goals;
        for (const auto& ex : spec.examples) {
          const auto n = std::uniform_int_distribution<std::size_t>(0, ex.output.size())(rng);
          goals.push_back(ex.output.substr(0, n));
        }
        return values_text<D>(goals);
      }
      return rf::to_string(random_expression(rng));
    } else {
      std::vector<dc::Type> types;
      for (const auto& v : spec.examples[0].state) types.push_back(v.is_int() ? dc::Type::Int : dc::Type::List);
      const auto s = random_statement(rng, types);
      if (!s) return "Sort";
      if (role_ != Role::Subgoal) return dc::rhs_string(*s);
      std::vector<dc::Value> goals;
      for (std::size_t i = 0; i < spec.examples.size(); ++i) {
        auto v = DeepCoder::execute(*s, spec, i);
        goals.push_back(v ? *v : dc::Value(dc::List{}));
      }
      return values_text<D>(goals);
    }
  }

  Role role_;
  std::uint64_t seed_;
  RandomConfig config_;
  OracleBackend<D> oracle_;
};

}  // namespace exedec
