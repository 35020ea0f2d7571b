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

#include "exedec/dc_enumerator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "exedec/common.hpp"

namespace exedec {
namespace {

constexpr std::size_t kSlots = 1 + kDcMaxListLength;  // tag, then elements
constexpr std::size_t kMaxVars = kDcMaxInputs + kDcMaxEnumLength;
constexpr std::uint8_t kNoOperand = 0xFF;

using Slot = std::int16_t;

// Per-example values in fixed slots. Tag -1 marks an integer, otherwise it is
// the list length. Unused slots stay zero so equality is bytewise.
struct Packed {
  std::array<Slot, kDcMaxExamples * kSlots> data{};

  bool is_int() const { return data[0] < 0; }
  bool operator==(const Packed&) const = default;

  template <typename H>
  friend H AbslHashValue(H h, const Packed& p) {
    return H::combine_contiguous(std::move(h), p.data.data(), p.data.size());
  }
};

bool bounded(dc::Int x) { return x >= -dc::kValueBound && x <= dc::kValueBound; }

bool pack_one(const dc::Value& v, Slot* slot) {
  if (!dc::in_range(v)) return false;
  if (v.is_int()) {
    slot[0] = -1;
    slot[1] = static_cast<Slot>(v.as_int());
    return true;
  }
  const auto& xs = v.as_list();
  if (xs.size() > kDcMaxListLength) return false;
  slot[0] = static_cast<Slot>(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) slot[1 + j] = static_cast<Slot>(xs[j]);
  return true;
}

dc::Value unpack_one(const Slot* slot) {
  if (slot[0] < 0) return dc::Value(static_cast<dc::Int>(slot[1]));
  return dc::Value(dc::List(slot + 1, slot + 1 + slot[0]));
}

// One example. `first` is the int or list operand printed first; `list` the
// trailing list operand. Returns false on an execution error.
bool eval_slots(dc::Op op, std::uint8_t lam, const Slot* first, const Slot* list, Slot* out) {
  const int n = list[0];
  const Slot* xs = list + 1;
  Slot* ys = out + 1;
  switch (op) {
    case dc::Op::Head:
    case dc::Op::Last:
      if (n == 0) return false;
      out[0] = -1;
      out[1] = op == dc::Op::Head ? xs[0] : xs[n - 1];
      return true;
    case dc::Op::Take:
    case dc::Op::Drop: {
      const int k = std::clamp<int>(first[1], 0, n);
      const int from = op == dc::Op::Take ? 0 : k;
      const int to = op == dc::Op::Take ? k : n;
      out[0] = static_cast<Slot>(to - from);
      for (int j = from; j < to; ++j) ys[j - from] = xs[j];
      return true;
    }
    case dc::Op::Access:
      if (first[1] < 0 || first[1] >= n) return false;
      out[0] = -1;
      out[1] = xs[first[1]];
      return true;
    case dc::Op::Minimum:
    case dc::Op::Maximum:
      if (n == 0) return false;
      out[0] = -1;
      out[1] = op == dc::Op::Minimum ? *std::min_element(xs, xs + n) : *std::max_element(xs, xs + n);
      return true;
    case dc::Op::Reverse:
      out[0] = static_cast<Slot>(n);
      std::reverse_copy(xs, xs + n, ys);
      return true;
    case dc::Op::Sort:
      out[0] = static_cast<Slot>(n);
      std::copy(xs, xs + n, ys);
      std::sort(ys, ys + n);
      return true;
    case dc::Op::Sum: {
      int s = 0;
      for (int j = 0; j < n; ++j) s += xs[j];
      if (!bounded(s)) return false;
      out[0] = -1;
      out[1] = static_cast<Slot>(s);
      return true;
    }
    case dc::Op::Map: {
      const auto f = static_cast<dc::IntToInt>(lam);
      out[0] = static_cast<Slot>(n);
      for (int j = 0; j < n; ++j) {
        const dc::Int y = dc::call(f, xs[j]);
        if (!bounded(y)) return false;
        ys[j] = static_cast<Slot>(y);
      }
      return true;
    }
    case dc::Op::Filter: {
      const auto f = static_cast<dc::IntToBool>(lam);
      int m = 0;
      for (int j = 0; j < n; ++j)
        if (dc::call(f, xs[j])) ys[m++] = xs[j];
      out[0] = static_cast<Slot>(m);
      return true;
    }
    case dc::Op::Count: {
      const auto f = static_cast<dc::IntToBool>(lam);
      int m = 0;
      for (int j = 0; j < n; ++j) m += dc::call(f, xs[j]) ? 1 : 0;
      out[0] = -1;
      out[1] = static_cast<Slot>(m);
      return true;
    }
    case dc::Op::ZipWith: {
      const auto f = static_cast<dc::IntPair>(lam);
      const int m = std::min<int>(first[0], n);
      out[0] = static_cast<Slot>(m);
      for (int j = 0; j < m; ++j) {
        const dc::Int y = dc::call(f, first[1 + j], xs[j]);
        if (!bounded(y)) return false;
        ys[j] = static_cast<Slot>(y);
      }
      return true;
    }
    case dc::Op::Scanl1: {
      const auto f = static_cast<dc::IntPair>(lam);
      out[0] = static_cast<Slot>(n);
      for (int j = 0; j < n; ++j) {
        const dc::Int y = j == 0 ? xs[0] : dc::call(f, ys[j - 1], xs[j]);
        if (!bounded(y)) return false;
        ys[j] = static_cast<Slot>(y);
      }
      return true;
    }
  }
  return false;
}

std::uint8_t lambda_index(const dc::Lambda& l) {
  return std::visit(
      [](const auto& v) -> std::uint8_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) return 0;
        else return static_cast<std::uint8_t>(v);
      },
      l);
}

dc::Lambda make_lambda(dc::Op op, std::uint8_t index) {
  switch (dc::signature(op).lambda_kind) {
    case 1: return static_cast<dc::IntToInt>(index);
    case 2: return static_cast<dc::IntToBool>(index);
    case 3: return static_cast<dc::IntPair>(index);
    default: return std::monostate{};
  }
}

int lambda_count(dc::Op op) {
  switch (dc::signature(op).lambda_kind) {
    case 1: return dc::kNumIntToInt;
    case 2: return dc::kNumIntToBool;
    case 3: return dc::kNumIntPair;
    default: return 1;
  }
}

struct Stmt {
  std::uint8_t op = 0;
  std::uint8_t lambda = 0;
  std::uint8_t a = kNoOperand;  // operands in print order
  std::uint8_t b = kNoOperand;
};

// 4 bits per statement: concept (2), special (1), extended (1).
std::uint32_t feature_code(const SubprogramFeatures& f) {
  return static_cast<std::uint32_t>(f.group) | (f.special ? 4u : 0u) | (f.extended ? 8u : 0u);
}

SubprogramFeatures decode_feature(std::uint32_t code) {
  return {static_cast<Concept>(code & 3u), (code & 4u) != 0, (code & 8u) != 0};
}

// The part of a feature sequence that decides split membership of the
// sequence and of all its extensions.
std::uint32_t split_summary(SplitKind kind, std::uint32_t features, int length) {
  std::uint32_t out = 0;
  for (int j = 0; j < length; ++j) {
    const std::uint32_t code = (features >> (4 * j)) & 0xFu;
    switch (kind) {
      case SplitKind::None:
      case SplitKind::Length: break;
      case SplitKind::ConceptMix: out |= 1u << (code & 3u); break;
      case SplitKind::ConceptOrder: out |= (code & 3u) << (2 * j); break;
      case SplitKind::NewOp: out |= (code & 4u) ? 1u : 2u; break;
      case SplitKind::OpFunctionality: out |= (code & 8u) ? 1u : 0u; break;
    }
  }
  return out;
}

struct Node {
  std::uint32_t parent = 0;
  Stmt stmt;
  std::uint8_t num_vars = 0;
  std::uint8_t unused = 0;  // statement variables no later statement reads
  std::uint32_t features = 0;
  std::array<std::uint32_t, kMaxVars> vars{};
};

struct StateKey {
  std::array<std::uint32_t, kDcMaxEnumLength> vars{};
  std::uint32_t summary = 0;
  bool operator==(const StateKey&) const = default;

  template <typename H>
  friend H AbslHashValue(H h, const StateKey& k) {
    return H::combine(H::combine_contiguous(std::move(h), k.vars.data(), k.vars.size()), k.summary);
  }
};

class Enumerator {
 public:
  Enumerator(std::span<const std::vector<dc::Value>> inputs, std::span<const dc::Value> outputs,
             const GeneralizationSplit& split, const DcEnumConfig& config)
      : split_(split), config_(config) {
    if (inputs.empty() || inputs.size() > kDcMaxExamples)
      throw std::invalid_argument("enumeration needs 1 to 4 examples");
    if (outputs.size() != inputs.size()) throw std::invalid_argument("one output per example required");
    num_examples_ = inputs.size();
    num_inputs_ = inputs[0].size();
    if (num_inputs_ == 0 || num_inputs_ > kDcMaxInputs) throw std::invalid_argument("enumeration needs 1 or 2 inputs");

    for (int o = 0; o < dc::kNumOps; ++o) {
      const auto op = static_cast<dc::Op>(o);
      for (int l = 0; l < lambda_count(op); ++l) {
        dc::Statement s;
        s.op = op;
        s.lambda = make_lambda(op, static_cast<std::uint8_t>(l));
        features_[static_cast<std::size_t>(o)][static_cast<std::size_t>(l)] = feature_code(features_of(s));
      }
    }

    target_valid_ = true;
    for (std::size_t e = 0; e < num_examples_; ++e) {
      target_valid_ = target_valid_ && pack_one(outputs[e], &target_.data[e * kSlots]);
      if (outputs[e].is_int() != outputs[0].is_int()) target_valid_ = false;
    }

    Node root;
    root.num_vars = static_cast<std::uint8_t>(num_inputs_);
    for (std::size_t v = 0; v < num_inputs_; ++v) {
      Packed p;
      for (std::size_t e = 0; e < num_examples_; ++e) {
        if (inputs[e].size() != num_inputs_) throw std::invalid_argument("examples disagree on input arity");
        if (inputs[e][v].is_int() != inputs[0][v].is_int())
          throw std::invalid_argument("examples disagree on input types");
        if (!pack_one(inputs[e][v], &p.data[e * kSlots]))
          throw std::invalid_argument("input value out of range or list too long");
      }
      root.vars[v] = intern(p);
    }
    layers_.push_back({root});
  }

  MinimalSolutions run(int max_length) {
    max_length_ = max_length;
    MinimalSolutions out;
    if (!target_valid_) return out;
    for (int depth = 0; depth < max_length; ++depth) {
      const bool extend = depth + 1 < max_length;
      std::vector<Node> next;
      absl::flat_hash_set<StateKey> seen;
      const auto& layer = layers_[static_cast<std::size_t>(depth)];
      for (std::uint32_t i = 0; i < layer.size(); ++i) {
        expand(layer[i], i, depth, extend && !found_, next, seen, out);
        if (out.num_states + next.size() > config_.max_states)
          throw BudgetExceeded("enumeration exceeded " + std::to_string(config_.max_states) + " states");
      }
      out.num_states += next.size();
      if (found_) {
        out.min_length = depth + 1;
        break;
      }
      if (next.empty()) break;
      layers_.push_back(std::move(next));
    }
    return out;
  }

 private:
  std::uint32_t intern(const Packed& p) {
    const auto [it, inserted] = ids_.try_emplace(p, static_cast<std::uint32_t>(values_.size()));
    if (inserted) values_.push_back(p);
    return it->second;
  }

  bool evaluate(const Stmt& s, const Node& node, Packed& out) const {
    const auto op = static_cast<dc::Op>(s.op);
    const Packed& a = values_[node.vars[s.a]];
    const Packed& b = s.b == kNoOperand ? a : values_[node.vars[s.b]];
    for (std::size_t e = 0; e < num_examples_; ++e) {
      const std::size_t at = e * kSlots;
      if (!eval_slots(op, s.lambda, &a.data[at], &b.data[at], &out.data[at])) return false;
    }
    return true;
  }

  void record(const Node& node, int depth, const Stmt& s, std::uint32_t features,
              MinimalSolutions& out) {
    const int length = depth + 1;
    std::array<SubprogramFeatures, kDcMaxEnumLength> f;
    for (int j = 0; j < length; ++j) f[static_cast<std::size_t>(j)] = decode_feature((features >> (4 * j)) & 0xFu);
    const std::span<const SubprogramFeatures> seq(f.data(), static_cast<std::size_t>(length));
    const bool train = split_.in_train(seq);
    out.all_test = out.all_test && split_.in_test(seq);
    if (!out.shortest) out.shortest = program(node, depth, s);
    if (train && !out.any_train) {
      out.any_train = true;
      out.shortest_train = program(node, depth, s);
    }
    ++out.num_programs;
    found_ = true;
  }

  void expand(const Node& node, std::uint32_t index, int depth, bool extend, std::vector<Node>& next,
              absl::flat_hash_set<StateKey>& seen, MinimalSolutions& out) {
    std::array<std::uint8_t, kMaxVars> lists{}, ints{};
    std::size_t nl = 0, ni = 0;
    for (std::uint8_t v = 0; v < node.num_vars; ++v) {
      if (values_[node.vars[v]].is_int()) ints[ni++] = v;
      else lists[nl++] = v;
    }
    const int left = max_length_ - (depth + 1);
    Packed result;

    auto try_stmt = [&](const Stmt& s, bool result_int) {
      std::uint8_t read = 0;
      if (s.a >= num_inputs_) read |= static_cast<std::uint8_t>(1u << s.a);
      if (s.b != kNoOperand && s.b >= num_inputs_) read |= static_cast<std::uint8_t>(1u << s.b);
      const std::uint8_t pending = node.unused & static_cast<std::uint8_t>(~read);
      const bool completes = pending == 0 && result_int == target_.is_int();
      const bool child = extend && std::popcount(pending) + 1 <= left + 1;
      if (!completes && !child) return;

      result.data.fill(0);
      if (!evaluate(s, node, result)) return;
      const std::uint32_t features = node.features | (features_[s.op][s.lambda] << (4 * depth));
      if (completes && result == target_) {
        // The final value may coincide with an input but not with another statement.
        bool repeats = false;
        for (std::size_t v = num_inputs_; v < node.num_vars; ++v)
          repeats = repeats || values_[node.vars[v]] == result;
        if (!repeats) record(node, depth, s, features, out);
      }
      if (!child) return;

      const std::uint32_t id = intern(result);
      for (std::size_t v = 0; v < node.num_vars; ++v)
        if (node.vars[v] == id) return;
      Node c;
      c.parent = index;
      c.stmt = s;
      c.num_vars = static_cast<std::uint8_t>(node.num_vars + 1);
      c.vars = node.vars;
      c.vars[node.num_vars] = id;
      c.unused = static_cast<std::uint8_t>(pending | (1u << node.num_vars));
      c.features = features;

      StateKey key;
      const std::size_t n = static_cast<std::size_t>(depth) + 1;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t v = num_inputs_ + j;
        key.vars[j] = (c.vars[v] << 1) | ((c.unused >> v) & 1u);
      }
      std::sort(key.vars.begin(), key.vars.begin() + static_cast<std::ptrdiff_t>(n));
      key.summary = split_summary(split_.kind, features, depth + 1);
      if (seen.insert(key).second) next.push_back(c);
    };

    for (int o = 0; o < dc::kNumOps; ++o) {
      const auto op = static_cast<dc::Op>(o);
      const auto& sig = dc::signature(op);
      const bool result_int = sig.result == dc::Type::Int;
      const int nlam = lambda_count(op);
      for (int l = 0; l < nlam; ++l) {
        Stmt s;
        s.op = static_cast<std::uint8_t>(o);
        s.lambda = static_cast<std::uint8_t>(l);
        if (sig.operands.size() == 1) {
          for (std::size_t j = 0; j < nl; ++j) {
            s.a = lists[j];
            try_stmt(s, result_int);
          }
        } else {
          const bool int_first = sig.operands[0] == dc::Type::Int;
          const auto& firsts = int_first ? ints : lists;
          const std::size_t nf = int_first ? ni : nl;
          for (std::size_t j = 0; j < nf; ++j)
            for (std::size_t k = 0; k < nl; ++k) {
              s.a = firsts[j];
              s.b = lists[k];
              try_stmt(s, result_int);
            }
        }
      }
    }
  }

  dc::Program program(const Node& node, int depth, const Stmt& last) const {
    std::vector<Stmt> stmts{last};
    const Node* n = &node;
    for (int layer = depth; layer > 0; --layer) {
      stmts.push_back(n->stmt);
      n = &layers_[static_cast<std::size_t>(layer - 1)][n->parent];
    }
    std::reverse(stmts.begin(), stmts.end());
    dc::Program p;
    for (std::size_t j = 0; j < num_inputs_; ++j) p.inputs.push_back(static_cast<int>(j));
    for (std::size_t j = 0; j < stmts.size(); ++j) {
      dc::Statement st;
      st.target = static_cast<int>(num_inputs_ + j);
      st.op = static_cast<dc::Op>(stmts[j].op);
      st.lambda = make_lambda(st.op, stmts[j].lambda);
      st.args.push_back(stmts[j].a);
      if (stmts[j].b != kNoOperand) st.args.push_back(stmts[j].b);
      p.statements.push_back(std::move(st));
    }
    return p;
  }

  GeneralizationSplit split_;
  DcEnumConfig config_;
  std::size_t num_examples_ = 0;
  std::size_t num_inputs_ = 0;
  Packed target_;
  bool target_valid_ = false;
  bool found_ = false;
  int max_length_ = 0;
  std::vector<Packed> values_;
  absl::flat_hash_map<Packed, std::uint32_t> ids_;
  std::vector<std::vector<Node>> layers_;
  std::array<std::array<std::uint32_t, 16>, dc::kNumOps> features_{};
};

}  // namespace

MinimalSolutions find_minimal_solutions(std::span<const std::vector<dc::Value>> inputs,
                                        std::span<const dc::Value> outputs, int max_length,
                                        const GeneralizationSplit& split, const DcEnumConfig& config) {
  if (max_length < 1 || max_length > static_cast<int>(kDcMaxEnumLength))
    throw std::invalid_argument("enumeration supports lengths 1 to 5");
  return Enumerator(inputs, outputs, split, config).run(max_length);
}

namespace detail {

std::optional<dc::Value> packed_apply(dc::Op op, const dc::Lambda& lambda,
                                      std::span<const dc::Value* const> operands) {
  const auto& sig = dc::signature(op);
  if (operands.size() != sig.operands.size() || static_cast<int>(lambda.index()) != sig.lambda_kind)
    return std::nullopt;
  std::array<Slot, kSlots> a{}, b{}, out{};
  if (!pack_one(*operands[0], a.data())) return std::nullopt;
  if (operands.size() == 2 && !pack_one(*operands[1], b.data())) return std::nullopt;
  for (std::size_t j = 0; j < operands.size(); ++j)
    if (operands[j]->is_list() != (sig.operands[j] == dc::Type::List)) return std::nullopt;
  const Slot* list = operands.size() == 2 ? b.data() : a.data();
  if (!eval_slots(op, lambda_index(lambda), a.data(), list, out.data())) return std::nullopt;
  return unpack_one(out.data());
}

}  // namespace detail
}  // namespace exedec
