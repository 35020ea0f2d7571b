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
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "exedec/backends.hpp"

namespace exedec {
namespace {

constexpr char kSep = '\x1f';

struct Item {
  std::string text;
  rf::Expression expr;
  int category = 0;
  std::size_t order = 0;
};

bool item_less(const Item& a, const Item& b) {
  if (a.category != b.category) return a.category < b.category;
  if (a.text.size() != b.text.size()) return a.text.size() < b.text.size();
  return a.order < b.order;
}

std::string tuple_key(std::span<const std::string> values) {
  std::string key;
  for (const auto& v : values) {
    key += v;
    key += kSep;
  }
  return key;
}

std::vector<rf::Regex> all_regexes() {
  std::vector<rf::Regex> out;
  for (int k = 0; k < rf::kNumRegexClasses; ++k) out.push_back(rf::Regex::of(static_cast<rf::RegexClass>(k)));
  for (char c : rf::kDelimiters) out.push_back(rf::Regex::delim(c));
  return out;
}

std::vector<int> all_indices() {
  std::vector<int> out;
  for (int i = 1; i <= rf::kMaxIndex; ++i) out.push_back(i);
  for (int i = -1; i >= -rf::kMaxIndex; --i) out.push_back(i);
  return out;
}

std::string all_characters() {
  std::string out;
  for (char c = 'A'; c <= 'Z'; ++c) out += c;
  for (char c = 'a'; c <= 'z'; ++c) out += c;
  for (char c = '0'; c <= '9'; ++c) out += c;
  out += rf::kDelimiters;
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

// Is `small` (spaces ignored) a subsequence of `big`?
bool subsequence(std::string_view small, std::string_view big) {
  std::size_t j = 0;
  for (char c : small) {
    if (c == ' ') continue;
    while (j < big.size() && big[j] != c) ++j;
    if (j == big.size()) return false;
    ++j;
  }
  return true;
}

struct Boundary {
  rf::Regex r;
  int index = 1;
  rf::Boundary side = rf::Boundary::Start;
  std::size_t text_length = 0;
};

}  // namespace

struct RfResultIndex::Impl {
  struct Entry {
    std::vector<std::string> values;
    std::vector<Item> items;
  };

  std::vector<std::string> inputs;
  RfEnumConfig config;
  absl::flat_hash_map<std::string, std::size_t> by_key;
  std::vector<Entry> entries;
  std::size_t next_order = 0;
  std::vector<rf::Regex> regexes = all_regexes();
  std::vector<int> indices = all_indices();

  std::optional<std::vector<std::string>> run(const rf::Expression& e) const {
    std::vector<std::string> out;
    for (const auto& in : inputs) {
      auto r = rf::execute(e, in);
      if (!r) return std::nullopt;
      out.push_back(std::move(*r));
    }
    return out;
  }

  void add(rf::Expression e, std::vector<std::string> values) {
    const std::string key = tuple_key(values);
    auto [it, inserted] = by_key.try_emplace(key, entries.size());
    if (inserted) entries.push_back({std::move(values), {}});
    const int category = static_cast<int>(rf::category_of(e));
    Item item{rf::to_string(e), std::move(e), category, next_order++};
    entries[it->second].items.push_back(std::move(item));
  }

  void add(rf::Expression e) {
    if (auto values = run(e)) add(std::move(e), std::move(*values));
  }

  void build() {
    const int p = config.max_position;
    for (int k1 = -p; k1 <= p; ++k1)
      for (int k2 = -p; k2 <= p; ++k2)
        if (k1 != 0 && k2 != 0) add(rf::Substring(rf::SubStr{k1, k2}));
    for (const auto& r : regexes) {
      for (int i : indices) add(rf::Substring(rf::GetToken{r, i}));
      add(rf::Substring(rf::GetUpto{r}));
      add(rf::Substring(rf::GetFrom{r}));
    }
    add_spans();

    for (auto c : {rf::Case::AllCaps, rf::Case::Proper, rf::Case::Lower}) add(rf::Modification(rf::ToCase{c}));
    for (char a : rf::kDelimiters)
      for (char b : rf::kDelimiters) add(rf::Modification(rf::Replace{a, b}));
    add(rf::Modification(rf::Trim{}));
    static const std::string kChars = all_characters();
    for (const auto& r : regexes) {
      for (int i : indices) {
        add(rf::Modification(rf::GetFirst{r, i}));
        add(rf::Modification(rf::Remove{r, i}));
        for (char c : kChars) add(rf::Modification(rf::Substitute{r, i, c}));
      }
      add(rf::Modification(rf::GetAll{r}));
      add(rf::Modification(rf::RemoveAll{r}));
      for (char c : kChars) add(rf::Modification(rf::SubstituteAll{r, c}));
    }

    for (auto& e : entries) {
      std::stable_sort(e.items.begin(), e.items.end(), item_less);
      if (e.items.size() > config.keep_per_result) e.items.resize(config.keep_per_result);
    }
  }

  // GetSpan through boundary position vectors: group boundaries that land on
  // the same positions, then pair groups.
  void add_spans() {
    std::map<std::vector<std::size_t>, std::vector<Boundary>> groups;
    for (const auto& r : regexes) {
      std::vector<std::vector<rf::Span>> spans;
      for (const auto& in : inputs) spans.push_back(rf::matches(r, in));
      for (int i : indices) {
        for (auto side : {rf::Boundary::Start, rf::Boundary::End}) {
          std::vector<std::size_t> pos;
          for (const auto& ms : spans) {
            const auto n = static_cast<int>(ms.size());
            if (i > 0 ? i > n : -i > n) break;
            const rf::Span& m = ms[static_cast<std::size_t>(i > 0 ? i - 1 : n + i)];
            pos.push_back(side == rf::Boundary::Start ? m.start : m.end);
          }
          if (pos.size() != inputs.size()) continue;
          rf::GetSpan probe{r, i, side, r, i, side};
          groups[pos].push_back({r, i, side, rf::to_string(rf::Expression(rf::Substring(probe))).size()});
        }
      }
    }
    constexpr std::size_t kPerGroup = 3;
    for (auto& [pos, bs] : groups) {
      std::stable_sort(bs.begin(), bs.end(), [](const Boundary& a, const Boundary& b) { return a.text_length < b.text_length; });
      if (bs.size() > kPerGroup) bs.resize(kPerGroup);
    }
    for (const auto& [p1, starts] : groups) {
      for (const auto& [p2, ends] : groups) {
        bool ok = true;
        for (std::size_t i = 0; i < inputs.size() && ok; ++i) ok = p1[i] < p2[i];
        if (!ok) continue;
        std::vector<std::string> values;
        for (std::size_t i = 0; i < inputs.size(); ++i) values.push_back(inputs[i].substr(p1[i], p2[i] - p1[i]));
        for (const auto& s : starts)
          for (const auto& e : ends) add(rf::Substring(rf::GetSpan{s.r, s.index, s.side, e.r, e.index, e.side}), values);
      }
    }
  }

  bool maps_to(const rf::Modification& m, const std::vector<std::string>& from,
               std::span<const std::string> to) const {
    for (std::size_t i = 0; i < from.size(); ++i) {
      const auto r = rf::apply(m, from[i]);
      if (!r || *r != to[i]) return false;
    }
    return true;
  }

  void compose_matches(std::span<const std::string> targets, std::vector<Item>& found) const {
    const std::size_t n = inputs.size();
    std::vector<std::string> lowered;
    for (const auto& t : targets) lowered.push_back(lower(t));
    static const std::string kChars = all_characters();

    for (const Entry& e : entries) {
      const auto& from = e.values;
      std::vector<rf::Modification> outers;
      bool same_lower = true, same_length = true, trims = true, shrinks = true, subseq = true;
      for (std::size_t i = 0; i < n; ++i) {
        same_length = same_length && from[i].size() == targets[i].size();
        same_lower = same_lower && same_length && lower(from[i]) == lowered[i];
        trims = trims && trim_spaces(from[i]) == targets[i];
        shrinks = shrinks && targets[i].size() <= from[i].size();
        subseq = subseq && subsequence(targets[i], from[i]);
      }
      if (same_lower)
        for (auto c : {rf::Case::AllCaps, rf::Case::Proper, rf::Case::Lower}) outers.push_back(rf::ToCase{c});
      if (same_length) {
        // The first difference fixes the replaced pair.
        for (std::size_t i = 0; i < n; ++i) {
          const auto d = std::mismatch(from[i].begin(), from[i].end(), targets[i].begin()).first - from[i].begin();
          if (static_cast<std::size_t>(d) == from[i].size()) continue;
          const char a = from[i][static_cast<std::size_t>(d)], b = targets[i][static_cast<std::size_t>(d)];
          if (rf::is_delimiter(a) && rf::is_delimiter(b)) outers.push_back(rf::Replace{a, b});
          break;
        }
      }
      if (trims) outers.push_back(rf::Trim{});
      if (subseq) {
        for (const auto& r : regexes) {
          for (int i : indices) {
            outers.push_back(rf::GetFirst{r, i});
            outers.push_back(rf::Remove{r, i});
          }
          outers.push_back(rf::GetAll{r});
          outers.push_back(rf::RemoveAll{r});
        }
      }
      if (shrinks) {
        // A substituted match starts where the strings first differ.
        std::optional<char> c;
        for (std::size_t i = 0; i < n && !c; ++i) {
          const auto d = static_cast<std::size_t>(
              std::mismatch(from[i].begin(), from[i].end(), targets[i].begin(), targets[i].end()).first -
              from[i].begin());
          if (d < targets[i].size() && d < from[i].size()) c = targets[i][d];
        }
        if (c && kChars.find(*c) != std::string::npos) {
          for (const auto& r : regexes) {
            for (int i : indices) outers.push_back(rf::Substitute{r, i, *c});
            outers.push_back(rf::SubstituteAll{r, *c});
          }
        }
      }
      for (const auto& m : outers) {
        if (!maps_to(m, from, targets)) continue;
        for (const Item& inner : e.items) {
          rf::Compose c;
          c.outer = m;
          if (const auto* s = std::get_if<rf::Substring>(&inner.expr)) c.inner = *s;
          else c.inner = std::get<rf::Modification>(inner.expr);
          rf::Expression expr(c);
          found.push_back({rf::to_string(expr), std::move(expr), static_cast<int>(rf::Category::Compose),
                           found.size()});
        }
      }
    }
  }
};

RfResultIndex::RfResultIndex(std::vector<std::string> inputs, const RfEnumConfig& config)
    : impl_(std::make_unique<Impl>()) {
  impl_->inputs = std::move(inputs);
  impl_->config = config;
  impl_->build();
}

RfResultIndex::~RfResultIndex() = default;

const std::vector<std::string>& RfResultIndex::inputs() const { return impl_->inputs; }
std::size_t RfResultIndex::num_results() const { return impl_->entries.size(); }

std::vector<Proposal> RfResultIndex::propose(std::span<const std::string> targets, int k) const {
  if (k < 1 || targets.size() != impl_->inputs.size()) return {};
  std::vector<Item> found;
  const std::string& t0 = targets[0];
  if (t0.size() == 1 && rf::is_character(t0[0]) &&
      std::all_of(targets.begin(), targets.end(), [&](const std::string& t) { return t == t0; })) {
    rf::Expression c(rf::ConstStr{t0[0]});
    found.push_back({rf::to_string(c), c, static_cast<int>(rf::Category::Const), 0});
  }
  if (const auto it = impl_->by_key.find(tuple_key(targets)); it != impl_->by_key.end())
    for (const Item& item : impl_->entries[it->second].items) found.push_back(item);
  if (found.empty()) impl_->compose_matches(targets, found);
  std::stable_sort(found.begin(), found.end(), item_less);

  std::vector<Proposal> out;
  for (const Item& item : found) {
    if (static_cast<int>(out.size()) == k) break;
    // Guard the index against any drift from the interpreter.
    bool ok = true;
    for (std::size_t i = 0; i < targets.size() && ok; ++i) ok = rf::execute(item.expr, impl_->inputs[i]) == targets[i];
    if (!ok) throw std::logic_error("enumerated expression disagrees with execution: " + item.text);
    out.push_back({item.text, 0.0 - static_cast<double>(out.size())});
  }
  return out;
}

std::vector<Proposal> EnumBackend<RobustFill>::propose(const rf::Spec& spec, int k) {
  std::vector<std::string> inputs, targets;
  for (const auto& ex : spec.examples) {
    inputs.push_back(ex.input);
    targets.push_back(ex.output);
  }
  auto it = std::find_if(cache_.begin(), cache_.end(), [&](const auto& idx) { return idx->inputs() == inputs; });
  std::shared_ptr<RfResultIndex> index;
  if (it != cache_.end()) {
    index = *it;
    cache_.erase(it);
  } else {
    index = std::make_shared<RfResultIndex>(inputs, config_);
  }
  cache_.push_front(index);
  if (cache_.size() > config_.cached_inputs) cache_.pop_back();
  return index->propose(targets, k);
}

}  // namespace exedec
