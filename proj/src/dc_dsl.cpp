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

#include "exedec/dc_dsl.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_map>

#include "exedec/common.hpp"

namespace exedec::dc {
namespace {

const std::array<OpSignature, kNumOps>& signatures() {
  static const std::array<OpSignature, kNumOps> table = {{
      {"Head", 0, {Type::List}, Type::Int},
      {"Last", 0, {Type::List}, Type::Int},
      {"Take", 0, {Type::Int, Type::List}, Type::List},
      {"Drop", 0, {Type::Int, Type::List}, Type::List},
      {"Access", 0, {Type::Int, Type::List}, Type::Int},
      {"Minimum", 0, {Type::List}, Type::Int},
      {"Maximum", 0, {Type::List}, Type::Int},
      {"Reverse", 0, {Type::List}, Type::List},
      {"Sort", 0, {Type::List}, Type::List},
      {"Sum", 0, {Type::List}, Type::Int},
      {"Map", 1, {Type::List}, Type::List},
      {"Filter", 2, {Type::List}, Type::List},
      {"Count", 2, {Type::List}, Type::Int},
      {"ZipWith", 3, {Type::List, Type::List}, Type::List},
      {"Scanl1", 3, {Type::List}, Type::List},
  }};
  return table;
}

constexpr std::array<std::string_view, kNumIntToInt> kIntToIntText = {
    "(+1)", "(-1)", "(*2)", "(/2)", "(*(-1))", "(**2)", "(*3)", "(/3)", "(*4)", "(/4)"};
constexpr std::array<std::string_view, kNumIntToBool> kIntToBoolText = {
    "(>0)", "(<0)", "(%2==0)", "(%2==1)"};
constexpr std::array<std::string_view, kNumIntPair> kIntPairText = {
    "(+)", "(-)", "(*)", "(min)", "(max)"};

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(Int a, Int b) { return ((a % b) + b) % b; }

}  // namespace

Int call(IntToInt f, Int x) {
  switch (f) {
    case IntToInt::PlusOne: return x + 1;
    case IntToInt::MinusOne: return x - 1;
    case IntToInt::TimesTwo: return x * 2;
    case IntToInt::DivTwo: return floor_div(x, 2);
    case IntToInt::Negate: return -x;
    case IntToInt::Square: return x * x;
    case IntToInt::TimesThree: return x * 3;
    case IntToInt::DivThree: return floor_div(x, 3);
    case IntToInt::TimesFour: return x * 4;
    case IntToInt::DivFour: return floor_div(x, 4);
  }
  return x;
}

bool call(IntToBool f, Int x) {
  switch (f) {
    case IntToBool::Positive: return x > 0;
    case IntToBool::Negative: return x < 0;
    case IntToBool::Even: return floor_mod(x, 2) == 0;
    case IntToBool::Odd: return floor_mod(x, 2) == 1;
  }
  return false;
}

Int call(IntPair f, Int a, Int b) {
  switch (f) {
    case IntPair::Add: return a + b;
    case IntPair::Subtract: return a - b;
    case IntPair::Multiply: return a * b;
    case IntPair::Min: return std::min(a, b);
    case IntPair::Max: return std::max(a, b);
  }
  return a;
}

namespace {

bool bounded(Int x) { return x >= -kValueBound && x <= kValueBound; }

std::optional<Value> checked(Value v) {
  if (!in_range(v)) return std::nullopt;
  return v;
}

std::size_t clamp_count(Int n, std::size_t len) {
  if (n < 0) return 0;
  return std::min(static_cast<std::size_t>(n), len);
}

}  // namespace

bool in_range(const Value& v) {
  if (v.is_int()) return bounded(v.as_int());
  const auto& xs = v.as_list();
  return std::all_of(xs.begin(), xs.end(), bounded);
}

const OpSignature& signature(Op op) { return signatures()[static_cast<std::size_t>(op)]; }
std::string_view op_name(Op op) { return signature(op).name; }

std::string lambda_text(const Lambda& l) {
  if (const auto* f = std::get_if<IntToInt>(&l)) return std::string(kIntToIntText[static_cast<std::size_t>(*f)]);
  if (const auto* f = std::get_if<IntToBool>(&l)) return std::string(kIntToBoolText[static_cast<std::size_t>(*f)]);
  if (const auto* f = std::get_if<IntPair>(&l)) return std::string(kIntPairText[static_cast<std::size_t>(*f)]);
  return {};
}

std::string var_name(int k) { return "x" + std::to_string(k); }

const Value* State::lookup(int name) const {
  for (const Binding& b : bindings)
    if (b.name == name) return &b.value;
  return nullptr;
}

std::optional<Value> apply(Op op, const Lambda& lambda, std::span<const Value* const> operands) {
  const OpSignature& sig = signature(op);
  if (operands.size() != sig.operands.size()) return std::nullopt;
  if (static_cast<int>(lambda.index()) != sig.lambda_kind) return std::nullopt;
  for (std::size_t j = 0; j < operands.size(); ++j) {
    const bool want_list = sig.operands[j] == Type::List;
    if (operands[j]->is_list() != want_list) return std::nullopt;
  }
  // The list operand is always last.
  const List& xs = operands.back()->as_list();

  switch (op) {
    case Op::Head:
      if (xs.empty()) return std::nullopt;
      return Value(xs.front());
    case Op::Last:
      if (xs.empty()) return std::nullopt;
      return Value(xs.back());
    case Op::Take: {
      const auto n = clamp_count(operands[0]->as_int(), xs.size());
      return Value(List(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(n)));
    }
    case Op::Drop: {
      const auto n = clamp_count(operands[0]->as_int(), xs.size());
      return Value(List(xs.begin() + static_cast<std::ptrdiff_t>(n), xs.end()));
    }
    case Op::Access: {
      const Int n = operands[0]->as_int();
      if (n < 0 || n >= static_cast<Int>(xs.size())) return std::nullopt;
      return Value(xs[static_cast<std::size_t>(n)]);
    }
    case Op::Minimum:
      if (xs.empty()) return std::nullopt;
      return Value(*std::min_element(xs.begin(), xs.end()));
    case Op::Maximum:
      if (xs.empty()) return std::nullopt;
      return Value(*std::max_element(xs.begin(), xs.end()));
    case Op::Reverse: return Value(List(xs.rbegin(), xs.rend()));
    case Op::Sort: {
      List ys = xs;
      std::sort(ys.begin(), ys.end());
      return Value(std::move(ys));
    }
    case Op::Sum: {
      Int s = 0;
      for (Int x : xs) s += x;
      return checked(Value(s));
    }
    case Op::Map: {
      List ys;
      ys.reserve(xs.size());
      for (Int x : xs) {
        const Int y = call(std::get<IntToInt>(lambda), x);
        if (!bounded(y)) return std::nullopt;
        ys.push_back(y);
      }
      return Value(std::move(ys));
    }
    case Op::Filter: {
      List ys;
      for (Int x : xs)
        if (call(std::get<IntToBool>(lambda), x)) ys.push_back(x);
      return Value(std::move(ys));
    }
    case Op::Count: {
      Int n = 0;
      for (Int x : xs) n += call(std::get<IntToBool>(lambda), x) ? 1 : 0;
      return Value(n);
    }
    case Op::ZipWith: {
      const List& as = operands[0]->as_list();
      const std::size_t n = std::min(as.size(), xs.size());
      List ys;
      ys.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        const Int y = call(std::get<IntPair>(lambda), as[j], xs[j]);
        if (!bounded(y)) return std::nullopt;
        ys.push_back(y);
      }
      return Value(std::move(ys));
    }
    case Op::Scanl1: {
      List ys;
      ys.reserve(xs.size());
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const Int y = j == 0 ? xs[0] : call(std::get<IntPair>(lambda), ys.back(), xs[j]);
        if (!bounded(y)) return std::nullopt;
        ys.push_back(y);
      }
      return Value(std::move(ys));
    }
  }
  return std::nullopt;
}

bool typecheck(const Statement& stmt, const State& state) {
  const OpSignature& sig = signature(stmt.op);
  if (static_cast<int>(stmt.lambda.index()) != sig.lambda_kind) return false;
  if (stmt.args.size() != sig.operands.size()) return false;
  for (std::size_t j = 0; j < stmt.args.size(); ++j) {
    const Value* v = state.lookup(stmt.args[j]);
    if (v == nullptr || v->is_list() != (sig.operands[j] == Type::List)) return false;
  }
  return state.lookup(stmt.target) == nullptr;
}

std::optional<State> execute(const Statement& stmt, const State& state) {
  if (!typecheck(stmt, state)) return std::nullopt;
  std::array<const Value*, 2> operands{};
  for (std::size_t j = 0; j < stmt.args.size(); ++j) operands[j] = state.lookup(stmt.args[j]);
  auto result = dc::apply(stmt.op, stmt.lambda, std::span(operands.data(), stmt.args.size()));
  if (!result || !in_range(*result)) return std::nullopt;
  State next = state;
  next.bindings.push_back({stmt.target, std::move(*result)});
  return next;
}

std::optional<Value> execute(const Program& p, std::span<const Value> inputs) {
  if (inputs.size() != p.inputs.size() || p.statements.empty()) return std::nullopt;
  State state;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    if (state.lookup(p.inputs[j]) != nullptr) return std::nullopt;
    state.bindings.push_back({p.inputs[j], inputs[j]});
  }
  for (const Statement& s : p.statements) {
    auto next = execute(s, state);
    if (!next) return std::nullopt;
    state = std::move(*next);
  }
  return state.bindings.back().value;
}

Program canonicalize(const Program& p) {
  std::unordered_map<int, int> rename;
  Program out;
  for (int name : p.inputs) {
    const int k = static_cast<int>(rename.size());
    rename.emplace(name, k);
    out.inputs.push_back(k);
  }
  for (const Statement& s : p.statements) {
    Statement t = s;
    for (int& a : t.args) {
      const auto it = rename.find(a);
      if (it != rename.end()) a = it->second;
    }
    t.target = static_cast<int>(rename.size());
    rename.emplace(s.target, t.target);
    out.statements.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Value& v) {
  if (v.is_int()) return std::to_string(v.as_int());
  std::string out = "[";
  for (std::size_t j = 0; j < v.as_list().size(); ++j) {
    if (j > 0) out += ", ";
    out += std::to_string(v.as_list()[j]);
  }
  return out + "]";
}

std::string rhs_string(const Statement& s) {
  std::string out(op_name(s.op));
  if (!std::holds_alternative<std::monostate>(s.lambda)) out += " " + lambda_text(s.lambda);
  for (int a : s.args) out += " " + var_name(a);
  return out;
}

std::string to_string(const Statement& s) { return var_name(s.target) + " = " + rhs_string(s); }

std::string to_string(const Program& p) {
  std::string out;
  for (int name : p.inputs) {
    if (!out.empty()) out += " | ";
    out += var_name(name) + " = INPUT";
  }
  for (const Statement& s : p.statements) out += " | " + to_string(s);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '=' && text_[pos_] != '(')
      ++pos_;
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  int variable() {
    skip_ws();
    const std::size_t start = pos_;
    const auto w = word();
    int k = -1;
    if (w.size() >= 2 && w[0] == 'x') {
      const auto [ptr, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), k);
      if (ec != std::errc() || ptr != w.data() + w.size()) k = -1;
    }
    if (k < 0) {
      pos_ = start;
      fail("expected a variable name like x0");
    }
    return k;
  }

  Int integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("expected an integer");
    }
    return value;
  }

  Value value() {
    if (!peek('[')) return Value(integer());
    ++pos_;
    List xs;
    if (!peek(']')) {
      xs.push_back(integer());
      while (peek(',')) {
        ++pos_;
        xs.push_back(integer());
      }
    }
    expect(']');
    return Value(std::move(xs));
  }

  Lambda lambda(int kind) {
    skip_ws();
    const std::size_t start = pos_;
    if (!peek('(')) fail("expected a lambda");
    int depth = 0;
    std::string compact;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (c == ' ') continue;
      compact.push_back(c);
      if (c == '(') ++depth;
      if (c == ')' && --depth == 0) break;
    }
    auto find = [&](const auto& table) -> int {
      for (std::size_t j = 0; j < table.size(); ++j)
        if (compact == table[j]) return static_cast<int>(j);
      return -1;
    };
    int j = -1;
    Lambda out;
    if (kind == 1 && (j = find(kIntToIntText)) >= 0) out = static_cast<IntToInt>(j);
    if (kind == 2 && (j = find(kIntToBoolText)) >= 0) out = static_cast<IntToBool>(j);
    if (kind == 3 && (j = find(kIntPairText)) >= 0) out = static_cast<IntPair>(j);
    if (j < 0) {
      pos_ = start;
      fail("lambda '" + compact + "' does not fit this operation");
    }
    return out;
  }

  // "xk = RHS" or a bare RHS.
  Statement statement() {
    Statement s;
    skip_ws();
    const std::size_t save = pos_;
    word();
    if (peek('=')) {
      pos_ = save;
      s.target = variable();
      expect('=');
    } else {
      pos_ = save;
    }
    const std::size_t op_pos = pos_;
    const auto name = word();
    int op = -1;
    for (int j = 0; j < kNumOps; ++j)
      if (op_name(static_cast<Op>(j)) == name) op = j;
    if (op < 0) {
      pos_ = op_pos;
      fail("unknown operation '" + std::string(name) + "'");
    }
    s.op = static_cast<Op>(op);
    const OpSignature& sig = signature(s.op);
    if (sig.lambda_kind != 0) s.lambda = lambda(sig.lambda_kind);
    for (std::size_t j = 0; j < sig.operands.size(); ++j) s.args.push_back(variable());
    expect_end();
    return s;
  }

  bool is_input_line() {
    const std::size_t save = pos_;
    bool result = false;
    try {
      variable();
      if (peek('=')) {
        ++pos_;
        skip_ws();
        result = text_.substr(pos_) == "INPUT" ||
                 (text_.substr(pos_).starts_with("INPUT") &&
                  text_.substr(pos_ + 5).find_first_not_of(' ') == std::string_view::npos);
      }
    } catch (const ParseError&) {
      result = false;
    }
    pos_ = save;
    return result;
  }

  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::vector<std::pair<std::string_view, std::size_t>> split_lines(std::string_view text) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = text.find('|', start);
    out.emplace_back(text.substr(start, bar == std::string_view::npos ? bar : bar - start), start);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return out;
}

}  // namespace

Value parse_value(std::string_view text) {
  Parser p(text);
  Value v = p.value();
  p.expect_end();
  return v;
}

std::vector<Value> parse_value_list(std::string_view text) {
  Parser p(text);
  std::vector<Value> out;
  out.push_back(p.value());
  while (p.peek(',')) {
    ++p.pos_;
    out.push_back(p.value());
  }
  p.expect_end();
  return out;
}

Statement parse_statement(std::string_view text) { return Parser(text).statement(); }

Program parse_program(std::string_view text) {
  Program prog;
  std::vector<int> defined;
  auto is_defined = [&](int k) { return std::find(defined.begin(), defined.end(), k) != defined.end(); };
  for (const auto& [line, offset] : split_lines(text)) {
    Parser p(line, offset);
    if (p.is_input_line()) {
      if (!prog.statements.empty()) p.fail("INPUT lines must precede assignments");
      const int k = p.variable();
      if (is_defined(k)) p.fail("variable " + var_name(k) + " defined twice");
      prog.inputs.push_back(k);
      defined.push_back(k);
      continue;
    }
    if (prog.inputs.empty()) p.fail("program must start with INPUT initializations");
    p.skip_ws();
    if (p.at_end()) p.fail("empty line");
    const std::size_t save = p.pos_;
    p.word();
    if (!p.peek('=')) {
      p.pos_ = save;
      p.fail("assignment needs a target variable");
    }
    p.pos_ = save;
    Statement s = p.statement();
    for (int a : s.args)
      if (!is_defined(a)) throw ParseError("undefined variable " + var_name(a), offset);
    if (is_defined(s.target)) throw ParseError("variable " + var_name(s.target) + " defined twice", offset);
    defined.push_back(s.target);
    prog.statements.push_back(std::move(s));
  }
  if (prog.statements.empty()) throw ParseError("program has no assignments", text.size());
  return prog;
}

}  // namespace exedec::dc
