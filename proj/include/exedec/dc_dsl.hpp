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

// DeepCoder integer/list DSL. A program binds its inputs, then assigns one
// operation result per line; the last binding is the program output.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace exedec::dc {

using Int = std::int64_t;
using List = std::vector<Int>;

struct Value {
  std::variant<Int, List> data;

  Value() = default;
  Value(Int n) : data(n) {}  // NOLINT(google-explicit-constructor)
  Value(List xs) : data(std::move(xs)) {}  // NOLINT(google-explicit-constructor)

  bool is_int() const { return std::holds_alternative<Int>(data); }
  bool is_list() const { return std::holds_alternative<List>(data); }
  Int as_int() const { return std::get<Int>(data); }
  const List& as_list() const { return std::get<List>(data); }
  bool operator==(const Value&) const = default;
};

// Intermediate and output values must stay within this range.
inline constexpr Int kValueBound = 256;
bool in_range(const Value& v);

enum class Op : std::uint8_t {
  Head, Last, Take, Drop, Access, Minimum, Maximum, Reverse, Sort, Sum,
  Map, Filter, Count, ZipWith, Scanl1,
};
inline constexpr int kNumOps = 15;

enum class Type : std::uint8_t { Int, List };

// Lambdas, by kind. Indices are stable and used by the enumerators.
enum class IntToInt : std::uint8_t {
  PlusOne, MinusOne, TimesTwo, DivTwo, Negate, Square, TimesThree, DivThree, TimesFour, DivFour,
};
enum class IntToBool : std::uint8_t { Positive, Negative, Even, Odd };
enum class IntPair : std::uint8_t { Add, Subtract, Multiply, Min, Max };
inline constexpr int kNumIntToInt = 10;
inline constexpr int kNumIntToBool = 4;
inline constexpr int kNumIntPair = 5;

using Lambda = std::variant<std::monostate, IntToInt, IntToBool, IntPair>;

Int call(IntToInt f, Int x);
bool call(IntToBool f, Int x);
Int call(IntPair f, Int a, Int b);

struct OpSignature {
  std::string_view name;
  int lambda_kind;               // 0 none, 1 int->int, 2 int->bool, 3 (int,int)->int
  std::vector<Type> operands;    // variable operand sorts in print order
  Type result;
};
const OpSignature& signature(Op op);
std::string_view op_name(Op op);
std::string lambda_text(const Lambda& l);

struct Statement {
  int target = 1;            // variable number k of "xk"
  Op op = Op::Sort;
  Lambda lambda;
  std::vector<int> args;     // variable numbers
  bool operator==(const Statement&) const = default;
};

struct Program {
  std::vector<int> inputs;   // variable numbers bound to INPUT, in order
  std::vector<Statement> statements;
  bool operator==(const Program&) const = default;
};

struct Binding {
  int name = 0;
  Value value;
  bool operator==(const Binding&) const = default;
};

// Bindings in creation order; names are unique.
struct State {
  std::vector<Binding> bindings;

  const Value* lookup(int name) const;
  bool operator==(const State&) const = default;
};

// Applies `op` to operand values. Empty optional: execution error (type
// mismatch, empty-list aggregate, out-of-bounds access, range violation).
std::optional<Value> apply(Op op, const Lambda& lambda, std::span<const Value* const> operands);

bool typecheck(const Statement& stmt, const State& state);
std::optional<State> execute(const Statement& stmt, const State& state);
std::optional<Value> execute(const Program& p, std::span<const Value> inputs);

// Renames variables to x0, x1, ... in binding order.
Program canonicalize(const Program& p);

// Surface syntax, e.g. "x0 = INPUT | x1 = Map (**2) x0 | x2 = Sort x1".
std::string to_string(const Value& v);
std::string to_string(const Statement& s);
std::string to_string(const Program& p);
// Right-hand side only, e.g. "Map (**2) x0".
std::string rhs_string(const Statement& s);

Value parse_value(std::string_view text);
// Accepts "xk = RHS" or a bare RHS (target then stays at its default).
Statement parse_statement(std::string_view text);
Program parse_program(std::string_view text);
// Comma-separated top-level values, e.g. "[1, 2], 3".
std::vector<Value> parse_value_list(std::string_view text);

std::string var_name(int k);

}  // namespace exedec::dc
