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

// RobustFill string-transformation DSL: a program is a concatenation of
// expressions, each evaluated independently against the same input string.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace exedec::rf {

// Printable characters a value may contain: letters, digits and delimiters
// (the delimiter set includes the space character).
inline constexpr std::string_view kDelimiters = "&,.?!@()[]%{}/:;$# \"'";
bool is_delimiter(char c);
bool is_character(char c);  // letter, digit or delimiter

enum class RegexClass : std::uint8_t {
  Number,
  Word,
  Alphanum,
  AllCaps,
  PropCase,
  Lower,
  Digit,
  Char,
  Delimiter,  // a literal delimiter character
};
inline constexpr int kNumRegexClasses = 8;  // excludes Delimiter

struct Regex {
  RegexClass kind = RegexClass::Word;
  char delimiter = 0;  // meaningful only when kind == Delimiter

  static Regex of(RegexClass k) { return {k, 0}; }
  static Regex delim(char c) { return {RegexClass::Delimiter, c}; }
  bool operator==(const Regex&) const = default;
};

enum class Case : std::uint8_t { AllCaps, Proper, Lower };
enum class Boundary : std::uint8_t { Start, End };

inline constexpr int kMinPosition = -100;
inline constexpr int kMaxPosition = 100;
inline constexpr int kMaxIndex = 5;
bool valid_index(int i);  // i in [-5, -1] or [1, 5]

// Substring operations.
struct SubStr {
  int k1 = 1, k2 = 1;
  bool operator==(const SubStr&) const = default;
};
struct GetSpan {
  Regex r1;
  int i1 = 1;
  Boundary b1 = Boundary::Start;
  Regex r2;
  int i2 = 1;
  Boundary b2 = Boundary::End;
  bool operator==(const GetSpan&) const = default;
};
struct GetToken {
  Regex r;
  int i = 1;
  bool operator==(const GetToken&) const = default;
};
struct GetUpto {
  Regex r;
  bool operator==(const GetUpto&) const = default;
};
struct GetFrom {
  Regex r;
  bool operator==(const GetFrom&) const = default;
};

// Modification operations.
struct ToCase {
  Case c = Case::Proper;
  bool operator==(const ToCase&) const = default;
};
struct Replace {
  char from = ' ', to = ' ';
  bool operator==(const Replace&) const = default;
};
struct Trim {
  bool operator==(const Trim&) const = default;
};
struct GetFirst {
  Regex r;
  int i = 1;
  bool operator==(const GetFirst&) const = default;
};
struct GetAll {
  Regex r;
  bool operator==(const GetAll&) const = default;
};
struct Substitute {
  Regex r;
  int i = 1;
  char c = 'a';
  bool operator==(const Substitute&) const = default;
};
struct SubstituteAll {
  Regex r;
  char c = 'a';
  bool operator==(const SubstituteAll&) const = default;
};
struct Remove {
  Regex r;
  int i = 1;
  bool operator==(const Remove&) const = default;
};
struct RemoveAll {
  Regex r;
  bool operator==(const RemoveAll&) const = default;
};

using Substring = std::variant<SubStr, GetSpan, GetToken, GetUpto, GetFrom>;
using Modification = std::variant<ToCase, Replace, Trim, GetFirst, GetAll,
                                  Substitute, SubstituteAll, Remove, RemoveAll>;

// m(inner): `outer` applied to the result of `inner`. Compose never nests.
struct Compose {
  Modification outer;
  std::variant<Substring, Modification> inner;
  bool operator==(const Compose&) const = default;
};

struct ConstStr {
  char c = '.';
  bool operator==(const ConstStr&) const = default;
};

using Expression = std::variant<Substring, Modification, Compose, ConstStr>;

enum class Category : std::uint8_t { Const, Substring, Modification, Compose };
Category category_of(const Expression& e);

struct Program {
  std::vector<Expression> expressions;
  bool operator==(const Program&) const = default;
};

struct Span {
  std::size_t start = 0, end = 0;
  bool operator==(const Span&) const = default;
};

// Left-to-right, non-overlapping, maximal matches of `r` in `text`.
std::vector<Span> matches(const Regex& r, std::string_view text);

// Execution. An empty optional is an execution error.
std::optional<std::string> execute(const Substring& s, std::string_view input);
std::optional<std::string> apply(const Modification& m, std::string_view value);
std::optional<std::string> execute(const Expression& e, std::string_view input);
std::optional<std::string> execute(const Program& p, std::string_view input);

// True iff every argument lies in its grammar range.
bool well_formed(const Expression& e);
bool well_formed(const Program& p);

// Surface syntax, e.g. "GetFrom(' ') | Const('.') | Compose(ToCase(PROPER),
// GetToken(WORD, 1))". Parsers throw ParseError.
std::string to_string(const Regex& r);
std::string to_string(const Expression& e);
std::string to_string(const Program& p);
Expression parse_expression(std::string_view text);
Program parse_program(std::string_view text);

// String values are written double-quoted with backslash escapes.
std::string quote(std::string_view value);
std::string unquote(std::string_view text);  // throws ParseError

}  // namespace exedec::rf
