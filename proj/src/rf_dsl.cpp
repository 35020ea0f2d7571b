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

#include "exedec/rf_dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "exedec/common.hpp"

namespace exedec::rf {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_letter(char c) { return is_upper(c) || is_lower(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char to_upper(char c) { return is_lower(c) ? static_cast<char>(c - 'a' + 'A') : c; }
char to_lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

template <class Pred>
std::size_t run_length(std::string_view text, std::size_t p, Pred pred) {
  std::size_t q = p;
  while (q < text.size() && pred(text[q])) ++q;
  return q - p;
}

// Length of the maximal match of `r` starting exactly at `p`, 0 if none.
std::size_t match_at(const Regex& r, std::string_view text, std::size_t p) {
  const char c = text[p];
  switch (r.kind) {
    case RegexClass::Number: return run_length(text, p, is_digit);
    case RegexClass::Word: return run_length(text, p, is_letter);
    case RegexClass::Alphanum:
      return run_length(text, p, [](char x) { return is_letter(x) || is_digit(x); });
    case RegexClass::AllCaps: return run_length(text, p, is_upper);
    case RegexClass::Lower: return run_length(text, p, is_lower);
    case RegexClass::PropCase: {
      if (!is_upper(c) || p + 1 >= text.size() || !is_lower(text[p + 1])) return 0;
      return 1 + run_length(text, p + 1, is_lower);
    }
    case RegexClass::Digit: return is_digit(c) ? 1 : 0;
    case RegexClass::Char: return 1;
    case RegexClass::Delimiter: return c == r.delimiter ? 1 : 0;
  }
  return 0;
}

// 1-based index from the front for i > 0, from the back for i < 0.
std::optional<Span> nth(const std::vector<Span>& spans, int i) {
  const auto n = static_cast<int>(spans.size());
  if (i > 0 && i <= n) return spans[static_cast<std::size_t>(i - 1)];
  if (i < 0 && -i <= n) return spans[static_cast<std::size_t>(n + i)];
  return std::nullopt;
}

std::optional<std::string> nonempty(std::string_view s) {
  if (s.empty()) return std::nullopt;
  return std::string(s);
}

std::string proper_case(std::string_view value) {
  std::string out(value);
  for (const Span& m : matches(Regex::of(RegexClass::Word), value)) {
    out[m.start] = to_upper(out[m.start]);
    for (std::size_t j = m.start + 1; j < m.end; ++j) out[j] = to_lower(out[j]);
  }
  return out;
}

struct SubstringExec {
  std::string_view in;

  std::optional<std::string> operator()(const SubStr& s) const {
    const auto len = static_cast<int>(in.size());
    auto resolve = [len](int k) { return k > 0 ? k : len + k + 1; };
    if (s.k1 == 0 || s.k2 == 0) return std::nullopt;
    const int p1 = resolve(s.k1), p2 = resolve(s.k2);
    if (p1 < 1 || p2 > len || p1 > p2) return std::nullopt;
    return std::string(in.substr(static_cast<std::size_t>(p1 - 1),
                                 static_cast<std::size_t>(p2 - p1 + 1)));
  }
  std::optional<std::string> operator()(const GetSpan& s) const {
    const auto m1 = nth(matches(s.r1, in), s.i1);
    const auto m2 = nth(matches(s.r2, in), s.i2);
    if (!m1 || !m2) return std::nullopt;
    const std::size_t p1 = s.b1 == Boundary::Start ? m1->start : m1->end;
    const std::size_t p2 = s.b2 == Boundary::Start ? m2->start : m2->end;
    if (p1 >= p2) return std::nullopt;
    return std::string(in.substr(p1, p2 - p1));
  }
  std::optional<std::string> operator()(const GetToken& s) const {
    const auto m = nth(matches(s.r, in), s.i);
    if (!m) return std::nullopt;
    return std::string(in.substr(m->start, m->end - m->start));
  }
  std::optional<std::string> operator()(const GetUpto& s) const {
    const auto ms = matches(s.r, in);
    if (ms.empty()) return std::nullopt;
    return nonempty(in.substr(0, ms.front().end));
  }
  std::optional<std::string> operator()(const GetFrom& s) const {
    const auto ms = matches(s.r, in);
    if (ms.empty()) return std::nullopt;
    return nonempty(in.substr(ms.front().end));
  }
};

struct ModificationExec {
  std::string_view in;

  std::optional<std::string> operator()(const ToCase& m) const {
    std::string out(in);
    switch (m.c) {
      case Case::AllCaps: std::transform(out.begin(), out.end(), out.begin(), to_upper); break;
      case Case::Lower: std::transform(out.begin(), out.end(), out.begin(), to_lower); break;
      case Case::Proper: out = proper_case(in); break;
    }
    return out;
  }
  std::optional<std::string> operator()(const Replace& m) const {
    std::string out(in);
    std::replace(out.begin(), out.end(), m.from, m.to);
    return out;
  }
  std::optional<std::string> operator()(const Trim&) const {
    const auto first = in.find_first_not_of(' ');
    if (first == std::string_view::npos) return std::string();
    const auto last = in.find_last_not_of(' ');
    return std::string(in.substr(first, last - first + 1));
  }
  std::optional<std::string> operator()(const GetFirst& m) const {
    const auto ms = matches(m.r, in);
    const auto count = static_cast<std::size_t>(m.i > 0 ? m.i : -m.i);
    if (m.i == 0 || count > ms.size()) return std::nullopt;
    const std::size_t from = m.i > 0 ? 0 : ms.size() - count;
    std::string out;
    for (std::size_t j = from; j < from + count; ++j)
      out.append(in.substr(ms[j].start, ms[j].end - ms[j].start));
    return out;
  }
  std::optional<std::string> operator()(const GetAll& m) const {
    std::string out;
    for (const Span& s : matches(m.r, in)) {
      if (!out.empty()) out.push_back(' ');
      out.append(in.substr(s.start, s.end - s.start));
    }
    return out;
  }
  std::optional<std::string> operator()(const Substitute& m) const {
    const auto s = nth(matches(m.r, in), m.i);
    if (!s) return std::nullopt;
    std::string out(in.substr(0, s->start));
    out.push_back(m.c);
    out.append(in.substr(s->end));
    return out;
  }
  std::optional<std::string> operator()(const SubstituteAll& m) const {
    std::string out;
    std::size_t prev = 0;
    for (const Span& s : matches(m.r, in)) {
      out.append(in.substr(prev, s.start - prev));
      out.push_back(m.c);
      prev = s.end;
    }
    out.append(in.substr(prev));
    return out;
  }
  std::optional<std::string> operator()(const Remove& m) const {
    const auto s = nth(matches(m.r, in), m.i);
    if (!s) return std::nullopt;
    std::string out(in.substr(0, s->start));
    out.append(in.substr(s->end));
    return out;
  }
  std::optional<std::string> operator()(const RemoveAll& m) const {
    std::string out;
    std::size_t prev = 0;
    for (const Span& s : matches(m.r, in)) {
      out.append(in.substr(prev, s.start - prev));
      prev = s.end;
    }
    out.append(in.substr(prev));
    return out;
  }
};

}  // namespace

bool is_delimiter(char c) { return c != 0 && kDelimiters.find(c) != std::string_view::npos; }
bool is_character(char c) { return is_letter(c) || is_digit(c) || is_delimiter(c); }
bool valid_index(int i) { return i != 0 && i >= -kMaxIndex && i <= kMaxIndex; }

std::vector<Span> matches(const Regex& r, std::string_view text) {
  std::vector<Span> out;
  std::size_t p = 0;
  while (p < text.size()) {
    const std::size_t len = match_at(r, text, p);
    if (len > 0) {
      out.push_back({p, p + len});
      p += len;
    } else {
      ++p;
    }
  }
  return out;
}

Category category_of(const Expression& e) {
  switch (e.index()) {
    case 0: return Category::Substring;
    case 1: return Category::Modification;
    case 2: return Category::Compose;
    default: return Category::Const;
  }
}

std::optional<std::string> execute(const Substring& s, std::string_view input) {
  return std::visit(SubstringExec{input}, s);
}

std::optional<std::string> apply(const Modification& m, std::string_view value) {
  return std::visit(ModificationExec{value}, m);
}

std::optional<std::string> execute(const Expression& e, std::string_view input) {
  if (const auto* s = std::get_if<Substring>(&e)) return execute(*s, input);
  if (const auto* m = std::get_if<Modification>(&e)) return rf::apply(*m, input);
  if (const auto* c = std::get_if<ConstStr>(&e)) return std::string(1, c->c);
  const auto& comp = std::get<Compose>(e);
  const auto inner = std::holds_alternative<Substring>(comp.inner)
                         ? execute(std::get<Substring>(comp.inner), input)
                         : rf::apply(std::get<Modification>(comp.inner), input);
  if (!inner) return std::nullopt;
  return rf::apply(comp.outer, *inner);
}

std::optional<std::string> execute(const Program& p, std::string_view input) {
  std::string out;
  for (const Expression& e : p.expressions) {
    auto part = execute(e, input);
    if (!part) return std::nullopt;
    out += *part;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

bool ok(const Regex& r) {
  return r.kind != RegexClass::Delimiter || is_delimiter(r.delimiter);
}

struct WellFormed {
  bool operator()(const SubStr& s) const {
    return s.k1 >= kMinPosition && s.k1 <= kMaxPosition && s.k2 >= kMinPosition &&
           s.k2 <= kMaxPosition;
  }
  bool operator()(const GetSpan& s) const {
    return ok(s.r1) && ok(s.r2) && valid_index(s.i1) && valid_index(s.i2);
  }
  bool operator()(const GetToken& s) const { return ok(s.r) && valid_index(s.i); }
  bool operator()(const GetUpto& s) const { return ok(s.r); }
  bool operator()(const GetFrom& s) const { return ok(s.r); }
  bool operator()(const ToCase&) const { return true; }
  bool operator()(const Replace& m) const { return is_delimiter(m.from) && is_delimiter(m.to); }
  bool operator()(const Trim&) const { return true; }
  bool operator()(const GetFirst& m) const { return ok(m.r) && valid_index(m.i); }
  bool operator()(const GetAll& m) const { return ok(m.r); }
  bool operator()(const Substitute& m) const {
    return ok(m.r) && valid_index(m.i) && is_character(m.c);
  }
  bool operator()(const SubstituteAll& m) const { return ok(m.r) && is_character(m.c); }
  bool operator()(const Remove& m) const { return ok(m.r) && valid_index(m.i); }
  bool operator()(const RemoveAll& m) const { return ok(m.r); }
};

}  // namespace

bool well_formed(const Expression& e) {
  WellFormed wf;
  if (const auto* s = std::get_if<Substring>(&e)) return std::visit(wf, *s);
  if (const auto* m = std::get_if<Modification>(&e)) return std::visit(wf, *m);
  if (const auto* c = std::get_if<ConstStr>(&e)) return is_character(c->c);
  const auto& comp = std::get<Compose>(e);
  const bool inner_ok = std::visit([&](const auto& in) { return std::visit(wf, in); }, comp.inner);
  return std::visit(wf, comp.outer) && inner_ok;
}

bool well_formed(const Program& p) {
  return !p.expressions.empty() &&
         std::all_of(p.expressions.begin(), p.expressions.end(),
                     [](const Expression& e) { return well_formed(e); });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

constexpr std::array<std::string_view, kNumRegexClasses> kRegexNames = {
    "NUMBER", "WORD", "ALPHANUM", "ALL_CAPS", "PROP_CASE", "LOWER", "DIGIT", "CHAR"};
constexpr std::array<std::string_view, 3> kCaseNames = {"ALL_CAPS", "PROPER", "LOWER"};
constexpr std::array<std::string_view, 2> kBoundaryNames = {"START", "END"};

std::string char_literal(char c) {
  if (c == '\'' || c == '\\') return std::string("'\\") + c + "'";
  return std::string("'") + c + "'";
}

std::string join_args(std::initializer_list<std::string> args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ", ";
    out += a;
  }
  return out;
}

std::string call(std::string_view name, std::initializer_list<std::string> args) {
  return std::string(name) + "(" + join_args(args) + ")";
}

std::string str(Case c) { return std::string(kCaseNames[static_cast<std::size_t>(c)]); }
std::string str(Boundary b) { return std::string(kBoundaryNames[static_cast<std::size_t>(b)]); }

struct Printer {
  std::string operator()(const SubStr& s) const {
    return call("SubStr", {std::to_string(s.k1), std::to_string(s.k2)});
  }
  std::string operator()(const GetSpan& s) const {
    return call("GetSpan", {to_string(s.r1), std::to_string(s.i1), str(s.b1), to_string(s.r2),
                            std::to_string(s.i2), str(s.b2)});
  }
  std::string operator()(const GetToken& s) const {
    return call("GetToken", {to_string(s.r), std::to_string(s.i)});
  }
  std::string operator()(const GetUpto& s) const { return call("GetUpto", {to_string(s.r)}); }
  std::string operator()(const GetFrom& s) const { return call("GetFrom", {to_string(s.r)}); }
  std::string operator()(const ToCase& m) const { return call("ToCase", {str(m.c)}); }
  std::string operator()(const Replace& m) const {
    return call("Replace", {char_literal(m.from), char_literal(m.to)});
  }
  std::string operator()(const Trim&) const { return "Trim()"; }
  std::string operator()(const GetFirst& m) const {
    return call("GetFirst", {to_string(m.r), std::to_string(m.i)});
  }
  std::string operator()(const GetAll& m) const { return call("GetAll", {to_string(m.r)}); }
  std::string operator()(const Substitute& m) const {
    return call("Substitute", {to_string(m.r), std::to_string(m.i), char_literal(m.c)});
  }
  std::string operator()(const SubstituteAll& m) const {
    return call("SubstituteAll", {to_string(m.r), char_literal(m.c)});
  }
  std::string operator()(const Remove& m) const {
    return call("Remove", {to_string(m.r), std::to_string(m.i)});
  }
  std::string operator()(const RemoveAll& m) const { return call("RemoveAll", {to_string(m.r)}); }
};

}  // namespace

std::string to_string(const Regex& r) {
  if (r.kind == RegexClass::Delimiter) return char_literal(r.delimiter);
  return std::string(kRegexNames[static_cast<std::size_t>(r.kind)]);
}

std::string to_string(const Expression& e) {
  Printer p;
  if (const auto* s = std::get_if<Substring>(&e)) return std::visit(p, *s);
  if (const auto* m = std::get_if<Modification>(&e)) return std::visit(p, *m);
  if (const auto* c = std::get_if<ConstStr>(&e)) return call("Const", {char_literal(c->c)});
  const auto& comp = std::get<Compose>(e);
  const std::string inner =
      std::visit([&](const auto& in) { return std::visit(p, in); }, comp.inner);
  return "Compose(" + std::visit(p, comp.outer) + ", " + inner + ")";
}

std::string to_string(const Program& p) {
  std::string out;
  for (const Expression& e : p.expressions) {
    if (!out.empty()) out += " | ";
    out += to_string(e);
  }
  return out;
}

std::string quote(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string unquote(std::string_view text) {
  if (text.size() < 2 || text.front() != '"' || text.back() != '"')
    throw ParseError("expected a double-quoted string", 0);
  std::string out;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    char c = text[i];
    if (c == '\\') {
      if (i + 2 >= text.size()) throw ParseError("dangling escape", i);
      c = text[++i];
    } else if (c == '"') {
      throw ParseError("unescaped quote", i);
    }
    if (!is_character(c)) throw ParseError("character outside the DSL alphabet", i);
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program program() {
    Program p;
    p.expressions.push_back(expression());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      p.expressions.push_back(expression());
      skip_ws();
    }
    expect_end();
    return p;
  }

  Expression single() {
    Expression e = expression();
    expect_end();
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("expected an integer");
    }
    return value;
  }

  char char_literal() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] != '\'') fail("expected a character literal");
    ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '\\') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated character literal");
    const char c = text_[pos_++];
    if (pos_ >= text_.size() || text_[pos_] != '\'') fail("unterminated character literal");
    ++pos_;
    if (!is_character(c)) {
      pos_ = start;
      fail("character outside the DSL alphabet");
    }
    return c;
  }

  char delimiter() {
    const std::size_t start = pos_;
    const char c = char_literal();
    if (!is_delimiter(c)) {
      pos_ = start;
      fail("expected a delimiter");
    }
    return c;
  }

  Regex regex() {
    if (peek('\'')) return Regex::delim(delimiter());
    const std::size_t start = pos_;
    const auto name = identifier();
    for (std::size_t k = 0; k < kRegexNames.size(); ++k)
      if (name == kRegexNames[k]) return Regex::of(static_cast<RegexClass>(k));
    if (name == "PROPER_CASE") return Regex::of(RegexClass::PropCase);
    pos_ = start;
    fail("unknown regex '" + std::string(name) + "'");
  }

  int index() {
    const std::size_t start = pos_;
    const int i = integer();
    if (!valid_index(i)) {
      pos_ = start;
      fail("index must be in [-5, -1] or [1, 5]");
    }
    return i;
  }

  int position() {
    const std::size_t start = pos_;
    const int k = integer();
    if (k < kMinPosition || k > kMaxPosition) {
      pos_ = start;
      fail("position must be in [-100, 100]");
    }
    return k;
  }

  Case case_arg() {
    const std::size_t start = pos_;
    const auto name = identifier();
    for (std::size_t k = 0; k < kCaseNames.size(); ++k)
      if (name == kCaseNames[k]) return static_cast<Case>(k);
    if (name == "PROPER_CASE" || name == "PROP_CASE") return Case::Proper;
    pos_ = start;
    fail("unknown case '" + std::string(name) + "'");
  }

  Boundary boundary() {
    const std::size_t start = pos_;
    const auto name = identifier();
    if (name == "START") return Boundary::Start;
    if (name == "END") return Boundary::End;
    pos_ = start;
    fail("unknown boundary '" + std::string(name) + "'");
  }

  // Any single operation: substring, modification, Compose or Const.
  Expression expression() {
    skip_ws();
    const std::size_t start = pos_;
    const auto name = identifier();
    expect('(');
    Expression e = operation(name, start);
    expect(')');
    return e;
  }

  Expression operation(std::string_view name, std::size_t start) {
    auto comma = [&] { expect(','); };
    if (name == "SubStr") {
      SubStr s;
      s.k1 = position(); comma(); s.k2 = position();
      return Substring{s};
    }
    if (name == "GetSpan") {
      GetSpan s;
      s.r1 = regex(); comma(); s.i1 = index(); comma(); s.b1 = boundary(); comma();
      s.r2 = regex(); comma(); s.i2 = index(); comma(); s.b2 = boundary();
      return Substring{s};
    }
    if (name == "GetToken") {
      GetToken s;
      s.r = regex(); comma(); s.i = index();
      return Substring{s};
    }
    if (name == "GetUpto") return Substring{GetUpto{regex()}};
    if (name == "GetFrom") return Substring{GetFrom{regex()}};
    if (name == "ToCase") return Modification{ToCase{case_arg()}};
    if (name == "Replace") {
      Replace m;
      m.from = delimiter(); comma(); m.to = delimiter();
      return Modification{m};
    }
    if (name == "Trim") return Modification{Trim{}};
    if (name == "GetFirst") {
      GetFirst m;
      m.r = regex(); comma(); m.i = index();
      return Modification{m};
    }
    if (name == "GetAll") return Modification{GetAll{regex()}};
    if (name == "Substitute") {
      Substitute m;
      m.r = regex(); comma(); m.i = index(); comma(); m.c = char_literal();
      return Modification{m};
    }
    if (name == "SubstituteAll") {
      SubstituteAll m;
      m.r = regex(); comma(); m.c = char_literal();
      return Modification{m};
    }
    if (name == "Remove") {
      Remove m;
      m.r = regex(); comma(); m.i = index();
      return Modification{m};
    }
    if (name == "RemoveAll") return Modification{RemoveAll{regex()}};
    if (name == "Const" || name == "ConstStr") return ConstStr{char_literal()};
    if (name == "Compose") {
      const std::size_t outer_pos = pos_;
      Expression outer = expression();
      if (!std::holds_alternative<Modification>(outer)) {
        pos_ = outer_pos;
        fail("Compose expects a modification as its first argument");
      }
      comma();
      const std::size_t inner_pos = pos_;
      Expression inner = expression();
      Compose c{std::get<Modification>(outer), {}};
      if (auto* s = std::get_if<Substring>(&inner)) {
        c.inner = *s;
      } else if (auto* m = std::get_if<Modification>(&inner)) {
        c.inner = *m;
      } else {
        pos_ = inner_pos;
        fail("Compose expects a substring or modification as its second argument");
      }
      return c;
    }
    pos_ = start;
    fail("unknown operation '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text) { return Parser(text).single(); }
Program parse_program(std::string_view text) { return Parser(text).program(); }

}  // namespace exedec::rf
