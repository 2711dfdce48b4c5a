// Copyright 2026 The qagen Authors
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
#include <cctype>
#include <string>

#include "qagen/lf.hpp"

namespace qagen::lf {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_relation_char(char c) { return is_ident_char(c) || c == '/' || c == '-'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string describe_position(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return "end of input";
  return "'" + std::string(1, text[pos]) + "' at offset " + std::to_string(pos);
}

// Reports the first bracket mismatch, skipping quoted literals.
void check_balance(std::string_view text) {
  std::vector<std::pair<char, std::size_t>> stack;
  bool in_quote = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quote) {
      if (c == '\\') ++i;
      else if (c == '"') in_quote = false;
      continue;
    }
    if (c == '"') {
      in_quote = true;
    } else if (c == '(' || c == '[' || c == '{') {
      stack.emplace_back(c, i);
    } else if (c == ')' || c == ']' || c == '}') {
      char open = c == ')' ? '(' : c == ']' ? '[' : '{';
      if (stack.empty() || stack.back().first != open) {
        throw ParseError(ParseErrorKind::Unbalanced, i, {},
                         "unbalanced '" + std::string(1, c) + "' at offset " + std::to_string(i));
      }
      stack.pop_back();
    }
  }
  if (in_quote) {
    throw ParseError(ParseErrorKind::Unbalanced, text.size(), {"\""}, "unterminated quoted literal");
  }
  if (!stack.empty()) {
    auto [c, pos] = stack.back();
    throw ParseError(ParseErrorKind::Unbalanced, pos, {},
                     "unclosed '" + std::string(1, c) + "' opened at offset " + std::to_string(pos));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LogicalForm parse() {
    Node root = parse_relation_expr();
    skip_ws();
    if (pos_ < text_.size()) fail({"end of input", "OR", "AND", "relation"});
    return LogicalForm{std::move(root)};
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string message = "expected " + join_expected(expected) + ", found " +
                          describe_position(text_, pos_);
    throw ParseError(ParseErrorKind::Syntax, pos_, std::move(expected), message);
  }

  static std::string join_expected(const std::vector<std::string> &expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    return out;
  }

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  bool at(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  std::string identifier(const char *what) {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail({what});
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Peeks a connective word (OR, AND or a relation name) without consuming.
  std::string peek_word() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !is_ident_start(text_[p])) return {};
    while (p < text_.size() && is_relation_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  Node parse_relation_expr() {
    Node left = parse_bool_expr();
    while (true) {
      std::string word = peek_word();
      if (word.empty() || word == "OR" || word == "AND") break;
      pos_ += word.size();
      Node right = parse_bool_expr();
      left = Node(Composite{std::move(left), Connective::Rel(word), std::move(right)});
    }
    return left;
  }

  Node parse_bool_expr() {
    Node left = parse_primary();
    while (true) {
      std::string word = peek_word();
      if (word != "OR" && word != "AND") break;
      pos_ += word.size();
      Node right = parse_primary();
      left = Node(Composite{std::move(left), word == "OR" ? Connective::Or() : Connective::And(),
                            std::move(right)});
    }
    return left;
  }

  Node parse_primary() {
    if (at('{')) {
      ++pos_;
      Node inner = parse_relation_expr();
      expect('}');
      return inner;
    }
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail({"event name", "'{'"});
    return Node(parse_event());
  }

  EventNode parse_event() {
    EventNode event;
    event.event_name = identifier("event name");
    expect('(');
    event.argument = parse_argument();
    expect(')');
    if (at('[')) {
      ++pos_;
      if (!at(']')) {
        while (true) {
          AttributeSlot slot = parse_attribute();
          for (const AttributeSlot &existing : event.attributes) {
            if (existing.name == slot.name) {
              throw ParseError(ParseErrorKind::Syntax, pos_, {},
                               "duplicate attribute '" + slot.name + "' on " + event.event_name);
            }
          }
          event.attributes.push_back(std::move(slot));
          if (at(',')) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(']');
    }
    return event;
  }

  EventArg parse_argument() {
    skip_ws();
    if (at('|')) {
      ++pos_;
      std::string type = identifier("entity type");
      if (pos_ >= text_.size() || text_[pos_] != '|') fail({"'|'"});
      ++pos_;
      return Placeholder{std::move(type)};
    }
    if (at('"')) return Literal{quoted()};
    std::string raw = raw_literal(")", "argument");
    if (raw == "x") return AnswerVar{};
    return Literal{std::move(raw)};
  }

  AttributeSlot parse_attribute() {
    AttributeSlot slot;
    if (at('(')) {
      ++pos_;
      slot.name = identifier("attribute name");
      expect('=');
      slot.binding = parse_binding(")");
      expect(')');
      slot.op = parse_operator();
      return slot;
    }
    slot.name = identifier("attribute name or '('");
    expect('=');
    slot.binding = parse_binding(",]");
    return slot;
  }

  Binding parse_binding(const char *terminators) {
    if (at('"')) return Literal{quoted()};
    std::string raw = raw_literal(terminators, "attribute value");
    if (raw == "x") return AnswerVar{};
    return Literal{std::move(raw)};
  }

  Operator parse_operator() {
    skip_ws();
    if (pos_ >= text_.size()) fail({"operator"});
    char c = text_[pos_];
    auto next_is = [&](char n) { return pos_ + 1 < text_.size() && text_[pos_ + 1] == n; };
    if (c == '<' || c == '>' || c == '=') {
      Comparison cmp;
      if (c == '<' && next_is('=')) {
        cmp = Comparison::LessEqual;
        pos_ += 2;
      } else if (c == '>' && next_is('=')) {
        cmp = Comparison::GreaterEqual;
        pos_ += 2;
      } else {
        cmp = c == '<' ? Comparison::Less : c == '>' ? Comparison::Greater : Comparison::Equal;
        ++pos_;
      }
      return Compare{cmp, parse_operand(",]")};
    }
    if (text_.substr(pos_).starts_with("≤") || text_.substr(pos_).starts_with("≥")) {
      Comparison cmp = text_.substr(pos_).starts_with("≤") ? Comparison::LessEqual
                                                                : Comparison::GreaterEqual;
      pos_ += std::string_view("≤").size();
      return Compare{cmp, parse_operand(",]")};
    }
    if (!is_ident_start(c)) fail({"comparison", "sort", "range", "isnull", "notnull"});
    std::size_t word_start = pos_;
    std::string word = identifier("operator");
    if (word == "isnull") return NullCheck{true};
    if (word == "notnull") return NullCheck{false};
    if (word == "sort") {
      expect('(');
      std::string dir = identifier("asc or desc");
      if (dir != "asc" && dir != "desc") {
        pos_ -= dir.size();
        fail({"asc", "desc"});
      }
      expect(')');
      return Sort{dir == "asc" ? SortDirection::Ascending : SortDirection::Descending};
    }
    if (word == "range") {
      expect('(');
      Range range;
      range.low = parse_bound(",");
      expect(',');
      range.high = parse_bound(")");
      if (!range.low && !range.high) {
        throw ParseError(ParseErrorKind::Syntax, pos_, {"bound"}, "range needs at least one bound");
      }
      expect(')');
      return range;
    }
    pos_ = word_start;
    fail({"comparison", "sort", "range", "isnull", "notnull"});
  }

  std::optional<Operand> parse_bound(const char *terminators) {
    skip_ws();
    if (at('*')) {
      ++pos_;
      return std::nullopt;
    }
    return parse_operand(terminators);
  }

  Operand parse_operand(const char *terminators) {
    if (at('"')) return Literal{quoted()};
    std::string raw = raw_literal(terminators, "operand");
    if (is_kb_path(raw)) return KbRef{std::move(raw)};
    return Literal{std::move(raw)};
  }

  static bool is_kb_path(std::string_view s) {
    std::size_t segments = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      if (!is_ident_start(s[i])) return false;
      while (i < s.size() && is_ident_char(s[i])) ++i;
      ++segments;
      if (i == s.size()) break;
      if (s[i] != '.' || i + 1 == s.size()) return false;
      ++i;
    }
    return segments >= 2;
  }

  std::string quoted() {
    skip_ws();
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) fail({"'\"'"});
    ++pos_;
    return out;
  }

  // Reads up to (not including) a terminator. Structural characters that
  // cannot appear unquoted end the literal with an error.
  std::string raw_literal(std::string_view terminators, const char *what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (terminators.find(c) != std::string_view::npos) break;
      if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == '|' ||
          c == '"' || c == '\\' || (c == ',' && terminators.find(')') == std::string_view::npos))
        break;
      ++pos_;
    }
    std::string raw = trim_copy(text_.substr(start, pos_ - start));
    if (raw.empty()) {
      pos_ = start;
      fail({what});
    }
    if (pos_ >= text_.size() || terminators.find(text_[pos_]) == std::string_view::npos) {
      std::vector<std::string> expected;
      for (char t : terminators) expected.push_back(std::string("'") + t + "'");
      fail(expected);
    }
    return raw;
  }

  static std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t position, std::vector<std::string> expected,
                       const std::string &message)
    : Error(message), kind_(kind), position_(position), expected_(std::move(expected)) {}

LogicalForm parse_lf(std::string_view text) {
  bool blank = std::all_of(text.begin(), text.end(), [](char c) { return is_space(c); });
  if (blank) throw ParseError(ParseErrorKind::Syntax, 0, {"event name", "'{'"}, "empty logical form");
  check_balance(text);
  return Parser(text).parse();
}

}  // namespace qagen::lf
