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

#include <cctype>

#include "qagen/lf.hpp"

namespace qagen::lf {
namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool looks_like_kb_path(std::string_view s) {
  std::size_t segments = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ident_start(s[i])) return false;
    while (i < s.size() && is_ident_char(s[i])) ++i;
    ++segments;
    if (i == s.size()) break;
    if (s[i] != '.') return false;
    ++i;
    if (i == s.size()) return false;
  }
  return segments >= 2;
}

enum class LiteralSite { Argument, Value, Operand };

bool needs_quotes(std::string_view text, LiteralSite site) {
  if (text.empty() || text == "x") return true;
  if (std::isspace(static_cast<unsigned char>(text.front())) ||
      std::isspace(static_cast<unsigned char>(text.back())))
    return true;
  for (char c : text) {
    switch (c) {
      case '(': case ')': case '[': case ']': case '{': case '}':
      case '|': case '"': case '\\': case '\n': case '\r': case '\t':
        return true;
      case ',':
        if (site != LiteralSite::Argument) return true;
        break;
      default:
        break;
    }
  }
  if (site == LiteralSite::Operand) {
    if (text == "*" || looks_like_kb_path(text)) return true;
    char f = text.front();
    if (f == '=' || f == '<' || f == '>') return true;
  }
  return false;
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string literal_text(const Literal &lit, LiteralSite site) {
  return needs_quotes(lit.text, site) ? quote(lit.text) : lit.text;
}

std::string operand_text(const Operand &operand) {
  if (const auto *kb = std::get_if<KbRef>(&operand)) return kb->path;
  return literal_text(std::get<Literal>(operand), LiteralSite::Operand);
}

std::string binding_text(const Binding &binding) {
  if (std::holds_alternative<AnswerVar>(binding)) return "x";
  return literal_text(std::get<Literal>(binding), LiteralSite::Value);
}

std::string operator_text(const Operator &op) {
  struct Visitor {
    std::string operator()(const Sort &s) const {
      return s.direction == SortDirection::Ascending ? "sort(asc)" : "sort(desc)";
    }
    std::string operator()(const Range &r) const {
      return "range(" + (r.low ? operand_text(*r.low) : std::string("*")) + ", " +
             (r.high ? operand_text(*r.high) : std::string("*")) + ")";
    }
    std::string operator()(const NullCheck &n) const { return n.expect_null ? "isnull" : "notnull"; }
    std::string operator()(const Compare &c) const {
      return comparison_symbol(c.comparison) + operand_text(c.operand);
    }
  };
  return std::visit(Visitor{}, op);
}

void serialize_event(const EventNode &event, std::string &out) {
  out += event.event_name;
  out += " (";
  std::visit(
      [&](const auto &arg) {
        using T = std::decay_t<decltype(arg)>;
        if constexpr (std::is_same_v<T, Placeholder>)
          out += "|" + arg.entity_type + "|";
        else if constexpr (std::is_same_v<T, AnswerVar>)
          out += "x";
        else
          out += literal_text(arg, LiteralSite::Argument);
      },
      event.argument);
  out += ")";
  if (event.attributes.empty()) return;
  out += " [";
  for (std::size_t i = 0; i < event.attributes.size(); ++i) {
    const AttributeSlot &slot = event.attributes[i];
    if (i > 0) out += ", ";
    if (slot.op) {
      out += "(" + slot.name + "=" + binding_text(slot.binding) + ")" + operator_text(*slot.op);
    } else {
      out += slot.name + "=" + binding_text(slot.binding);
    }
  }
  out += "]";
}

void serialize_node(const Node &node, std::string &out, bool nested) {
  if (node.is_event()) {
    serialize_event(node.event(), out);
    return;
  }
  const Composite &c = node.composite();
  if (nested) out += "{";
  serialize_node(c.left, out, true);
  switch (c.connective.kind) {
    case ConnectiveKind::Or: out += " OR "; break;
    case ConnectiveKind::And: out += " AND "; break;
    case ConnectiveKind::Relation: out += " " + c.connective.relation + " "; break;
  }
  serialize_node(c.right, out, true);
  if (nested) out += "}";
}

template <typename EventPtr, typename NodeT>
void collect_events(NodeT &node, std::vector<EventPtr> &out) {
  if (node.is_event()) {
    out.push_back(&node.event());
    return;
  }
  collect_events<EventPtr>(node.composite().left, out);
  collect_events<EventPtr>(node.composite().right, out);
}

void count_relations(const Node &node, std::size_t &count) {
  if (node.is_event()) return;
  const Composite &c = node.composite();
  if (c.connective.kind == ConnectiveKind::Relation) ++count;
  count_relations(c.left, count);
  count_relations(c.right, count);
}

bool operand_is_kb(const Operand &o) { return std::holds_alternative<KbRef>(o); }

}  // namespace

std::string comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::Less: return "<";
    case Comparison::Greater: return ">";
    case Comparison::LessEqual: return "<=";
    case Comparison::GreaterEqual: return ">=";
    case Comparison::Equal: return "=";
  }
  return "=";
}

std::string serialize_lf(const LogicalForm &lf) {
  std::string out;
  serialize_node(lf.root, out, false);
  return out;
}

bool lf_equal(const LogicalForm &a, const LogicalForm &b) { return serialize_lf(a) == serialize_lf(b); }

std::vector<const EventNode *> leaf_events(const Node &node) {
  std::vector<const EventNode *> out;
  collect_events<const EventNode *>(node, out);
  return out;
}

std::vector<const EventNode *> leaf_events(const LogicalForm &lf) { return leaf_events(lf.root); }

std::vector<EventNode *> leaf_events_mut(LogicalForm &lf) {
  std::vector<EventNode *> out;
  collect_events<EventNode *>(lf.root, out);
  return out;
}

std::vector<std::string> placeholder_types(const LogicalForm &lf) {
  std::vector<std::string> out;
  for (const EventNode *e : leaf_events(lf))
    if (const auto *p = std::get_if<Placeholder>(&e->argument)) out.push_back(p->entity_type);
  return out;
}

bool has_answer_var(const LogicalForm &lf) {
  LfProperties p = classify_lf(lf);
  return p.fine_grained_answer || p.coarse_grained_answer;
}

LfProperties classify_lf(const LogicalForm &lf) {
  LfProperties props;
  for (const EventNode *event : leaf_events(lf)) {
    if (std::holds_alternative<AnswerVar>(event->argument)) props.coarse_grained_answer = true;
    for (const AttributeSlot &slot : event->attributes) {
      if (std::holds_alternative<AnswerVar>(slot.binding)) props.fine_grained_answer = true;
      if (!slot.op) continue;
      props.has_operator = true;
      if (const auto *c = std::get_if<Compare>(&*slot.op)) {
        if (operand_is_kb(c->operand)) props.needs_kb = true;
      } else if (const auto *r = std::get_if<Range>(&*slot.op)) {
        if ((r->low && operand_is_kb(*r->low)) || (r->high && operand_is_kb(*r->high)))
          props.needs_kb = true;
      }
    }
  }
  count_relations(lf.root, props.relation_count);
  return props;
}

}  // namespace qagen::lf
