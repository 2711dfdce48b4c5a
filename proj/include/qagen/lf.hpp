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

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qagen/error.hpp"

// Logical forms over medical events.
//
// Surface syntax, by example:
//
//   MedicationEvent (|medication|) [dosage=x]
//   MedicationEvent (|medication|) given {ConditionEvent (x) OR SymptomEvent (x)}
//   LabEvent (x) [date=x, (result=x)>lab.refhigh]
//   LabEvent (|test|) [(date=x)sort(desc), (result=x)range(4.0, *), (enddate=x)isnull]
//
// An event takes one argument in parentheses: a |placeholder|, the answer
// variable x, or a literal. Attributes follow in square brackets. An attribute
// constrained by an operator is written "(name=binding)" followed by the
// operator. Events combine with OR / AND, which bind tighter than named
// relations (given, conducted/reveals, ...). Both associate to the left and
// curly braces group. Literals that would be ambiguous are double-quoted.
namespace qagen::lf {

// Heap box with value semantics, used to make the AST recursive.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box &other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box &&) noexcept = default;
  Box &operator=(const Box &other) {
    ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box &operator=(Box &&) noexcept = default;

  T &operator*() { return *ptr_; }
  const T &operator*() const { return *ptr_; }
  T *operator->() { return ptr_.get(); }
  const T *operator->() const { return ptr_.get(); }

  friend bool operator==(const Box &a, const Box &b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

// The answer variable "x".
struct AnswerVar {
  bool operator==(const AnswerVar &) const = default;
};

struct Placeholder {
  std::string entity_type;
  bool operator==(const Placeholder &) const = default;
};

struct Literal {
  std::string text;
  bool operator==(const Literal &) const = default;
};

// Reference into an external knowledge base, e.g. lab.refhigh.
struct KbRef {
  std::string path;
  bool operator==(const KbRef &) const = default;
};

using EventArg = std::variant<Placeholder, AnswerVar, Literal>;
using Binding = std::variant<AnswerVar, Literal>;
using Operand = std::variant<Literal, KbRef>;

enum class SortDirection { Ascending, Descending };
enum class Comparison { Less, Greater, LessEqual, GreaterEqual, Equal };

struct Sort {
  SortDirection direction = SortDirection::Descending;
  bool operator==(const Sort &) const = default;
};

// Closed interval; a missing bound is unbounded. At least one bound is set.
struct Range {
  std::optional<Operand> low;
  std::optional<Operand> high;
  bool operator==(const Range &) const = default;
};

// Keeps values that are absent (expect_null) or present (!expect_null).
struct NullCheck {
  bool expect_null = true;
  bool operator==(const NullCheck &) const = default;
};

struct Compare {
  Comparison comparison = Comparison::Equal;
  Operand operand;
  bool operator==(const Compare &) const = default;
};

using Operator = std::variant<Sort, Range, NullCheck, Compare>;

struct AttributeSlot {
  std::string name;
  Binding binding;
  std::optional<Operator> op;
  bool operator==(const AttributeSlot &) const = default;
};

struct EventNode {
  std::string event_name;
  EventArg argument;
  std::vector<AttributeSlot> attributes;
  bool operator==(const EventNode &) const = default;
};

enum class ConnectiveKind { Or, And, Relation };

struct Connective {
  ConnectiveKind kind = ConnectiveKind::Or;
  std::string relation;  // set only for ConnectiveKind::Relation
  bool operator==(const Connective &) const = default;

  static Connective Or() { return {ConnectiveKind::Or, {}}; }
  static Connective And() { return {ConnectiveKind::And, {}}; }
  static Connective Rel(std::string name) { return {ConnectiveKind::Relation, std::move(name)}; }
};

struct Composite;

struct Node {
  std::variant<EventNode, Box<Composite>> value;

  Node(EventNode event) : value(std::move(event)) {}
  Node(Composite composite);

  bool is_event() const { return std::holds_alternative<EventNode>(value); }
  const EventNode &event() const { return std::get<EventNode>(value); }
  EventNode &event() { return std::get<EventNode>(value); }
  const Composite &composite() const { return *std::get<Box<Composite>>(value); }
  Composite &composite() { return *std::get<Box<Composite>>(value); }

  bool operator==(const Node &) const = default;
};

struct Composite {
  Node left;
  Connective connective;
  Node right;
  bool operator==(const Composite &) const = default;
};

inline Node::Node(Composite composite) : value(Box<Composite>(std::move(composite))) {}

struct LogicalForm {
  Node root;
  bool operator==(const LogicalForm &) const = default;
};

enum class ParseErrorKind { Syntax, Unbalanced };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, std::vector<std::string> expected,
             const std::string &message);

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  const std::vector<std::string> &expected() const { return expected_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

LogicalForm parse_lf(std::string_view text);
std::string serialize_lf(const LogicalForm &lf);

// Literal equality of canonical serializations; OR/AND operands are ordered.
bool lf_equal(const LogicalForm &a, const LogicalForm &b);

struct LfProperties {
  bool fine_grained_answer = false;   // an attribute binds x
  bool coarse_grained_answer = false; // an event argument is x
  bool has_operator = false;
  bool needs_kb = false;
  std::size_t relation_count = 0;
  bool operator==(const LfProperties &) const = default;
};

LfProperties classify_lf(const LogicalForm &lf);

// Traversal helpers.
std::vector<const EventNode *> leaf_events(const Node &node);
std::vector<const EventNode *> leaf_events(const LogicalForm &lf);
std::vector<EventNode *> leaf_events_mut(LogicalForm &lf);
// Entity types of |placeholder| arguments in left-to-right order.
std::vector<std::string> placeholder_types(const LogicalForm &lf);
bool has_answer_var(const LogicalForm &lf);

std::string comparison_symbol(Comparison c);

}  // namespace qagen::lf
