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
#include <charconv>

#include "json.hpp"
#include "qagen/corpus.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

using nlohmann::json;

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = line.find("||", start);
    out.push_back({line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start),
                   start + 1});
    if (bar == std::string_view::npos) break;
    start = bar + 2;
  }
  return out;
}

// Parses `key="value"` and returns the value and the remainder after the
// closing quote.
std::pair<std::string, std::string_view> quoted_value(const Field &f, std::size_t key_len) {
  std::string_view rest = f.text.substr(key_len);
  if (rest.empty() || rest.front() != '"')
    throw AnnotationFormatError(f.column + key_len, "expected '\"'");
  std::size_t close = rest.find('"', 1);
  if (close == std::string_view::npos)
    throw AnnotationFormatError(f.column + key_len, "unterminated quoted value");
  return {std::string(rest.substr(1, close - 1)), rest.substr(close + 1)};
}

int parse_int(std::string_view s, std::size_t column) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0)
    throw AnnotationFormatError(column, "expected a non-negative integer, got '" + std::string(s) + "'");
  return value;
}

// " L:T L:T" -> SpanRef, single-line spans only.
SpanRef parse_span(std::string_view text, std::size_t column) {
  std::vector<Token> parts = whitespace_tokens(text);
  if (parts.size() != 2) throw AnnotationFormatError(column, "expected 'line:token line:token'");
  auto point = [&](const Token &t) {
    auto colon = t.text.find(':');
    if (colon == std::string::npos) throw AnnotationFormatError(column + t.begin, "expected 'line:token'");
    return std::pair{parse_int(std::string_view(t.text).substr(0, colon), column + t.begin),
                     parse_int(std::string_view(t.text).substr(colon + 1), column + t.begin + colon + 1)};
  };
  auto [l1, t1] = point(parts[0]);
  auto [l2, t2] = point(parts[1]);
  if (l1 != l2) throw AnnotationFormatError(column + parts[1].begin, "span must stay on one line");
  if (l1 < 1) throw AnnotationFormatError(column + parts[0].begin, "line numbers start at 1");
  if (t2 < t1) throw AnnotationFormatError(column + parts[1].begin, "span end precedes start");
  return {l1, t1, t2};
}

ConceptRef parse_concept_field(const Field &f) {
  auto [surface, rest] = quoted_value(f, 2);
  std::size_t rest_column = f.column + (f.text.size() - rest.size());
  return {surface, parse_span(rest, rest_column)};
}

RawAnnotation parse_pipe_line(std::string_view line) {
  std::vector<ConceptRef> concepts;
  std::optional<std::string> type, relation, assertion, time;
  std::optional<RawAttribute> attribute;
  std::size_t relation_position = 0;

  for (const Field &f : split_fields(line)) {
    std::string_view t = f.text;
    if (t.starts_with("c=")) {
      concepts.push_back(parse_concept_field(f));
    } else if (t.starts_with("t=")) {
      type = quoted_value(f, 2).first;
    } else if (t.starts_with("r=")) {
      relation = quoted_value(f, 2).first;
      relation_position = concepts.size();
    } else if (t.starts_with("assert=")) {
      assertion = quoted_value(f, 7).first;
    } else if (t.starts_with("time=")) {
      time = quoted_value(f, 5).first;
    } else if (t.starts_with("a=")) {
      auto [name, rest] = quoted_value(f, 2);
      if (!rest.starts_with("="))
        throw AnnotationFormatError(f.column + (t.size() - rest.size()), "expected '=\"value\"'");
      Field value_field{rest, f.column + (t.size() - rest.size())};
      auto [value, tail] = quoted_value(value_field, 1);
      RawAttribute attr;
      attr.name = name;
      attr.value = value;
      if (!trim(tail).empty()) attr.location = parse_span(tail, f.column + (t.size() - tail.size()));
      attribute = std::move(attr);
    } else {
      throw AnnotationFormatError(f.column, "unknown field '" + std::string(t.substr(0, t.find('='))) + "'");
    }
  }

  if (concepts.empty()) throw AnnotationFormatError(1, "no concept field");
  if (relation) {
    if (concepts.size() != 2 || relation_position != 1)
      throw AnnotationFormatError(1, "relation lines need c=... ||r=... ||c=...");
    return RawRelation{concepts[0], *relation, concepts[1]};
  }
  if (attribute) {
    if (concepts.size() != 1) throw AnnotationFormatError(1, "attribute lines take one concept");
    attribute->owner = concepts[0];
    attribute->owner_type = type;
    return *attribute;
  }
  if (concepts.size() >= 2) {
    std::optional<std::string> chain_type;
    if (type) {
      std::string ty = *type;
      if (ty.starts_with("coref ")) ty = ty.substr(6);
      chain_type = ty;
    }
    return RawChain{std::move(concepts), chain_type};
  }
  if (!type) throw AnnotationFormatError(line.size() + 1, "concept line needs t=\"type\"");
  return RawConcept{concepts[0], *type, assertion, time};
}

ConceptRef json_ref(const json &j) {
  return {j.at("text").get<std::string>(),
          {j.at("line").get<int>(), j.at("start").get<int>(), j.at("end").get<int>()}};
}

RawAnnotation parse_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error &e) {
    throw AnnotationFormatError(e.byte, "invalid JSON annotation");
  }
  try {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "concept") {
      RawConcept c{json_ref(j), j.at("type").get<std::string>(), std::nullopt, std::nullopt};
      if (j.contains("assertion")) c.assertion = j["assertion"].get<std::string>();
      if (j.contains("time")) c.time = j["time"].get<std::string>();
      return c;
    }
    if (kind == "attribute") {
      RawAttribute a;
      a.owner = json_ref(j.at("concept"));
      if (j.contains("type")) a.owner_type = j["type"].get<std::string>();
      a.name = j.at("name").get<std::string>();
      a.value = j.at("value").get<std::string>();
      if (j.contains("location")) {
        const json &l = j["location"];
        a.location = SpanRef{l.at("line").get<int>(), l.at("start").get<int>(), l.at("end").get<int>()};
      }
      return a;
    }
    if (kind == "relation")
      return RawRelation{json_ref(j.at("head")), j.at("relation").get<std::string>(), json_ref(j.at("tail"))};
    if (kind == "chain") {
      RawChain chain;
      for (const json &m : j.at("members")) chain.members.push_back(json_ref(m));
      if (j.contains("type")) chain.type = j["type"].get<std::string>();
      if (chain.members.size() < 2) throw AnnotationFormatError(1, "chains need at least two members");
      return chain;
    }
    throw AnnotationFormatError(1, "unknown annotation kind '" + kind + "'");
  } catch (const json::exception &e) {
    throw AnnotationFormatError(1, std::string("bad JSON annotation: ") + e.what());
  }
}

}  // namespace

RawAnnotation parse_annotation_line(std::string_view line) {
  std::string_view t = line;
  while (!t.empty() && (t.back() == '\r' || t.back() == '\n')) t.remove_suffix(1);
  std::size_t lead = 0;
  while (lead < t.size() && std::isspace(static_cast<unsigned char>(t[lead]))) ++lead;
  if (lead < t.size() && t[lead] == '{') return parse_json_line(t.substr(lead));
  return parse_pipe_line(t);
}

}  // namespace qagen
