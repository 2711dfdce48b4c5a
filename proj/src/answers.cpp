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

#include <cstdlib>
#include <set>
#include <tuple>

#include "qagen/generator.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

std::optional<double> parse_number(std::string_view s) {
  std::string t(s);
  if (t.empty()) return std::nullopt;
  char *end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

std::string strip_trailing(std::string_view token) {
  std::string t(token);
  while (!t.empty() && (t.back() == ',' || t.back() == ';' || t.back() == ':' || t.back() == ')')) t.pop_back();
  return t;
}

bool is_date_field(std::string_view field) {
  return field.size() >= 4 && field.substr(field.size() - 4) == "date";
}

class EvidenceSet {
 public:
  void add(EvidenceSpan e) {
    auto key = std::make_tuple(e.doc_id, e.line, e.answer_entity.value_or(""));
    if (seen_.insert(key).second) spans_.push_back(std::move(e));
  }
  std::vector<EvidenceSpan> take() { return std::move(spans_); }

 private:
  std::set<std::tuple<std::string, int, std::string>> seen_;
  std::vector<EvidenceSpan> spans_;
};

}  // namespace

EvidenceSpan line_evidence(const Document &doc, int line, std::optional<std::string> answer_entity) {
  EvidenceSpan e;
  e.doc_id = doc.id;
  e.line = line;
  e.line_text = doc.line(line);
  e.char_start = doc.line_offset(line);
  e.char_end = e.char_start + e.line_text.size();
  e.answer_entity = std::move(answer_entity);
  return e;
}

EvidenceSpan document_evidence(const Document &doc) {
  EvidenceSpan e;
  e.doc_id = doc.id;
  e.line = 0;
  e.line_text = doc.text();
  e.char_start = 0;
  e.char_end = e.line_text.size();
  return e;
}

std::optional<FieldValue> resolve_field(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                        std::string_view field, const DateConfig &dates) {
  const Document *doc = corpus.find_document(ann.doc_id);
  if (!doc) return std::nullopt;
  for (const AttributeAnn *a : corpus.attributes_of(ann.id)) {
    if (!iequals(a->name, field)) continue;
    FieldValue v;
    v.line = a->location ? a->location->line : ann.span.line;
    v.text = a->value;
    if (a->location) {
      if (auto t = span_text(*doc, *a->location)) v.text = *t;
    }
    v.number = parse_number(strip_trailing(a->value));
    v.date = parse_date(a->value, dates);
    return v;
  }
  const std::string &line = doc->line(ann.span.line);
  std::vector<Token> tokens = whitespace_tokens(line);
  if (field == "result") {
    for (std::size_t i = static_cast<std::size_t>(ann.span.end_token) + 1; i < tokens.size(); ++i) {
      std::string t = strip_trailing(tokens[i].text);
      if (auto n = parse_number(t)) return FieldValue{t, ann.span.line, n, std::nullopt};
    }
    return std::nullopt;
  }
  if (is_date_field(field)) {
    if (field == "date" && ann.time) {
      if (auto d = parse_date(*ann.time, dates)) return FieldValue{*ann.time, ann.span.line, std::nullopt, d};
    }
    if (field != "date") return std::nullopt;
    for (const Token &tok : tokens) {
      std::string t = strip_trailing(tok.text);
      if (auto d = parse_date(t, dates)) return FieldValue{t, ann.span.line, std::nullopt, d};
    }
  }
  return std::nullopt;
}

std::vector<EvidenceSpan> answers_by_attribute(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                               std::string_view attribute, const DateConfig &dates) {
  EvidenceSet out;
  std::vector<const ConceptAnn *> mentions = resolve_coref(corpus, ann);
  bool annotated = false;
  for (const ConceptAnn *m : mentions) {
    const Document *doc = corpus.find_document(m->doc_id);
    if (!doc) continue;
    for (const AttributeAnn *a : corpus.attributes_of(m->id)) {
      if (!iequals(a->name, attribute)) continue;
      annotated = true;
      int line = a->location ? a->location->line : m->span.line;
      if (!doc->has_line(line)) continue;
      std::string value = a->value;
      if (a->location) {
        if (auto t = span_text(*doc, *a->location)) value = *t;
      }
      out.add(line_evidence(*doc, line, locate_in_line(doc->line(line), value)));
    }
  }
  if (!annotated && (attribute == "result" || attribute == "date")) {
    for (const ConceptAnn *m : mentions) {
      const Document *doc = corpus.find_document(m->doc_id);
      if (!doc) continue;
      if (auto v = resolve_field(corpus, *m, attribute, dates)) {
        if (!doc->has_line(v->line)) continue;
        out.add(line_evidence(*doc, v->line, locate_in_line(doc->line(v->line), v->text)));
      }
    }
  }
  return out.take();
}

std::vector<EvidenceSpan> answers_by_relation(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                              const std::set<std::string> &relation_types,
                                              const std::set<std::string> &related_types) {
  EvidenceSet out;
  std::vector<const ConceptAnn *> mentions = resolve_coref(corpus, ann);
  std::set<std::string> mention_ids;
  for (const ConceptAnn *m : mentions) mention_ids.insert(m->id);
  for (const ConceptAnn *m : mentions) {
    for (const RelationAnn *r : corpus.relations_of(m->id)) {
      if (!relation_types.count(r->relation_type)) continue;
      const std::string &other_id = r->head == m->id ? r->tail : r->head;
      if (mention_ids.count(other_id)) continue;
      const ConceptAnn *other = corpus.find_concept(other_id);
      if (!other) continue;
      if (!related_types.empty() && !related_types.count(other->entity_type)) continue;
      const Document *doc = corpus.find_document(other->doc_id);
      if (!doc || !doc->has_line(other->span.line)) continue;
      out.add(line_evidence(*doc, other->span.line, span_text(*doc, other->span)));
    }
  }
  return out.take();
}

std::optional<ClassAnswer> answers_by_class(const AnnotationCorpus &corpus, std::string_view target,
                                            std::string_view task) {
  for (const ClassAnn &c : corpus.classes) {
    if (c.target != target || c.task != task) continue;
    ClassAnswer answer;
    answer.labels = c.labels;
    if (c.target_is_patient) {
      for (const Document *d : corpus.documents_of(target)) answer.evidences.push_back(document_evidence(*d));
    } else if (const Document *d = corpus.find_document(target)) {
      answer.evidences.push_back(document_evidence(*d));
    }
    return answer;
  }
  return std::nullopt;
}

}  // namespace qagen
