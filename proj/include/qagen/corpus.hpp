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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qagen/dates.hpp"
#include "qagen/error.hpp"

namespace qagen {

struct Document {
  std::string id;
  std::string patient_id;
  std::string source;  // provenance tag, e.g. "medications"
  std::optional<Date> record_date;
  std::vector<std::string> lines;  // line n lives at lines[n - 1]

  std::size_t line_count() const { return lines.size(); }
  const std::string &line(int n) const { return lines.at(static_cast<std::size_t>(n - 1)); }
  bool has_line(int n) const { return n >= 1 && static_cast<std::size_t>(n) <= lines.size(); }
  // Lines joined by '\n'.
  std::string text() const;
  // Byte offset of the first character of line n within text().
  std::size_t line_offset(int n) const;
};

// Location of a whitespace-token span on one line; tokens are 0-based and
// the end token is inclusive.
struct SpanRef {
  int line = 0;
  int start_token = 0;
  int end_token = 0;

  auto operator<=>(const SpanRef &) const = default;
};

struct ConceptAnn {
  std::string id;
  std::string doc_id;
  SpanRef span;
  std::string surface;
  std::string entity_type;
  std::optional<std::string> assertion;
  std::optional<std::string> time;
};

struct RelationAnn {
  std::string id;
  std::string doc_id;
  std::string relation_type;
  std::string head;  // ann id
  std::string tail;  // ann id
};

struct AttributeAnn {
  std::string id;
  std::string doc_id;
  std::string owner;  // ann id
  std::string name;
  std::string value;
  std::optional<SpanRef> location;  // where the value is written, if annotated
};

struct CorefChain {
  std::string id;
  std::string doc_id;
  std::vector<std::string> members;  // ann ids
};

struct ClassAnn {
  std::string target;  // document or patient id
  bool target_is_patient = false;
  std::string task;
  std::vector<std::string> labels;  // sorted, unique
};

struct IntegrityViolation {
  std::string file;
  int line = 0;
  std::string message;
};

// Parsed but unresolved annotation lines.
struct ConceptRef {
  std::string surface;
  SpanRef span;
};

struct RawConcept {
  ConceptRef ref;
  std::string entity_type;
  std::optional<std::string> assertion;
  std::optional<std::string> time;
};

struct RawRelation {
  ConceptRef head;
  std::string relation_type;
  ConceptRef tail;
};

struct RawAttribute {
  ConceptRef owner;
  std::optional<std::string> owner_type;
  std::string name;
  std::string value;
  std::optional<SpanRef> location;
};

struct RawChain {
  std::vector<ConceptRef> members;
  std::optional<std::string> type;
};

using RawAnnotation = std::variant<RawConcept, RawRelation, RawAttribute, RawChain>;

class AnnotationFormatError : public Error {
 public:
  AnnotationFormatError(std::size_t column, const std::string &message)
      : Error("column " + std::to_string(column) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Parses one annotation line in either the pipe-delimited format
//
//   c="insulin" 5:7 5:7||t="medication"
//   c="insulin" 5:7 5:7||t="medication"||a="dosage"="40mg" 5:8 5:8
//   c="ffp" 9:8 9:8||r="TrAP"||c="anticoagulation" 9:3 9:3
//   c="cabg" 3:2 3:2||c="the procedure" 4:3 4:4||t="coref treatment"
//
// or as a JSON object (one per line) with a "kind" of ann, attribute,
// relation or chain. Columns in errors are 1-based.
RawAnnotation parse_annotation_line(std::string_view line);

class AnnotationCorpus {
 public:
  std::vector<Document> documents;
  std::vector<ConceptAnn> concepts;
  std::vector<RelationAnn> relations;
  std::vector<AttributeAnn> attributes;
  std::vector<CorefChain> chains;
  std::vector<ClassAnn> classes;
  std::vector<IntegrityViolation> violations;

  // Rebuilds lookup tables; call after mutating the vectors.
  void reindex();

  const Document *find_document(std::string_view id) const;
  const ConceptAnn *find_concept(std::string_view id) const;
  const CorefChain *chain_of(std::string_view concept_id) const;
  std::vector<const AttributeAnn *> attributes_of(std::string_view concept_id) const;
  std::vector<const RelationAnn *> relations_of(std::string_view concept_id) const;
  std::vector<const ConceptAnn *> concepts_in(std::string_view doc_id) const;
  std::vector<const Document *> documents_of(std::string_view patient_id) const;
  // Patient ids in sorted order.
  std::vector<std::string> patients() const;
  // Provenance tag of an annotation is the tag of its document.
  std::string source_of(std::string_view doc_id) const;

 private:
  std::map<std::string, std::size_t, std::less<>> doc_index_;
  std::map<std::string, std::size_t, std::less<>> concept_index_;
  std::map<std::string, std::size_t, std::less<>> chain_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> attributes_by_owner_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> relations_by_concept_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> concepts_by_doc_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> docs_by_patient_;
};

struct CorpusOptions {
  DateConfig dates;
};

// Layout:
//   docs/<doc_id>.txt         note text, optional first line "Record Date: <date>"
//   ann/<doc_id>.con|.rel|.att|.chains
//   classes.tsv               doc_or_patient_id \t task \t label[,label...]
//   patients.tsv              patient_id \t doc_id [\t source]
// A missing directory or file is an empty layer. Integrity problems are
// collected in AnnotationCorpus::violations; unreadable files throw.
AnnotationCorpus load_corpus(const std::filesystem::path &root, const CorpusOptions &options = {});

// Every member of the ann's coreference chain (including itself), or
// just the ann when it is in no chain.
std::vector<const ConceptAnn *> resolve_coref(const AnnotationCorpus &corpus, const ConceptAnn &ann);

// Joined tokens [start_token, end_token] of the line, or nullopt when out of range.
std::optional<std::string> span_text(const Document &doc, const SpanRef &span);
// Byte range of a span within the document text.
std::pair<std::size_t, std::size_t> span_char_range(const Document &doc, const SpanRef &span);

struct SynthParams {
  int patients = 12;
  int notes_per_patient = 3;
  int medication_lines = 3;  // per note
  int lab_lines = 2;         // per note
  int relation_lines = 2;    // per note; 0 disables every relation annotation
  int procedure_episodes = 1;  // per note; procedure + coreferent outcome
  bool with_classes = true;
};

struct SynthSummary {
  std::size_t documents = 0;
  std::size_t concepts = 0;
  std::size_t relations = 0;
  std::size_t attributes = 0;
  std::size_t chains = 0;
  std::size_t classes = 0;
};

// Writes a deterministic synthetic corpus in the layout above. The output
// depends only on seed and params.
SynthSummary synth_corpus(std::uint64_t seed, const SynthParams &params, const std::filesystem::path &root);

}  // namespace qagen
