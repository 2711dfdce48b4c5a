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
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qagen/corpus.hpp"
#include "qagen/lf.hpp"
#include "qagen/schema.hpp"
#include "qagen/templates.hpp"

namespace qagen {

// A full annotation line used as answer evidence. Line 0 stands for the
// whole document (class questions); its line_text is the document text.
struct EvidenceSpan {
  std::string doc_id;
  int line = 0;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string line_text;
  std::optional<std::string> answer_entity;

  bool operator==(const EvidenceSpan &) const = default;
};

EvidenceSpan line_evidence(const Document &doc, int line, std::optional<std::string> answer_entity = std::nullopt);
EvidenceSpan document_evidence(const Document &doc);

enum class Strategy { Attribute, Relation, RelationPair, EventList, Operator, Class, Unsupported };

std::string strategy_name(Strategy s);

struct QARecord {
  std::string record_id;
  std::string patient_id;
  std::string question;
  lf::LogicalForm lf{lf::EventNode{}};
  std::string lf_template_id;
  std::string question_template_id;
  std::vector<EvidenceSpan> evidences;
  std::vector<std::string> answer_class;  // empty unless a class question
  std::vector<SlotFill> slot_fills;
  Strategy strategy = Strategy::Unsupported;  // not serialized

  bool has_answer() const { return !evidences.empty() || !answer_class.empty(); }
};

struct RefRange {
  double reflow = 0;
  double refhigh = 0;
  std::string unit;
};

// Reference ranges keyed by lowercased lab name.
class RefRangeKb {
 public:
  void add(std::string_view lab, RefRange range);
  const RefRange *find(std::string_view lab) const;
  // Resolves "lab.reflow" / "lab.refhigh" for the given lab.
  std::optional<double> resolve(std::string_view path, std::string_view lab) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, RefRange> &entries() const { return entries_; }

 private:
  std::map<std::string, RefRange> entries_;
};

// Lines of "lab \t reflow \t refhigh [\t unit]"; '#' starts a comment.
RefRangeKb parse_kb(std::string_view text, const std::string &source = "<kb>");
RefRangeKb load_kb(const std::filesystem::path &path);

// Strips leading articles/possessives and trailing punctuation, collapses
// whitespace. nullopt when nothing is left.
std::optional<std::string> preprocess_entity(std::string_view surface);

// The part of `line` matching `text` case-insensitively, if any.
std::optional<std::string> locate_in_line(std::string_view line, std::string_view text);

// A value read off an annotation: from an attribute annotation or, for
// result/date, from the ann's line.
struct FieldValue {
  std::string text;
  int line = 0;
  std::optional<double> number;
  std::optional<Date> date;
};

std::optional<FieldValue> resolve_field(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                        std::string_view field, const DateConfig &dates = {});

std::vector<EvidenceSpan> answers_by_attribute(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                               std::string_view attribute, const DateConfig &dates = {});

// related_types: entity types accepted at the far end; empty accepts all.
std::vector<EvidenceSpan> answers_by_relation(const AnnotationCorpus &corpus, const ConceptAnn &ann,
                                              const std::set<std::string> &relation_types,
                                              const std::set<std::string> &related_types = {});

struct ClassAnswer {
  std::vector<std::string> labels;
  std::vector<EvidenceSpan> evidences;
};

// target is a document id or a patient id; nullopt when unannotated.
std::optional<ClassAnswer> answers_by_class(const AnnotationCorpus &corpus, std::string_view target,
                                            std::string_view task);

struct Candidate {
  EvidenceSpan evidence;
  std::string lab_name;
  std::optional<double> value;
  std::optional<Date> date;         // from the event itself
  std::optional<Date> record_date;  // fallback for temporal filters
  std::optional<std::string> field_text;
};

struct OperatorResult {
  std::vector<Candidate> kept;
  std::size_t unparseable = 0;  // candidates lacking the value the operator needs
  std::size_t missing_kb = 0;   // candidates whose lab has no KB entry
};

// field is the attribute the operator constrains (result, date, ...).
OperatorResult eval_operator(const lf::Operator &op, std::string_view field, std::vector<Candidate> candidates,
                             const RefRangeKb &kb, const DateConfig &dates = {});

struct GeneratorConfig {
  DateConfig dates;
  unsigned jobs = 1;
  std::size_t sample_size = 500;
  std::uint64_t seed = 42;
};

struct SourceCounts {
  std::size_t qa = 0;     // records with an answer
  std::size_t ql = 0;     // question/logical form instances, answered or not
  std::size_t notes = 0;  // documents
};

struct StrategyCounts {
  std::size_t records = 0;
  std::size_t answered = 0;
};

struct GenerationReport {
  std::map<std::string, SourceCounts> per_source;
  std::map<std::string, StrategyCounts> per_strategy;
  std::map<std::string, std::size_t> skipped;  // reason -> count
  std::size_t rejected_entities = 0;
  std::size_t excluded_candidates = 0;

  SourceCounts total() const;
  // Table with columns source, #QA, #QL, #notes.
  std::string table() const;
};

struct Dataset {
  std::vector<QARecord> records;
  GenerationReport report;
};

Dataset generate_dataset(const AnnotationCorpus &corpus, const TemplateStore &templates, const Schema &schema,
                         const RefRangeKb &kb, const GeneratorConfig &config = {});

// Distinct (question, serialized LF) pairs, sorted.
std::vector<std::pair<std::string, std::string>> ql_view(const std::vector<QARecord> &records);

// Seeded sample of questions for manual review, in record order.
std::vector<const QARecord *> sample_records(const std::vector<QARecord> &records, std::size_t n, std::uint64_t seed);

// JSON lines.
std::string record_to_json(const QARecord &record);
QARecord record_from_json(std::string_view line);
void write_records(std::ostream &out, const std::vector<QARecord> &records);
std::vector<QARecord> read_records(std::istream &in, const std::string &source = "<records>");
std::vector<QARecord> load_records(const std::filesystem::path &path);
void save_records(const std::filesystem::path &path, const std::vector<QARecord> &records);

}  // namespace qagen
