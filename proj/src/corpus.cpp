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
#include <fstream>
#include <set>
#include <sstream>

#include "qagen/corpus.hpp"
#include "qagen/text.hpp"

namespace qagen {

namespace fs = std::filesystem;

std::string Document::text() const { return join(lines, "\n"); }

std::size_t Document::line_offset(int n) const {
  std::size_t offset = 0;
  for (int i = 1; i < n && static_cast<std::size_t>(i) <= lines.size(); ++i) offset += lines[i - 1].size() + 1;
  return offset;
}

std::optional<std::string> span_text(const Document &doc, const SpanRef &span) {
  if (!doc.has_line(span.line)) return std::nullopt;
  std::vector<Token> tokens = whitespace_tokens(doc.line(span.line));
  if (span.start_token < 0 || span.end_token < span.start_token ||
      static_cast<std::size_t>(span.end_token) >= tokens.size())
    return std::nullopt;
  std::vector<std::string> parts;
  for (int i = span.start_token; i <= span.end_token; ++i) parts.push_back(tokens[i].text);
  return join(parts, " ");
}

std::pair<std::size_t, std::size_t> span_char_range(const Document &doc, const SpanRef &span) {
  std::vector<Token> tokens = whitespace_tokens(doc.line(span.line));
  std::size_t base = doc.line_offset(span.line);
  return {base + tokens.at(span.start_token).begin, base + tokens.at(span.end_token).end};
}

void AnnotationCorpus::reindex() {
  doc_index_.clear();
  concept_index_.clear();
  chain_index_.clear();
  attributes_by_owner_.clear();
  relations_by_concept_.clear();
  concepts_by_doc_.clear();
  docs_by_patient_.clear();
  for (std::size_t i = 0; i < documents.size(); ++i) {
    doc_index_.emplace(documents[i].id, i);
    docs_by_patient_[documents[i].patient_id].push_back(i);
  }
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    concept_index_.emplace(concepts[i].id, i);
    concepts_by_doc_[concepts[i].doc_id].push_back(i);
  }
  for (std::size_t i = 0; i < chains.size(); ++i)
    for (const std::string &m : chains[i].members) chain_index_.emplace(m, i);
  for (std::size_t i = 0; i < attributes.size(); ++i) attributes_by_owner_[attributes[i].owner].push_back(i);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    relations_by_concept_[relations[i].head].push_back(i);
    if (relations[i].tail != relations[i].head) relations_by_concept_[relations[i].tail].push_back(i);
  }
}

const Document *AnnotationCorpus::find_document(std::string_view id) const {
  auto it = doc_index_.find(id);
  return it == doc_index_.end() ? nullptr : &documents[it->second];
}

const ConceptAnn *AnnotationCorpus::find_concept(std::string_view id) const {
  auto it = concept_index_.find(id);
  return it == concept_index_.end() ? nullptr : &concepts[it->second];
}

const CorefChain *AnnotationCorpus::chain_of(std::string_view concept_id) const {
  auto it = chain_index_.find(concept_id);
  return it == chain_index_.end() ? nullptr : &chains[it->second];
}

std::vector<const AttributeAnn *> AnnotationCorpus::attributes_of(std::string_view concept_id) const {
  std::vector<const AttributeAnn *> out;
  if (auto it = attributes_by_owner_.find(concept_id); it != attributes_by_owner_.end())
    for (std::size_t i : it->second) out.push_back(&attributes[i]);
  return out;
}

std::vector<const RelationAnn *> AnnotationCorpus::relations_of(std::string_view concept_id) const {
  std::vector<const RelationAnn *> out;
  if (auto it = relations_by_concept_.find(concept_id); it != relations_by_concept_.end())
    for (std::size_t i : it->second) out.push_back(&relations[i]);
  return out;
}

std::vector<const ConceptAnn *> AnnotationCorpus::concepts_in(std::string_view doc_id) const {
  std::vector<const ConceptAnn *> out;
  if (auto it = concepts_by_doc_.find(doc_id); it != concepts_by_doc_.end())
    for (std::size_t i : it->second) out.push_back(&concepts[i]);
  return out;
}

std::vector<const Document *> AnnotationCorpus::documents_of(std::string_view patient_id) const {
  std::vector<const Document *> out;
  if (auto it = docs_by_patient_.find(patient_id); it != docs_by_patient_.end())
    for (std::size_t i : it->second) out.push_back(&documents[i]);
  return out;
}

std::vector<std::string> AnnotationCorpus::patients() const {
  std::vector<std::string> out;
  for (const auto &[patient, _] : docs_by_patient_) out.push_back(patient);
  return out;
}

std::string AnnotationCorpus::source_of(std::string_view doc_id) const {
  const Document *doc = find_document(doc_id);
  return doc ? doc->source : std::string();
}

std::vector<const ConceptAnn *> resolve_coref(const AnnotationCorpus &corpus, const ConceptAnn &ann) {
  const CorefChain *chain = corpus.chain_of(ann.id);
  if (!chain) return {&ann};
  std::vector<const ConceptAnn *> out;
  for (const std::string &id : chain->members)
    if (const ConceptAnn *c = corpus.find_concept(id)) out.push_back(c);
  return out;
}

namespace {

std::vector<std::string> read_lines(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string describe(const ConceptRef &ref) {
  return "c=\"" + ref.surface + "\" " + std::to_string(ref.span.line) + ":" + std::to_string(ref.span.start_token) +
         " " + std::to_string(ref.span.line) + ":" + std::to_string(ref.span.end_token);
}

class Loader {
 public:
  Loader(const fs::path &root, const CorpusOptions &options) : root_(root), options_(options) {}

  AnnotationCorpus load() {
    if (!fs::exists(root_)) throw Error("corpus directory does not exist: " + root_.string());
    if (!fs::is_directory(root_)) throw Error("corpus root is not a directory: " + root_.string());
    load_documents();
    load_patients();
    for (const Document &doc : corpus_.documents) load_annotations(doc);
    load_classes();
    corpus_.reindex();
    return std::move(corpus_);
  }

 private:
  void violation(const fs::path &file, int line, std::string message) {
    corpus_.violations.push_back({fs::relative(file, root_).generic_string(), line, std::move(message)});
  }

  void load_documents() {
    fs::path dir = root_ / "docs";
    if (!fs::is_directory(dir)) return;
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path &file : files) {
      Document doc;
      doc.id = file.stem().string();
      doc.patient_id = doc.id;
      doc.source = "default";
      doc.lines = read_lines(file);
      if (!doc.lines.empty() && starts_with_icase(doc.lines.front(), "Record Date:")) {
        std::string value = trim(std::string_view(doc.lines.front()).substr(12));
        doc.record_date = parse_date(value, options_.dates);
        if (!doc.record_date) violation(file, 1, "unparseable record date '" + value + "'");
      }
      corpus_.documents.push_back(std::move(doc));
    }
  }

  Document *document(std::string_view id) {
    for (Document &d : corpus_.documents)
      if (d.id == id) return &d;
    return nullptr;
  }

  void load_patients() {
    fs::path file = root_ / "patients.tsv";
    if (!fs::exists(file)) return;
    int line_no = 0;
    std::set<std::string> assigned;
    for (const std::string &line : read_lines(file)) {
      ++line_no;
      if (trim(line).empty() || trim(line).front() == '#') continue;
      std::vector<std::string> f = split(line, '\t');
      if (f.size() < 2 || f.size() > 3) {
        violation(file, line_no, "expected patient_id\\tdoc_id[\\tsource]");
        continue;
      }
      Document *doc = document(trim(f[1]));
      if (!doc) {
        violation(file, line_no, "unknown document " + trim(f[1]));
        continue;
      }
      if (!assigned.insert(doc->id).second) {
        violation(file, line_no, "document " + doc->id + " assigned twice");
        continue;
      }
      doc->patient_id = trim(f[0]);
      if (f.size() == 3 && !trim(f[2]).empty()) doc->source = trim(f[2]);
    }
  }

  void load_annotations(const Document &doc) {
    std::vector<std::pair<fs::path, std::pair<int, RawAnnotation>>> raw;
    for (const char *ext : {".con", ".att", ".rel", ".chains"}) {
      fs::path file = root_ / "ann" / (doc.id + ext);
      if (!fs::exists(file)) continue;
      int line_no = 0;
      for (const std::string &line : read_lines(file)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        try {
          raw.push_back({file, {line_no, parse_annotation_line(line)}});
        } catch (const AnnotationFormatError &e) {
          violation(file, line_no, e.what());
        }
      }
    }

    std::map<SpanRef, std::size_t> by_span;
    int concept_seq = 0, attr_seq = 0, rel_seq = 0, chain_seq = 0;
    for (auto &[file, entry] : raw) {
      auto *c = std::get_if<RawConcept>(&entry.second);
      if (!c) continue;
      std::optional<std::string> text = span_text(doc, c->ref.span);
      if (!text) {
        violation(file, entry.first, "span out of range: " + describe(c->ref));
        continue;
      }
      if (!iequals(collapse_whitespace(*text), collapse_whitespace(c->ref.surface)))
        violation(file, entry.first, "surface '" + c->ref.surface + "' does not match note text '" + *text + "'");
      if (by_span.count(c->ref.span)) {
        violation(file, entry.first, "duplicate concept span: " + describe(c->ref));
        continue;
      }
      ConceptAnn ann;
      ann.id = doc.id + "#c" + std::to_string(++concept_seq);
      ann.doc_id = doc.id;
      ann.span = c->ref.span;
      ann.surface = c->ref.surface;
      ann.entity_type = c->entity_type;
      ann.assertion = c->assertion;
      ann.time = c->time;
      by_span.emplace(ann.span, corpus_.concepts.size());
      corpus_.concepts.push_back(std::move(ann));
    }

    auto resolve = [&](const fs::path &file, int line_no, const ConceptRef &ref,
                       const char *role) -> const ConceptAnn * {
      auto it = by_span.find(ref.span);
      if (it == by_span.end()) {
        violation(file, line_no, std::string(role) + " references missing concept " + describe(ref));
        return nullptr;
      }
      return &corpus_.concepts[it->second];
    };

    std::set<std::string> chained;
    for (auto &[file, entry] : raw) {
      int line_no = entry.first;
      if (auto *a = std::get_if<RawAttribute>(&entry.second)) {
        const ConceptAnn *owner = resolve(file, line_no, a->owner, "attribute");
        if (!owner) continue;
        if (a->location) {
          std::optional<std::string> text = span_text(doc, *a->location);
          if (!text) {
            violation(file, line_no, "attribute value location out of range");
            continue;
          }
        }
        AttributeAnn ann{doc.id + "#a" + std::to_string(++attr_seq), doc.id, owner->id, a->name, a->value,
                         a->location};
        int value_line = ann.location ? ann.location->line : owner->span.line;
        if (doc.line(value_line).find(ann.value) == std::string::npos)
          violation(file, line_no, "attribute value '" + ann.value + "' not found on line " +
                                       std::to_string(value_line));
        corpus_.attributes.push_back(std::move(ann));
      } else if (auto *r = std::get_if<RawRelation>(&entry.second)) {
        const ConceptAnn *head = resolve(file, line_no, r->head, "relation head");
        const ConceptAnn *tail = resolve(file, line_no, r->tail, "relation tail");
        if (!head || !tail) continue;
        corpus_.relations.push_back(
            {doc.id + "#r" + std::to_string(++rel_seq), doc.id, r->relation_type, head->id, tail->id});
      } else if (auto *ch = std::get_if<RawChain>(&entry.second)) {
        CorefChain chain{doc.id + "#k" + std::to_string(chain_seq + 1), doc.id, {}};
        bool ok = true;
        std::string type;
        for (const ConceptRef &ref : ch->members) {
          const ConceptAnn *m = resolve(file, line_no, ref, "chain member");
          if (!m) {
            ok = false;
            break;
          }
          if (type.empty()) type = m->entity_type;
          if (m->entity_type != type) {
            violation(file, line_no, "chain mixes entity types " + type + " and " + m->entity_type);
            ok = false;
            break;
          }
          if (chained.count(m->id) ||
              std::find(chain.members.begin(), chain.members.end(), m->id) != chain.members.end()) {
            violation(file, line_no, "concept " + describe(ref) + " already belongs to a chain");
            ok = false;
            break;
          }
          chain.members.push_back(m->id);
        }
        if (!ok) continue;
        if (chain.members.size() < 2) {
          violation(file, line_no, "chains need at least two members");
          continue;
        }
        ++chain_seq;
        for (const std::string &m : chain.members) chained.insert(m);
        corpus_.chains.push_back(std::move(chain));
      }
    }
  }

  void load_classes() {
    fs::path file = root_ / "classes.tsv";
    if (!fs::exists(file)) return;
    std::set<std::string> patients;
    for (const Document &d : corpus_.documents) patients.insert(d.patient_id);
    std::set<std::pair<std::string, std::string>> seen;
    int line_no = 0;
    for (const std::string &line : read_lines(file)) {
      ++line_no;
      if (trim(line).empty() || trim(line).front() == '#') continue;
      std::vector<std::string> f = split(line, '\t');
      if (f.size() != 3) {
        violation(file, line_no, "expected id\\ttask\\tlabels");
        continue;
      }
      ClassAnn ann;
      ann.target = trim(f[0]);
      ann.task = trim(f[1]);
      if (document(ann.target)) {
        ann.target_is_patient = false;
      } else if (patients.count(ann.target)) {
        ann.target_is_patient = true;
      } else {
        violation(file, line_no, "unknown document or patient " + ann.target);
        continue;
      }
      std::set<std::string> labels;
      for (const std::string &l : split(f[2], ','))
        if (!trim(l).empty()) labels.insert(trim(l));
      if (labels.empty() || ann.task.empty()) {
        violation(file, line_no, "class annotation needs a task and at least one label");
        continue;
      }
      if (!seen.emplace(ann.target, ann.task).second) {
        violation(file, line_no, "duplicate class annotation for " + ann.target + " / " + ann.task);
        continue;
      }
      ann.labels.assign(labels.begin(), labels.end());
      corpus_.classes.push_back(std::move(ann));
    }
  }

  fs::path root_;
  CorpusOptions options_;
  AnnotationCorpus corpus_;
};

}  // namespace

AnnotationCorpus load_corpus(const fs::path &root, const CorpusOptions &options) {
  return Loader(root, options).load();
}

}  // namespace qagen
