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

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qagen/analysis.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

using ojson = nlohmann::ordered_json;

double mean_of(double sum, std::size_t n) { return n == 0 ? 0.0 : sum / static_cast<double>(n); }

std::vector<std::string> lowered_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &t : tokenize(text)) out.push_back(to_lower(t));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

DatasetStats corpus_stats(const std::vector<QARecord> &records, const AnnotationCorpus &corpus) {
  if (records.empty()) throw Error("corpus_stats needs at least one record");
  DatasetStats s;
  s.records = records.size();
  s.notes = corpus.documents.size();
  double q = 0, lf_len = 0, ev = 0, evq = 0;
  std::size_t n_ev = 0, n_evq = 0;
  for (const Document &d : corpus.documents) ++s.per_source[d.source].notes;
  for (const QARecord &r : records) {
    q += static_cast<double>(tokenize(r.question).size());
    std::string lf_text = lf::serialize_lf(r.lf);
    lf_len += static_cast<double>(tokenize(lf_text).size());
    std::size_t line_evidences = 0;
    for (const EvidenceSpan &e : r.evidences) {
      if (e.line == 0) continue;
      ev += static_cast<double>(tokenize(e.line_text).size());
      ++n_ev;
      ++line_evidences;
    }
    if (line_evidences > 0) {
      evq += static_cast<double>(line_evidences);
      ++n_evq;
    }
    std::string source = "default";
    if (!r.evidences.empty()) source = corpus.source_of(r.evidences.front().doc_id);
    else if (auto docs = corpus.documents_of(r.patient_id); !docs.empty()) source = docs.front()->source;
    if (r.has_answer()) {
      ++s.answered;
      ++s.per_source[source].qa;
    }
    ++s.per_source[source].ql;
  }
  double note = 0;
  for (const Document &d : corpus.documents) note += static_cast<double>(tokenize(d.text()).size());
  s.mean_question_tokens = mean_of(q, records.size());
  s.mean_lf_tokens = mean_of(lf_len, records.size());
  s.mean_evidence_tokens = mean_of(ev, n_ev);
  s.mean_evidences_per_question = mean_of(evq, n_evq);
  s.mean_note_tokens = mean_of(note, corpus.documents.size());
  s.mean_questions_per_note = mean_of(static_cast<double>(s.answered), corpus.documents.size());
  return s;
}

std::string DatasetStats::table() const {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-16s %10s %10s %8s\n", "source", "#QA", "#QL", "#notes");
  out << buf;
  for (const auto &[name, c] : per_source) {
    std::snprintf(buf, sizeof(buf), "%-16s %10zu %10zu %8zu\n", name.c_str(), c.qa, c.ql, c.notes);
    out << buf;
  }
  out << "\n";
  out << "records                 " << records << "\n";
  out << "answered                " << answered << "\n";
  out << "question length         " << fmt(mean_question_tokens) << "\n";
  out << "evidence length         " << fmt(mean_evidence_tokens) << "\n";
  out << "logical form length     " << fmt(mean_lf_tokens) << "\n";
  out << "note length             " << fmt(mean_note_tokens) << "\n";
  out << "evidences per question  " << fmt(mean_evidences_per_question) << "\n";
  out << "questions per note      " << fmt(mean_questions_per_note) << "\n";
  return out.str();
}

std::string DatasetStats::to_json() const {
  ojson j;
  j["records"] = records;
  j["answered"] = answered;
  j["notes"] = notes;
  j["mean_question_tokens"] = mean_question_tokens;
  j["mean_evidence_tokens"] = mean_evidence_tokens;
  j["mean_lf_tokens"] = mean_lf_tokens;
  j["mean_note_tokens"] = mean_note_tokens;
  j["mean_evidences_per_question"] = mean_evidences_per_question;
  j["mean_questions_per_note"] = mean_questions_per_note;
  ojson sources = ojson::object();
  for (const auto &[name, c] : per_source) sources[name] = ojson{{"qa", c.qa}, {"ql", c.ql}, {"notes", c.notes}};
  j["per_source"] = std::move(sources);
  return j.dump(2);
}

DiversityReport paraphrase_diversity(const std::vector<TextGroup> &groups, std::uint64_t seed, BleuVariant variant) {
  DiversityReport report;
  Rng rng(seed);
  for (const auto &[id, texts] : groups) {
    if (texts.size() < 2) continue;
    std::size_t ref = static_cast<std::size_t>(rng.below(texts.size()));
    std::vector<std::string> ref_tokens = lowered_tokens(texts[ref]);
    GroupDiversity g;
    g.group_id = id;
    g.reference = texts[ref];
    g.members = texts.size();
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (i == ref) continue;
      std::vector<std::string> tokens = lowered_tokens(texts[i]);
      g.bleu += bleu(tokens, ref_tokens, variant);
      g.jaccard += jaccard(tokens, ref_tokens);
    }
    g.bleu /= static_cast<double>(texts.size() - 1);
    g.jaccard /= static_cast<double>(texts.size() - 1);
    report.groups.push_back(std::move(g));
  }
  const std::size_t n = report.groups.size();
  if (n == 0) return report;
  for (const GroupDiversity &g : report.groups) {
    report.bleu_mean += g.bleu;
    report.jaccard_mean += g.jaccard;
  }
  report.bleu_mean /= static_cast<double>(n);
  report.jaccard_mean /= static_cast<double>(n);
  for (const GroupDiversity &g : report.groups) {
    report.bleu_std += (g.bleu - report.bleu_mean) * (g.bleu - report.bleu_mean);
    report.jaccard_std += (g.jaccard - report.jaccard_mean) * (g.jaccard - report.jaccard_mean);
  }
  report.bleu_std = std::sqrt(report.bleu_std / static_cast<double>(n));
  report.jaccard_std = std::sqrt(report.jaccard_std / static_cast<double>(n));
  return report;
}

DiversityReport paraphrase_diversity(const TemplateStore &templates, std::uint64_t seed, BleuVariant variant) {
  std::vector<TextGroup> groups;
  for (const ParaphraseGroup &g : templates.groups()) {
    TextGroup tg{g.lf_template_id, {}};
    for (const std::string &id : g.members) tg.second.push_back(templates.find(id)->text);
    groups.push_back(std::move(tg));
  }
  return paraphrase_diversity(groups, seed, variant);
}

std::string DiversityReport::table() const {
  std::ostringstream out;
  char buf[200];
  std::snprintf(buf, sizeof(buf), "%-12s %8s %8s %8s\n", "group", "members", "bleu", "jaccard");
  out << buf;
  for (const GroupDiversity &g : groups) {
    std::snprintf(buf, sizeof(buf), "%-12s %8zu %8.4f %8.4f\n", g.group_id.c_str(), g.members, g.bleu, g.jaccard);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "bleu %.4f +- %.4f, jaccard %.4f +- %.4f over %zu groups\n", bleu_mean, bleu_std,
                jaccard_mean, jaccard_std, groups.size());
  out << buf;
  return out.str();
}

std::string DiversityReport::to_json() const {
  ojson j;
  ojson gs = ojson::array();
  for (const GroupDiversity &g : groups)
    gs.push_back(ojson{{"group", g.group_id}, {"reference", g.reference}, {"members", g.members},
                       {"bleu", g.bleu}, {"jaccard", g.jaccard}});
  j["groups"] = std::move(gs);
  j["bleu_mean"] = bleu_mean;
  j["bleu_std"] = bleu_std;
  j["jaccard_mean"] = jaccard_mean;
  j["jaccard_std"] = jaccard_std;
  return j.dump(2);
}

}  // namespace qagen
