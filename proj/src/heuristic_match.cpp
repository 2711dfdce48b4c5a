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
#include <set>

#include "qagen/baselines.hpp"
#include "qagen/text.hpp"

namespace qagen {

HeuristicMatcher::HeuristicMatcher(std::vector<QuestionTemplate> train_templates, LfTemplateMap lf_templates,
                                   HmMode mode, const WordVectors *vectors, bool sif)
    : templates_(std::move(train_templates)),
      lf_templates_(std::move(lf_templates)),
      mode_(mode),
      vectors_(vectors),
      sif_(sif) {
  std::sort(templates_.begin(), templates_.end(),
            [](const QuestionTemplate &a, const QuestionTemplate &b) { return a.id < b.id; });
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    if (!lf_templates_.count(templates_[i].lf_template_id))
      throw Error("template " + templates_[i].id + " refers to unknown lf template " + templates_[i].lf_template_id);
    canonical_.emplace(canonical_text(templates_[i].text), i);
  }
  if (mode_ != HmMode::HM2) return;
  if (!vectors_ || vectors_->dimension() == 0) throw Error("HM2 needs word vectors");
  if (sif_) {
    std::vector<std::string> texts;
    for (const QuestionTemplate &t : templates_) texts.push_back(t.text);
    weights_ = sif_weights(texts);
  }
  std::vector<std::vector<double>> rows;
  for (const QuestionTemplate &t : templates_) {
    try {
      template_vectors_.emplace_back(sentence_vector(*vectors_, t.text, sif_ ? &weights_ : nullptr));
      rows.push_back(*template_vectors_.back());
    } catch (const Error &) {
      template_vectors_.emplace_back(std::nullopt);
    }
  }
  if (sif_ && !rows.empty()) {
    component_ = first_principal_component(rows);
    for (auto &v : template_vectors_)
      if (v) remove_component(*v, component_);
  }
}

HmPrediction HeuristicMatcher::predict(const EntityRecognizer &recognizer, std::string_view question) const {
  return predict_normalized(normalize_question(recognizer, question));
}

HmPrediction HeuristicMatcher::predict_normalized(const NormalizedQuestion &normalized) const {
  if (mode_ == HmMode::HM1) {
    auto it = canonical_.find(canonical_text(normalized.template_text));
    if (it == canonical_.end()) return HmPrediction{std::nullopt, {}, 0, "no identical train template"};
    return fill(templates_[it->second], normalized.fills, 1.0);
  }
  std::vector<double> query;
  try {
    query = sentence_vector(*vectors_, normalized.template_text, sif_ ? &weights_ : nullptr);
  } catch (const Error &) {
    return HmPrediction{std::nullopt, {}, 0, "no in-vocabulary token"};
  }
  if (sif_) remove_component(query, component_);
  std::optional<std::size_t> best;
  double best_score = 0;
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    if (!template_vectors_[i]) continue;
    double s = cosine(query, *template_vectors_[i]);
    if (!best || s > best_score) {
      best = i;
      best_score = s;
    }
  }
  if (!best) return HmPrediction{std::nullopt, {}, 0, "no train template has a vector"};
  return fill(templates_[*best], normalized.fills, best_score);
}

HmPrediction HeuristicMatcher::fill(const QuestionTemplate &t, const std::vector<SlotFill> &fills, double score) const {
  HmPrediction p;
  p.template_id = t.id;
  p.score = score;
  std::vector<std::string> types;
  for (const SlotFill &f : fills) types.push_back(f.entity_type);
  if (types != t.placeholder_types) {
    p.reason = "entities do not fit the template placeholders";
    return p;
  }
  try {
    p.lf = instantiate_template(t, lf_templates_.at(t.lf_template_id), fills).lf;
  } catch (const Error &e) {
    p.reason = e.what();
  }
  return p;
}

std::vector<QuestionTemplate> templates_of(const std::vector<QARecord> &records, const TemplateStore &store) {
  std::set<std::string> ids;
  for (const QARecord &r : records) ids.insert(r.question_template_id);
  std::vector<QuestionTemplate> out;
  for (const std::string &id : ids) {
    const QuestionTemplate *t = store.find(id);
    if (!t) throw Error("record refers to unknown template " + id);
    out.push_back(*t);
  }
  return out;
}

GazetteerRecognizer oracle_recognizer(const std::vector<QARecord> &records) {
  GazetteerRecognizer g;
  for (const QARecord &r : records)
    for (const SlotFill &f : r.slot_fills) g.add(f.surface, f.entity_type);
  return g;
}

double eval_ql_accuracy(const std::vector<std::optional<lf::LogicalForm>> &predictions,
                        const std::vector<lf::LogicalForm> &gold) {
  if (predictions.size() != gold.size()) throw Error("prediction and gold counts differ");
  if (gold.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (predictions[i] && lf::lf_equal(*predictions[i], gold[i])) ++correct;
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

}  // namespace qagen
