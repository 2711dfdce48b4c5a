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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qagen/generator.hpp"
#include "qagen/lf.hpp"
#include "qagen/recognizer.hpp"
#include "qagen/templates.hpp"

namespace qagen {

// Splits.

enum class SplitStrategy { QL1, QL2, QA };

std::optional<SplitStrategy> parse_split_strategy(std::string_view name);
std::string split_strategy_name(SplitStrategy s);

struct SplitSpec {
  SplitStrategy strategy = SplitStrategy::QL2;
  double ratio = 0.8;  // train fraction
  std::uint64_t seed = 42;
};

struct Split {
  std::vector<QARecord> train;
  std::vector<QARecord> test;
  std::vector<std::string> warnings;
};

// QL1 partitions the templates of each paraphrase group (singletons stay in
// train) and lets instances follow their template. QL2 shuffles instances.
// QA is QL2 over records that have an answer. Both sides keep input order.
Split split_dataset(const std::vector<QARecord> &records, const TemplateStore &templates, const SplitSpec &spec);

// Word vectors and sentence embeddings.

class WordVectors {
 public:
  void add(std::string token, std::vector<double> vector);
  // Exact token first, then its lowercase form.
  const std::vector<double> *find(std::string_view token) const;
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }
  void scale(double factor);

 private:
  std::map<std::string, std::vector<double>, std::less<>> table_;
  std::size_t dimension_ = 0;
};

// One "token v1 ... vd" per line.
WordVectors parse_vectors(std::string_view text, const std::string &source = "<vectors>");
WordVectors load_vectors(const std::filesystem::path &path);

// Smooth inverse frequency weights a / (a + p(w)) from unigram counts.
struct SifWeights {
  double a = 1e-3;
  std::map<std::string, double> probability;
  double weight(std::string_view token) const;
};

SifWeights sif_weights(const std::vector<std::string> &texts, double a = 1e-3);

// Tokens as the matchers see them: lowercased shared tokenizer output.
std::vector<std::string> sentence_tokens(std::string_view text);

// Mean (or SIF-weighted mean) of in-vocabulary token vectors. Throws when no
// token is in the vocabulary.
std::vector<double> sentence_vector(const WordVectors &vectors, std::string_view text,
                                    const SifWeights *sif = nullptr);

std::vector<double> first_principal_component(const std::vector<std::vector<double>> &rows, int iterations = 200);
void remove_component(std::vector<double> &v, const std::vector<double> &component);
double cosine(const std::vector<double> &a, const std::vector<double> &b);

// Heuristic question to logical form matching.

enum class HmMode { HM1, HM2 };

struct HmPrediction {
  std::optional<lf::LogicalForm> lf;
  std::string template_id;
  double score = 0;
  std::string reason;  // set when lf is empty
};

class HeuristicMatcher {
 public:
  // vectors is required for HM2 and must outlive the matcher.
  HeuristicMatcher(std::vector<QuestionTemplate> train_templates, LfTemplateMap lf_templates, HmMode mode,
                   const WordVectors *vectors = nullptr, bool sif = false);

  HmPrediction predict(const EntityRecognizer &recognizer, std::string_view question) const;
  HmPrediction predict_normalized(const NormalizedQuestion &normalized) const;

 private:
  HmPrediction fill(const QuestionTemplate &t, const std::vector<SlotFill> &fills, double score) const;

  std::vector<QuestionTemplate> templates_;  // sorted by id
  LfTemplateMap lf_templates_;
  HmMode mode_;
  const WordVectors *vectors_;
  bool sif_;
  SifWeights weights_;
  std::vector<double> component_;
  std::vector<std::optional<std::vector<double>>> template_vectors_;
  std::map<std::string, std::size_t> canonical_;
};

// Distinct templates used by a set of records.
std::vector<QuestionTemplate> templates_of(const std::vector<QARecord> &records, const TemplateStore &store);

// Gazetteer holding exactly the slot fills of the records.
GazetteerRecognizer oracle_recognizer(const std::vector<QARecord> &records);

double eval_ql_accuracy(const std::vector<std::optional<lf::LogicalForm>> &predictions,
                        const std::vector<lf::LogicalForm> &gold);

// Answer metrics.

enum class EmRule { Endpoint, Overlap };

struct PredictedSpan {
  std::string text;
  std::optional<std::size_t> char_start;  // document offsets when known
  std::optional<std::size_t> char_end;
};

struct AnswerScore {
  double em = 0;
  double f1 = 0;
  std::size_t questions = 0;
};

double token_f1(std::string_view prediction, std::string_view gold);

// Where a prediction sits in the document, from explicit offsets or by
// aligning its text with the gold line.
std::optional<std::pair<std::size_t, std::size_t>> prediction_endpoints(const PredictedSpan &prediction,
                                                                        const EvidenceSpan &gold);

// Answer-entity containment when the gold has an entity, else the window rule.
double em_credit(const PredictedSpan &prediction, const EvidenceSpan &gold, EmRule rule = EmRule::Endpoint,
                 std::size_t window = 20);

// Per question: greedy one-to-one matching of gold evidences to the top 10
// predictions, averaged over the gold evidences. Corpus score is the mean.
AnswerScore eval_answers(const std::vector<std::vector<PredictedSpan>> &predictions,
                         const std::vector<std::vector<EvidenceSpan>> &gold, EmRule rule = EmRule::Endpoint);

// "record_id \t rank \t text" lines, grouped by record and ordered by rank.
std::map<std::string, std::vector<std::string>> read_predictions(std::istream &in,
                                                                 const std::string &source = "<predictions>");

// Class prediction.

using SparseVector = std::vector<std::pair<std::size_t, double>>;

struct ClsHyper {
  double learning_rate = 1.0;
  double l2 = 1e-4;
  int epochs = 300;
  bool normalize = true;  // L2-normalize TF-IDF rows
};

struct ClsExample {
  std::string text;  // question and document
  std::vector<std::string> labels;
};

struct ClsModel {
  std::map<std::string, std::size_t> vocabulary;
  std::vector<double> idf;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> weights;  // one row per label
  std::vector<double> bias;
  ClsHyper hyper;
  std::optional<std::vector<std::string>> constant;  // degenerate training data
  std::vector<std::string> warnings;

  SparseVector features(std::string_view text) const;
  std::vector<double> probabilities(std::string_view text) const;
  std::string to_json() const;
};

double sigmoid(double z);

// Mean logistic loss plus (l2 / 2) |w|^2 and its gradient.
double logistic_loss(const std::vector<SparseVector> &x, const std::vector<double> &y, const std::vector<double> &w,
                     double b, double l2, std::vector<double> *grad_w = nullptr, double *grad_b = nullptr);

struct BinaryFit {
  std::vector<double> w;
  double b = 0;
  std::vector<double> losses;  // before each epoch, then final
};

BinaryFit train_binary(const std::vector<SparseVector> &x, const std::vector<double> &y, std::size_t dimension,
                       const ClsHyper &hyper);

ClsModel train_cls(const std::vector<ClsExample> &examples, const ClsHyper &hyper = {});
std::vector<std::string> predict_cls(const ClsModel &model, std::string_view question, std::string_view document);
std::vector<std::string> predict_cls(const ClsModel &model, std::string_view text);

// Fraction of items whose predicted label set equals the gold set.
double subset_accuracy(const std::vector<std::vector<std::string>> &predictions,
                       const std::vector<std::vector<std::string>> &gold);

}  // namespace qagen
