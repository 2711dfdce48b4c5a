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
#include <cmath>
#include <set>

#include "json.hpp"
#include "qagen/baselines.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

std::map<std::string, std::size_t> term_counts(std::string_view text) {
  std::map<std::string, std::size_t> tf;
  for (const std::string &t : tokenize(text)) ++tf[to_lower(t)];
  return tf;
}

double dot(const SparseVector &x, const std::vector<double> &w) {
  double s = 0;
  for (const auto &[i, v] : x) s += v * w[i];
  return s;
}

}  // namespace

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_loss(const std::vector<SparseVector> &x, const std::vector<double> &y, const std::vector<double> &w,
                     double b, double l2, std::vector<double> *grad_w, double *grad_b) {
  const double n = static_cast<double>(x.size());
  double loss = 0;
  if (grad_w) grad_w->assign(w.size(), 0.0);
  if (grad_b) *grad_b = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double z = dot(x[k], w) + b;
    // log(1 + e^z) - y z, computed stably
    loss += (z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y[k] * z;
    double r = sigmoid(z) - y[k];
    if (grad_w)
      for (const auto &[i, v] : x[k]) (*grad_w)[i] += r * v / n;
    if (grad_b) *grad_b += r / n;
  }
  loss /= n;
  double reg = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    reg += w[i] * w[i];
    if (grad_w) (*grad_w)[i] += l2 * w[i];
  }
  return loss + 0.5 * l2 * reg;
}

BinaryFit train_binary(const std::vector<SparseVector> &x, const std::vector<double> &y, std::size_t dimension,
                       const ClsHyper &hyper) {
  BinaryFit fit;
  fit.w.assign(dimension, 0.0);
  std::vector<double> gw;
  double gb = 0;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    fit.losses.push_back(logistic_loss(x, y, fit.w, fit.b, hyper.l2, &gw, &gb));
    for (std::size_t i = 0; i < dimension; ++i) fit.w[i] -= hyper.learning_rate * gw[i];
    fit.b -= hyper.learning_rate * gb;
  }
  fit.losses.push_back(logistic_loss(x, y, fit.w, fit.b, hyper.l2));
  return fit;
}

SparseVector ClsModel::features(std::string_view text) const {
  SparseVector out;
  for (const auto &[term, count] : term_counts(text)) {
    auto it = vocabulary.find(term);
    if (it == vocabulary.end()) continue;
    out.emplace_back(it->second, (1.0 + std::log(static_cast<double>(count))) * idf[it->second]);
  }
  std::sort(out.begin(), out.end());
  if (hyper.normalize) {
    double norm = 0;
    for (const auto &[_, v] : out) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto &[_, v] : out) v /= norm;
  }
  return out;
}

std::vector<double> ClsModel::probabilities(std::string_view text) const {
  SparseVector x = features(text);
  std::vector<double> p;
  for (std::size_t k = 0; k < labels.size(); ++k) p.push_back(sigmoid(dot(x, weights[k]) + bias[k]));
  return p;
}

std::string ClsModel::to_json() const {
  nlohmann::ordered_json j;
  j["labels"] = labels;
  j["vocabulary_size"] = vocabulary.size();
  j["learning_rate"] = hyper.learning_rate;
  j["l2"] = hyper.l2;
  j["epochs"] = hyper.epochs;
  j["normalize"] = hyper.normalize;
  if (constant) j["constant"] = *constant;
  j["bias"] = bias;
  j["weights"] = weights;
  return j.dump();
}

ClsModel train_cls(const std::vector<ClsExample> &examples, const ClsHyper &hyper) {
  ClsModel model;
  model.hyper = hyper;
  std::set<std::string> label_set;
  std::set<std::vector<std::string>> distinct;
  for (const ClsExample &e : examples) {
    std::vector<std::string> sorted = e.labels;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    distinct.insert(sorted);
    label_set.insert(sorted.begin(), sorted.end());
  }
  model.labels.assign(label_set.begin(), label_set.end());
  if (distinct.size() < 2) {
    model.constant = distinct.empty() ? std::vector<std::string>{} : *distinct.begin();
    model.warnings.push_back("training data has a single label set; predicting it constantly");
    return model;
  }

  std::map<std::string, std::size_t> df;
  std::vector<std::map<std::string, std::size_t>> tfs;
  for (const ClsExample &e : examples) {
    tfs.push_back(term_counts(e.text));
    for (const auto &[term, _] : tfs.back()) ++df[term];
  }
  const double n = static_cast<double>(examples.size());
  for (const auto &[term, d] : df) {
    model.vocabulary.emplace(term, model.idf.size());
    model.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(d))));
  }
  std::vector<SparseVector> x;
  for (const ClsExample &e : examples) x.push_back(model.features(e.text));
  for (const std::string &label : model.labels) {
    std::vector<double> y;
    for (const ClsExample &e : examples)
      y.push_back(std::find(e.labels.begin(), e.labels.end(), label) != e.labels.end() ? 1.0 : 0.0);
    BinaryFit fit = train_binary(x, y, model.idf.size(), hyper);
    model.weights.push_back(std::move(fit.w));
    model.bias.push_back(fit.b);
  }
  return model;
}

std::vector<std::string> predict_cls(const ClsModel &model, std::string_view text) {
  if (model.constant) return *model.constant;
  std::vector<double> p = model.probabilities(text);
  std::vector<std::string> out;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] >= 0.5) out.push_back(model.labels[k]);
  if (out.empty() && !p.empty())
    out.push_back(model.labels[static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin())]);
  return out;
}

std::vector<std::string> predict_cls(const ClsModel &model, std::string_view question, std::string_view document) {
  return predict_cls(model, std::string(question) + "\n" + std::string(document));
}

double subset_accuracy(const std::vector<std::vector<std::string>> &predictions,
                       const std::vector<std::vector<std::string>> &gold) {
  if (predictions.size() != gold.size()) throw Error("prediction and gold counts differ");
  if (gold.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    std::set<std::string> a(predictions[i].begin(), predictions[i].end()), b(gold[i].begin(), gold[i].end());
    if (a == b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

}  // namespace qagen
