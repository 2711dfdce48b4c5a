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
#include <istream>
#include <map>

#include "qagen/baselines.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

constexpr std::size_t kTopK = 10;

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

bool contains_icase(std::string_view haystack, std::string_view needle) {
  return locate_in_line(haystack, needle).has_value();
}

}  // namespace

double token_f1(std::string_view prediction, std::string_view gold) {
  std::map<std::string, int> p, g;
  std::size_t np = 0, ng = 0;
  for (const std::string &t : tokenize(prediction)) {
    ++p[to_lower(t)];
    ++np;
  }
  for (const std::string &t : tokenize(gold)) {
    ++g[to_lower(t)];
    ++ng;
  }
  if (np == 0 || ng == 0) return np == ng ? 1.0 : 0.0;
  std::size_t common = 0;
  for (const auto &[tok, c] : p) {
    auto it = g.find(tok);
    if (it != g.end()) common += static_cast<std::size_t>(std::min(c, it->second));
  }
  if (common == 0) return 0.0;
  double precision = static_cast<double>(common) / static_cast<double>(np);
  double recall = static_cast<double>(common) / static_cast<double>(ng);
  return 2 * precision * recall / (precision + recall);
}

std::optional<std::pair<std::size_t, std::size_t>> prediction_endpoints(const PredictedSpan &prediction,
                                                                        const EvidenceSpan &gold) {
  if (prediction.char_start && prediction.char_end) return std::make_pair(*prediction.char_start, *prediction.char_end);
  const std::string &p = prediction.text;
  if (p.empty()) return std::nullopt;
  std::size_t pos = gold.line_text.find(p);
  if (pos != std::string::npos) return std::make_pair(gold.char_start + pos, gold.char_start + pos + p.size());
  pos = p.find(gold.line_text);
  if (pos != std::string::npos && pos <= gold.char_start)
    return std::make_pair(gold.char_start - pos, gold.char_start - pos + p.size());
  return std::nullopt;
}

double em_credit(const PredictedSpan &prediction, const EvidenceSpan &gold, EmRule rule, std::size_t window) {
  if (gold.answer_entity && !gold.answer_entity->empty())
    return contains_icase(prediction.text, *gold.answer_entity) ? 1.0 : 0.0;
  auto span = prediction_endpoints(prediction, gold);
  if (!span) return 0.0;
  const auto [ps, pe] = *span;
  if (rule == EmRule::Endpoint)
    return distance(ps, gold.char_start) <= window && distance(pe, gold.char_end) <= window ? 1.0 : 0.0;
  std::size_t lo = gold.char_start > window ? gold.char_start - window : 0;
  std::size_t hi = gold.char_end + window;
  return std::max(ps, lo) < std::min(pe, hi) ? 1.0 : 0.0;
}

AnswerScore eval_answers(const std::vector<std::vector<PredictedSpan>> &predictions,
                         const std::vector<std::vector<EvidenceSpan>> &gold, EmRule rule) {
  if (predictions.size() != gold.size()) throw Error("prediction and gold counts differ");
  AnswerScore total;
  for (std::size_t q = 0; q < gold.size(); ++q) {
    if (gold[q].empty()) throw Error("question " + std::to_string(q) + " has no gold evidence");
    const std::size_t k = std::min(kTopK, predictions[q].size());
    std::vector<bool> used(k, false);
    double em = 0, f1 = 0;
    for (const EvidenceSpan &g : gold[q]) {
      std::optional<std::size_t> best;
      double best_em = 0, best_f1 = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (used[i]) continue;
        double e = em_credit(predictions[q][i], g, rule);
        double f = token_f1(predictions[q][i].text, g.line_text);
        if (!best || e > best_em || (e == best_em && f > best_f1)) {
          best = i;
          best_em = e;
          best_f1 = f;
        }
      }
      if (best) {
        used[*best] = true;
        em += best_em;
        f1 += best_f1;
      }
    }
    total.em += em / static_cast<double>(gold[q].size());
    total.f1 += f1 / static_cast<double>(gold[q].size());
    ++total.questions;
  }
  if (total.questions > 0) {
    total.em /= static_cast<double>(total.questions);
    total.f1 /= static_cast<double>(total.questions);
  }
  return total;
}

std::map<std::string, std::vector<std::string>> read_predictions(std::istream &in, const std::string &source) {
  std::map<std::string, std::vector<std::pair<long, std::string>>> ranked;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::size_t a = line.find('\t');
    std::size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos) throw FormatError(source, n, "expected record_id, rank and text");
    long rank = 0;
    try {
      std::size_t used = 0;
      rank = std::stol(line.substr(a + 1, b - a - 1), &used);
      if (used != b - a - 1) throw std::invalid_argument("rank");
    } catch (const std::exception &) {
      throw FormatError(source, n, "rank must be an integer");
    }
    ranked[line.substr(0, a)].emplace_back(rank, line.substr(b + 1));
  }
  std::map<std::string, std::vector<std::string>> out;
  for (auto &[id, items] : ranked) {
    std::stable_sort(items.begin(), items.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto &item : items) out[id].push_back(std::move(item.second));
  }
  return out;
}

}  // namespace qagen
