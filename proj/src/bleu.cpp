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
#include <map>
#include <set>

#include "qagen/analysis.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> ngrams(const std::vector<std::string> &tokens, std::size_t n) {
  std::map<Gram, std::size_t> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++out[Gram(tokens.begin() + i, tokens.begin() + i + n)];
  return out;
}

}  // namespace

double bleu(const std::vector<std::string> &candidate, const std::vector<std::string> &reference, BleuVariant variant) {
  if (candidate.empty() || reference.empty()) throw Error("bleu needs non-empty token sequences");
  double log_sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::map<Gram, std::size_t> cand = ngrams(candidate, n), ref = ngrams(reference, n);
    std::size_t matched = 0, total = 0;
    for (const auto &[gram, count] : cand) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    double p;
    if (n >= 2 && variant == BleuVariant::Smoothed) {
      p = (matched + 1.0) / (total + 1.0);
    } else {
      if (matched == 0) return 0.0;
      p = static_cast<double>(matched) / static_cast<double>(total);
    }
    log_sum += std::log(p) / 4.0;
  }
  const double c = static_cast<double>(candidate.size()), r = static_cast<double>(reference.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum);
}

double jaccard(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  if (a.empty() || b.empty()) throw Error("jaccard needs non-empty token sequences");
  std::set<std::string> sa, sb;
  for (const std::string &t : a) sa.insert(to_lower(t));
  for (const std::string &t : b) sb.insert(to_lower(t));
  std::size_t inter = 0;
  for (const std::string &t : sa) inter += sb.count(t);
  return static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
}

}  // namespace qagen
