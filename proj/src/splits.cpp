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

#include "qagen/baselines.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"

namespace qagen {

std::optional<SplitStrategy> parse_split_strategy(std::string_view name) {
  std::string n = to_lower(name);
  if (n == "ql1" || n == "emrql-1") return SplitStrategy::QL1;
  if (n == "ql2" || n == "emrql-2") return SplitStrategy::QL2;
  if (n == "qa") return SplitStrategy::QA;
  return std::nullopt;
}

std::string split_strategy_name(SplitStrategy s) {
  switch (s) {
    case SplitStrategy::QL1: return "ql1";
    case SplitStrategy::QL2: return "ql2";
    case SplitStrategy::QA: return "qa";
  }
  return "ql2";
}

namespace {

Split shuffle_split(const std::vector<const QARecord *> &records, double ratio, std::uint64_t seed) {
  std::vector<std::size_t> idx(records.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.shuffle(idx);
  const std::size_t n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(records.size())));
  std::vector<bool> in_train(records.size(), false);
  for (std::size_t i = 0; i < n_train && i < idx.size(); ++i) in_train[idx[i]] = true;
  Split out;
  for (std::size_t i = 0; i < records.size(); ++i) (in_train[i] ? out.train : out.test).push_back(*records[i]);
  return out;
}

}  // namespace

Split split_dataset(const std::vector<QARecord> &records, const TemplateStore &templates, const SplitSpec &spec) {
  if (!(spec.ratio > 0.0 && spec.ratio < 1.0)) throw Error("split ratio must lie strictly between 0 and 1");
  Split out;
  if (spec.strategy == SplitStrategy::QL1) {
    std::set<std::string> test_templates;
    Rng rng(spec.seed);
    for (const ParaphraseGroup &g : templates.groups()) {
      std::size_t n = g.members.size();
      if (n < 2) continue;
      std::vector<std::string> members = g.members;
      rng.shuffle(members);
      std::size_t n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * (1.0 - spec.ratio)));
      n_test = std::clamp<std::size_t>(n_test, 1, n - 1);
      for (std::size_t i = 0; i < n_test; ++i) test_templates.insert(members[i]);
    }
    for (const QARecord &r : records) (test_templates.count(r.question_template_id) ? out.test : out.train).push_back(r);
  } else {
    std::vector<const QARecord *> pool;
    for (const QARecord &r : records)
      if (spec.strategy == SplitStrategy::QL2 || r.has_answer()) pool.push_back(&r);
    out = shuffle_split(pool, spec.ratio, spec.seed);
  }
  if (out.train.empty()) out.warnings.push_back("train side is empty");
  if (out.test.empty()) out.warnings.push_back("test side is empty");
  return out;
}

}  // namespace qagen
