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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qagen/analysis.hpp"
#include "qagen/generator.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"
#include "reference.hpp"
#include "support.hpp"

using namespace qagen;

namespace {

std::vector<std::string> words(const std::string &s) { return tokenize(s); }

}  // namespace

TEST_CASE("identical sentences score one") {
  auto s = words("what is the dosage of |medication| ?");
  CHECK(bleu(s, s) == doctest::Approx(1.0));
  CHECK(bleu(s, s, BleuVariant::Unsmoothed) == doctest::Approx(1.0));
  CHECK(jaccard(s, s) == 1.0);
}

TEST_CASE("short candidate pays the brevity penalty") {
  auto c = words("the cat sat"), r = words("the cat sat down");
  // Every n-gram precision is 1 (4-grams by smoothing), so only the penalty remains.
  CHECK(bleu(c, r) == doctest::Approx(std::exp(1.0 - 4.0 / 3.0)).epsilon(1e-12));
  CHECK(bleu(c, r, BleuVariant::Unsmoothed) == 0.0);
  // Reversed: no penalty; p1 = 3/4 and smoothed p2..p4 = 3/4, 2/3, 1/2.
  CHECK(bleu(r, c) == doctest::Approx(std::pow(0.75 * 0.75 * (2.0 / 3.0) * 0.5, 0.25)).epsilon(1e-12));
}

TEST_CASE("bleu edge cases") {
  CHECK_THROWS_AS(bleu({}, words("a b")), Error);
  CHECK(bleu(words("x y z"), words("a b c")) == 0.0);
}

TEST_CASE("jaccard over lowercased sets") {
  CHECK(jaccard(words("a b c d e"), words("c d e f g")) == doctest::Approx(3.0 / 7.0));
  CHECK(jaccard(words("A a B"), words("b a")) == 1.0);
  CHECK_THROWS_AS(jaccard({}, {}), Error);
}

TEST_CASE("metrics agree with brute force on random sentences") {
  Rng rng(5);
  const std::vector<std::string> vocab = {"the", "a", "dose", "of", "insulin", "what", "is", "?"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> a(1 + rng.below(9)), b(1 + rng.below(9));
    for (auto &w : a) w = rng.pick(vocab);
    for (auto &w : b) w = rng.pick(vocab);
    for (BleuVariant v : {BleuVariant::Smoothed, BleuVariant::Unsmoothed})
      CHECK(std::abs(bleu(a, b, v) - oracle::bleu_reference(a, b, v == BleuVariant::Smoothed)) < 1e-9);
    CHECK(std::abs(jaccard(a, b) - oracle::jaccard_reference(a, b)) < 1e-9);
  }
}

TEST_CASE("diversity skips singletons and scores identical groups at one") {
  DiversityReport r = paraphrase_diversity(
      {{"g1", {"only one"}}, {"g2", {"same words here", "same words here", "Same words here"}}}, 1);
  REQUIRE(r.groups.size() == 1);
  CHECK(r.groups[0].group_id == "g2");
  CHECK(r.groups[0].members == 3);
  CHECK(r.bleu_mean == doctest::Approx(1.0));
  CHECK(r.jaccard_mean == doctest::Approx(1.0));
  CHECK(r.bleu_std == doctest::Approx(0.0));
}

TEST_CASE("diversity of the shipped templates") {
  TemplateStore store =
      load_templates(testing::data_file("templates.tsv"), load_lf_templates(testing::data_file("lf_templates.tsv")));
  DiversityReport a = paraphrase_diversity(store, 42), b = paraphrase_diversity(store, 42);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.groups.size() == store.groups().size());
  CHECK(a.bleu_mean > 0.0);
  CHECK(a.bleu_mean < 1.0);
  CHECK(a.jaccard_mean > 0.0);
  CHECK(a.jaccard_mean < 1.0);
}

TEST_CASE("corpus statistics") {
  AnnotationCorpus corpus = load_corpus(testing::fixture_dir());
  TemplateStore store =
      load_templates(testing::data_file("templates.tsv"), load_lf_templates(testing::data_file("lf_templates.tsv")));
  Dataset d = generate_dataset(corpus, store, default_schema(), load_kb(testing::data_file("kb.tsv")));
  DatasetStats s = corpus_stats(d.records, corpus);
  CHECK(s.records == d.records.size());
  CHECK(s.notes == corpus.documents.size());
  CHECK(s.answered == d.report.total().qa);
  CHECK(s.mean_questions_per_note == doctest::Approx(double(s.answered) / double(s.notes)));
  CHECK(s.mean_question_tokens > 3);
  CHECK(s.mean_evidences_per_question >= 1);
}
