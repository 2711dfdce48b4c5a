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

#include "qagen/baselines.hpp"

using namespace qagen;

namespace {

LfTemplateMap lfs() {
  return parse_lf_templates(
      "L1\tMedicationEvent (|medication|) [dosage=x]\n"
      "L2\tMedicationEvent (|medication|) [frequency=x]\n");
}

std::vector<QuestionTemplate> templates() {
  return parse_templates("T1\tL1\talpha |medication|\nT2\tL2\tbeta |medication|\n", lfs()).templates();
}

// alpha and the query gamma are 0.98 apart in cosine, beta and gamma 0.60.
WordVectors toy_vectors() {
  const double g = std::acos(0.98);
  const double b = g + std::acos(0.60);
  WordVectors v;
  v.add("alpha", {1.0, 0.0});
  v.add("gamma", {std::cos(g), std::sin(g)});
  v.add("beta", {std::cos(b), std::sin(b)});
  return v;
}

GazetteerRecognizer lexicon() {
  GazetteerRecognizer g;
  g.add("insulin", "medication");
  return g;
}

}  // namespace

TEST_CASE("HM1 needs an identical template") {
  HeuristicMatcher m(templates(), lfs(), HmMode::HM1);
  HmPrediction hit = m.predict(lexicon(), "Alpha  INSULIN");
  REQUIRE(hit.lf);
  CHECK(hit.template_id == "T1");
  CHECK(serialize_lf(*hit.lf) == "MedicationEvent (INSULIN) [dosage=x]");
  HmPrediction miss = m.predict(lexicon(), "alpha of insulin");
  CHECK_FALSE(miss.lf);
  CHECK_FALSE(miss.reason.empty());
}

TEST_CASE("HM1 rejects fills that do not fit") {
  HeuristicMatcher m(templates(), lfs(), HmMode::HM1);
  CHECK_FALSE(m.predict_normalized({"alpha |medication|", {}}).lf);
}

TEST_CASE("HM2 picks the nearest template") {
  WordVectors v = toy_vectors();
  HeuristicMatcher m(templates(), lfs(), HmMode::HM2, &v);
  HmPrediction p = m.predict(lexicon(), "gamma insulin");
  REQUIRE(p.lf);
  CHECK(p.template_id == "T1");
  CHECK(p.score == doctest::Approx(0.98));
  CHECK(cosine(*v.find("gamma"), *v.find("beta")) == doctest::Approx(0.60));
  CHECK_FALSE(m.predict(lexicon(), "unknown insulin").lf);
}

TEST_CASE("HM2 is invariant to vector scale") {
  WordVectors v = toy_vectors();
  HeuristicMatcher m(templates(), lfs(), HmMode::HM2, &v);
  HmPrediction before = m.predict(lexicon(), "gamma insulin");
  WordVectors scaled = toy_vectors();
  scaled.scale(7.5);
  HeuristicMatcher ms(templates(), lfs(), HmMode::HM2, &scaled);
  HmPrediction after = ms.predict(lexicon(), "gamma insulin");
  CHECK(after.template_id == before.template_id);
  CHECK(after.score == doctest::Approx(before.score));
}

TEST_CASE("HM2 needs vectors") {
  CHECK_THROWS_AS(HeuristicMatcher(templates(), lfs(), HmMode::HM2), Error);
}

TEST_CASE("accuracy counts exact logical forms") {
  auto a = lf::parse_lf("MedicationEvent (insulin) [dosage=x]");
  auto b = lf::parse_lf("MedicationEvent (insulin) [frequency=x]");
  CHECK(eval_ql_accuracy({a, b, std::nullopt, a}, {a, a, a, a}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(eval_ql_accuracy({a}, {a, a}), Error);
}

TEST_CASE("oracle recognizer holds the slot fills") {
  QARecord r;
  r.slot_fills = {{"medication", "Insulin", ""}, {"problem", "chest pain", ""}};
  GazetteerRecognizer g = oracle_recognizer({r});
  CHECK(g.size() == 2);
  CHECK(g.recognize("did insulin help the chest pain").size() == 2);
}
