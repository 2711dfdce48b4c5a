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

#include <sstream>

#include "fixture_oracle.hpp"
#include "qagen/generator.hpp"
#include "support.hpp"

using namespace qagen;
using testing::write_file;

namespace {

TemplateStore shipped_templates() {
  return load_templates(testing::data_file("templates.tsv"), load_lf_templates(testing::data_file("lf_templates.tsv")));
}

Dataset generate(const AnnotationCorpus &corpus, unsigned jobs = 1) {
  GeneratorConfig config;
  config.jobs = jobs;
  return generate_dataset(corpus, shipped_templates(), default_schema(), load_kb(testing::data_file("kb.tsv")), config);
}

std::string dump(const std::vector<QARecord> &records) {
  std::ostringstream out;
  write_records(out, records);
  return out.str();
}

}  // namespace

TEST_CASE("empty corpus yields no records") {
  testing::TempDir dir;
  Dataset d = generate(load_corpus(dir.path()));
  CHECK(d.records.empty());
  CHECK(d.report.total().ql == 0);
  CHECK(d.report.total().qa == 0);
}

TEST_CASE("dosage question over one medication line") {
  testing::TempDir dir;
  write_file(dir / "docs/d1.txt", "Record Date: 12/14/2115\nInsulin 40mg po q.h.s.\n");
  write_file(dir / "ann/d1.con", "c=\"Insulin\" 2:0 2:0||t=\"medication\"\n");
  write_file(dir / "ann/d1.att", "c=\"Insulin\" 2:0 2:0||t=\"medication\"||a=\"dosage\"=\"40mg\" 2:1 2:1\n");
  write_file(dir / "patients.tsv", "p1\td1\tmedications\n");
  Dataset d = generate(load_corpus(dir.path()));

  const QARecord *dosage = nullptr;
  for (const QARecord &r : d.records)
    if (r.question_template_id == "T001") dosage = &r;
  REQUIRE(dosage);
  CHECK(dosage->question == "What is the dosage of Insulin ?");
  CHECK(serialize_lf(dosage->lf) == "MedicationEvent (Insulin) [dosage=x]");
  CHECK(dosage->patient_id == "p1");
  REQUIRE(dosage->evidences.size() == 1);
  CHECK(dosage->evidences[0].line_text == "Insulin 40mg po q.h.s.");
  CHECK(dosage->evidences[0].answer_entity == "40mg");
  CHECK(dosage->slot_fills == std::vector<SlotFill>{{"medication", "Insulin", "d1#c1"}});

  // The four dosage paraphrases are all answered; frequency and end date are not.
  std::size_t answered = 0, unanswered = 0;
  for (const QARecord &r : d.records) (r.has_answer() ? answered : unanswered)++;
  CHECK(d.report.per_source.at("medications").notes == 1);
  CHECK(d.report.per_source.at("medications").ql == d.records.size());
  CHECK(d.report.per_source.at("medications").qa == answered);
  CHECK(d.report.per_strategy.at("attribute").answered == 4);
  CHECK(unanswered >= 4);
}

TEST_CASE("record ids are dense and ordered") {
  Dataset d = generate(load_corpus(testing::fixture_dir()));
  REQUIRE_FALSE(d.records.empty());
  CHECK(d.records.front().record_id == "r000001");
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%06zu", d.records.size());
  CHECK(d.records.back().record_id == buf);
}

TEST_CASE("fixture counts agree with an independent recount") {
  const auto kb = std::filesystem::path(testing::data_file("kb.tsv"));
  oracle::FixtureCounts expected = oracle::enumerate_fixture(testing::fixture_dir(), kb);
  Dataset d = generate(load_corpus(testing::fixture_dir()));
  std::map<std::string, oracle::Tally> per_template;
  for (const QARecord &r : d.records) {
    oracle::Tally &t = per_template[r.question_template_id];
    ++t.records;
    if (r.has_answer()) ++t.answered;
  }
  for (const auto &[id, tally] : expected.per_template) {
    CHECK_MESSAGE(per_template[id].records == tally.records, id);
    CHECK_MESSAGE(per_template[id].answered == tally.answered, id);
  }
  CHECK(per_template.size() == expected.per_template.size());
  CHECK(oracle::evidence_violations(d.records, testing::fixture_dir()).empty());
}

TEST_CASE("parallel generation matches serial output") {
  AnnotationCorpus corpus = load_corpus(testing::fixture_dir());
  std::string serial = dump(generate(corpus, 1).records);
  CHECK(dump(generate(corpus, 4).records) == serial);
  CHECK(dump(generate(corpus, 3).records) == serial);
}

TEST_CASE("question/logical form view is distinct and sorted") {
  Dataset d = generate(load_corpus(testing::fixture_dir()));
  auto view = ql_view(d.records);
  CHECK(std::is_sorted(view.begin(), view.end()));
  CHECK(std::adjacent_find(view.begin(), view.end()) == view.end());
  CHECK(view.size() <= d.records.size());
}

TEST_CASE("review samples are seeded") {
  Dataset d = generate(load_corpus(testing::fixture_dir()));
  auto a = sample_records(d.records, 20, 3);
  auto b = sample_records(d.records, 20, 3);
  CHECK(a == b);
  CHECK(a.size() == 20);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(sample_records(d.records, 100000, 3).size() == d.records.size());
}
