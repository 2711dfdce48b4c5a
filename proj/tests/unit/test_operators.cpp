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

#include "qagen/generator.hpp"
#include "support.hpp"

using namespace qagen;
using testing::write_file;

namespace {

struct Labs {
  testing::TempDir dir;
  AnnotationCorpus corpus;
  RefRangeKb kb = load_kb(testing::data_file("kb.tsv"));

  Labs() {
    write_file(dir / "docs/d1.txt",
               "Record Date: 03/02/2116\n"
               "gluc 192, LDL 115, TG 71, HDL 36\n"
               "HBA1C 12/14/2115 11.80\n"
               "HBA1C 01/20/2116 9.10\n"
               "CEA pending\n");
    write_file(dir / "ann/d1.con",
               "c=\"gluc\" 2:0 2:0||t=\"test\"\n"
               "c=\"LDL\" 2:2 2:2||t=\"test\"\n"
               "c=\"TG\" 2:4 2:4||t=\"test\"\n"
               "c=\"HDL\" 2:6 2:6||t=\"test\"\n"
               "c=\"HBA1C\" 3:0 3:0||t=\"test\"\n"
               "c=\"HBA1C\" 4:0 4:0||t=\"test\"\n"
               "c=\"CEA\" 5:0 5:0||t=\"test\"\n");
    corpus = load_corpus(dir.path());
    REQUIRE(corpus.violations.empty());
  }

  Candidate candidate(std::size_t i) const {
    const ConceptAnn &c = corpus.concepts.at(i);
    const Document &d = *corpus.find_document(c.doc_id);
    Candidate out;
    out.evidence = line_evidence(d, c.span.line, c.surface);
    out.lab_name = c.surface;
    out.record_date = d.record_date;
    if (auto v = resolve_field(corpus, c, "result")) out.value = v->number;
    if (auto v = resolve_field(corpus, c, "date")) out.date = v->date;
    return out;
  }

  std::vector<Candidate> all() const {
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < corpus.concepts.size(); ++i) out.push_back(candidate(i));
    return out;
  }
};

std::vector<std::string> names(const OperatorResult &r) {
  std::vector<std::string> out;
  for (const Candidate &c : r.kept) out.push_back(*c.evidence.answer_entity);
  return out;
}

lf::Operator op_of(const std::string &lf_text) {
  return *lf::parse_lf(lf_text).root.event().attributes.at(0).op;
}

}  // namespace

TEST_CASE("result values are read after the lab name") {
  Labs labs;
  CHECK(labs.candidate(0).value == 192.0);
  CHECK(labs.candidate(1).value == 115.0);
  CHECK(labs.candidate(3).value == 36.0);
  CHECK(labs.candidate(4).value == doctest::Approx(11.80));
  CHECK(labs.candidate(4).date->iso() == "2115-12-14");
  CHECK_FALSE(labs.candidate(6).value);
}

TEST_CASE("comparison against a literal keeps only passing mentions") {
  Labs labs;
  std::vector<Candidate> all = labs.all();
  std::vector<Candidate> line2(all.begin(), all.begin() + 4);
  OperatorResult r = eval_operator(op_of("LabEvent (x) [(result=x)>100]"), "result", line2, labs.kb);
  CHECK(names(r) == std::vector<std::string>{"gluc", "LDL"});
  CHECK(r.unparseable == 0);
}

TEST_CASE("date equality picks the dated mention") {
  Labs labs;
  std::vector<Candidate> hba = {labs.candidate(4), labs.candidate(5)};
  OperatorResult r = eval_operator(op_of("LabEvent (x) [(date=x)=2115-12-14]"), "date", hba, labs.kb);
  REQUIRE(r.kept.size() == 1);
  CHECK(r.kept[0].evidence.line_text == "HBA1C 12/14/2115 11.80");
  CHECK(eval_operator(op_of("LabEvent (x) [(date=x)=12/14/2115]"), "date", hba, labs.kb).kept.size() == 1);
}

TEST_CASE("reference ranges come from the knowledge base") {
  Labs labs;
  OperatorResult r = eval_operator(op_of("LabEvent (x) [(result=x)>lab.refhigh]"), "result", labs.all(), labs.kb);
  // TG 71 and HDL 36 are below their bounds, both HBA1C values above 5.6.
  CHECK(names(r) == std::vector<std::string>{"gluc", "LDL", "HBA1C", "HBA1C"});
  CHECK(r.unparseable == 1);
  CHECK(r.missing_kb == 0);
  std::vector<Candidate> unknown = {labs.candidate(1)};
  unknown[0].lab_name = "ferritin";
  r = eval_operator(op_of("LabEvent (x) [(result=x)>lab.refhigh]"), "result", unknown, labs.kb);
  CHECK(r.kept.empty());
  CHECK(r.missing_kb == 1);
  r = eval_operator(op_of("LabEvent (x) [(result=x)<lab.reflow]"), "result", labs.all(), labs.kb);
  CHECK(names(r) == std::vector<std::string>{"HDL"});
}

TEST_CASE("ranges and null checks") {
  Labs labs;
  OperatorResult r = eval_operator(op_of("LabEvent (x) [(result=x)range(50, 150)]"), "result", labs.all(), labs.kb);
  CHECK(names(r) == std::vector<std::string>{"LDL", "TG"});
  r = eval_operator(op_of("LabEvent (x) [(result=x)range(*, 40)]"), "result", labs.all(), labs.kb);
  CHECK(names(r) == std::vector<std::string>{"HDL", "HBA1C", "HBA1C"});
  r = eval_operator(op_of("LabEvent (x) [(result=x)isnull]"), "result", labs.all(), labs.kb);
  CHECK(names(r) == std::vector<std::string>{"CEA"});
  r = eval_operator(op_of("LabEvent (x) [(result=x)notnull]"), "result", labs.all(), labs.kb);
  CHECK(r.kept.size() == 6);
}

TEST_CASE("sorting by date falls back to the record date") {
  Labs labs;
  OperatorResult r = eval_operator(op_of("LabEvent (x) [(date=x)sort(desc)]"), "date", labs.all(), labs.kb);
  REQUIRE(r.kept.size() == 7);
  // Undated mentions carry the record date 03/02/2116 and stay in input order.
  CHECK(r.kept[0].evidence.answer_entity == "gluc");
  CHECK(r.kept[5].evidence.line_text == "HBA1C 01/20/2116 9.10");
  CHECK(r.kept[6].evidence.line_text == "HBA1C 12/14/2115 11.80");
  r = eval_operator(op_of("LabEvent (x) [(result=x)sort(asc)]"), "result", labs.all(), labs.kb);
  CHECK(names(r).front() == "HBA1C");
  CHECK(names(r).back() == "gluc");
}

TEST_CASE("empty candidate lists and bad operands") {
  Labs labs;
  CHECK(eval_operator(op_of("LabEvent (x) [(result=x)>100]"), "result", {}, labs.kb).kept.empty());
  CHECK_THROWS_AS(eval_operator(op_of("LabEvent (x) [(date=x)>lab.refhigh]"), "date", labs.all(), labs.kb), Error);
  CHECK_THROWS_AS(eval_operator(op_of("LabEvent (x) [(result=x)>high]"), "result", labs.all(), labs.kb), Error);
}

TEST_CASE("kb parsing") {
  RefRangeKb kb = parse_kb("# lab\treflow\trefhigh\nLDL\t0\t100\tmg/dl\n");
  CHECK(kb.resolve("lab.refhigh", "ldl") == 100.0);
  CHECK(kb.resolve("lab.reflow", "LDL") == 0.0);
  CHECK_FALSE(kb.resolve("lab.refhigh", "HDL"));
  CHECK_THROWS_AS(parse_kb("LDL\tzero\t100\n"), FormatError);
}
