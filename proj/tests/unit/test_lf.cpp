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

#include "qagen/rng.hpp"
#include "qagen/schema.hpp"
#include "reference.hpp"

using namespace qagen;
using namespace qagen::lf;

TEST_CASE("dosage question form") {
  LogicalForm lf = parse_lf("MedicationEvent (|medication|) [dosage=x]");
  REQUIRE(lf.root.is_event());
  const EventNode &e = lf.root.event();
  CHECK(e.event_name == "MedicationEvent");
  CHECK(std::get<Placeholder>(e.argument).entity_type == "medication");
  REQUIRE(e.attributes.size() == 1);
  CHECK(e.attributes[0].name == "dosage");
  CHECK(std::holds_alternative<AnswerVar>(e.attributes[0].binding));
  CHECK_FALSE(e.attributes[0].op);
}

TEST_CASE("relation to a braced disjunction") {
  LogicalForm lf = parse_lf("MedicationEvent(|medication|)given{ConditionEvent(x) OR SymptomEvent(x)}");
  REQUIRE_FALSE(lf.root.is_event());
  const Composite &c = lf.root.composite();
  CHECK(c.connective == Connective::Rel("given"));
  CHECK(c.left.event().event_name == "MedicationEvent");
  const Composite &r = c.right.composite();
  CHECK(r.connective == Connective::Or());
  CHECK(std::holds_alternative<AnswerVar>(r.left.event().argument));
  CHECK(r.right.event().event_name == "SymptomEvent");
}

TEST_CASE("comparison against a knowledge-base reference") {
  LogicalForm lf = parse_lf("LabEvent (x) [date=x, (result=x)>lab.refhigh]");
  const EventNode &e = lf.root.event();
  REQUIRE(e.attributes.size() == 2);
  CHECK_FALSE(e.attributes[0].op);
  const Compare &cmp = std::get<Compare>(*e.attributes[1].op);
  CHECK(cmp.comparison == Comparison::Greater);
  CHECK(std::get<KbRef>(cmp.operand).path == "lab.refhigh");
}

TEST_CASE("serializer writes the canonical spacing") {
  EventNode e{"MedicationEvent", Placeholder{"medication"}, {AttributeSlot{"enddate", AnswerVar{}, std::nullopt}}};
  CHECK(serialize_lf(LogicalForm{e}) == "MedicationEvent (|medication|) [enddate=x]");
  CHECK(serialize_lf(parse_lf("LabEvent(x)[date=x,(result=x)>lab.refhigh]")) ==
        "LabEvent (x) [date=x, (result=x)>lab.refhigh]");
}

TEST_CASE("operators of every kind survive a round trip") {
  for (const char *s : {"LabEvent (|test|) [(date=x)sort(desc), result=x]",
                        "LabEvent (|test|) [(result=x)range(lab.reflow, lab.refhigh)]",
                        "LabEvent (|test|) [(result=x)range(*, 5)]", "MedicationEvent (x) [(enddate=x)isnull]",
                        "LabEvent (|test|) [(date=x)=2115-12-14, result=x]", "LabEvent (|test|) [(result=x)<=7.5]"}) {
    LogicalForm lf = parse_lf(s);
    CHECK(serialize_lf(lf) == s);
    CHECK(parse_lf(serialize_lf(lf)) == lf);
  }
}

TEST_CASE("random trees round trip") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    LogicalForm lf = oracle::sample_lf(rng, 4);
    CHECK(oracle::lf_depth(lf.root) <= 4);
    std::string text = serialize_lf(lf);
    CHECK_MESSAGE(parse_lf(text) == lf, text);
    CHECK(serialize_lf(parse_lf(text)) == text);
  }
}

TEST_CASE("literal equality does not reorder disjunctions") {
  LogicalForm a = parse_lf("{ConditionEvent (x) OR SymptomEvent (x)}");
  LogicalForm b = parse_lf("{SymptomEvent (x) OR ConditionEvent (x)}");
  CHECK(lf_equal(a, a));
  CHECK_FALSE(lf_equal(a, b));
  CHECK_FALSE(lf_equal(parse_lf("MedicationEvent (|medication|) [dosage=x]"),
                       parse_lf("MedicationEvent (|medication|) [enddate=x]")));
}

TEST_CASE("syntax errors carry a position and the expected tokens") {
  try {
    parse_lf("MedicationEvent (|medication|) [dosage=x] given");
    FAIL("no error");
  } catch (const ParseError &e) {
    CHECK(e.kind() == ParseErrorKind::Syntax);
    CHECK(e.position() > 0);
  }
  try {
    parse_lf("MedicationEvent (|medication| [dosage=x]");
    FAIL("no error");
  } catch (const ParseError &e) {
    CHECK(e.kind() == ParseErrorKind::Unbalanced);
  }
  CHECK_THROWS_AS(parse_lf(""), ParseError);
  CHECK_THROWS_AS(parse_lf("{A (x) OR B (x)"), ParseError);
}

TEST_CASE("parser never crashes on arbitrary bytes") {
  Rng rng(1);
  const std::string alphabet = "(){}[]|x=<>,. /\"\\azLE0123456789";
  for (int i = 0; i < 2000; ++i) {
    std::string s(rng.below(30), ' ');
    for (char &c : s) c = alphabet[rng.below(alphabet.size())];
    try {
      LogicalForm lf = parse_lf(s);
      CHECK(parse_lf(serialize_lf(lf)) == lf);
    } catch (const ParseError &) {
    }
  }
}

TEST_CASE("properties of the question forms") {
  LfProperties p = classify_lf(parse_lf("MedicationEvent (|medication|) [dosage=x]"));
  CHECK(p.fine_grained_answer);
  CHECK_FALSE(p.coarse_grained_answer);
  CHECK_FALSE(p.has_operator);
  CHECK_FALSE(p.needs_kb);
  CHECK(p.relation_count == 0);

  p = classify_lf(parse_lf("LabEvent (x) [date=x, (result=x)>lab.refhigh]"));
  CHECK(p.has_operator);
  CHECK(p.needs_kb);
  CHECK(p.coarse_grained_answer);

  p = classify_lf(parse_lf("LabEvent (x) [date=x, result=x] conducted/reveals ConditionEvent (|problem|)"));
  CHECK(p.relation_count == 1);
}

TEST_CASE("kb references only occur under operators") {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    LfProperties p = classify_lf(oracle::sample_lf(rng, 3));
    if (p.needs_kb) CHECK(p.has_operator);
  }
}

TEST_CASE("placeholder listing follows leaf order") {
  LogicalForm lf = parse_lf("MedicationEvent (|medication|) improves ConditionEvent (|problem|)");
  CHECK(placeholder_types(lf) == std::vector<std::string>{"medication", "problem"});
  CHECK_FALSE(has_answer_var(lf));
}
