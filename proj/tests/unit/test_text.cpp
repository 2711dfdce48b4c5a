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

#include "qagen/dates.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"

using namespace qagen;

TEST_CASE("tokenizer splits edge punctuation and keeps placeholders") {
  CHECK(tokenize("What is the dosage of |medication| ?") ==
        std::vector<std::string>{"What", "is", "the", "dosage", "of", "|medication|", "?"});
  CHECK(tokenize("(BMI: 33.4)") == std::vector<std::string>{"(", "BMI", ":", "33.4", ")"});
  CHECK(tokenize("patient's mg/dl 2115-12-14") == std::vector<std::string>{"patient's", "mg/dl", "2115-12-14"});
  CHECK(tokenize("   ").empty());
}

TEST_CASE("token offsets point back into the text") {
  std::string text = "Show me any LDL > 100 mg/dl ?";
  for (const Token &t : tokenize_with_offsets(text)) CHECK(text.substr(t.begin, t.end - t.begin) == t.text);
}

TEST_CASE("placeholder tokens") {
  CHECK(is_placeholder_token("|problem|"));
  CHECK_FALSE(is_placeholder_token("||"));
  CHECK_FALSE(is_placeholder_token("|a|b|"));
  CHECK(placeholder_type("|test|") == "test");
}

TEST_CASE("string helpers") {
  CHECK(collapse_whitespace("  a \t b  ") == "a b");
  CHECK(split("a\t\tb", '\t') == std::vector<std::string>{"a", "", "b"});
  CHECK(iequals("LDL", "ldl"));
  CHECK(canonical_text("What is  the Dosage of |medication|?") == "what is the dosage of |medication| ?");
}

TEST_CASE("dates in the three accepted layouts") {
  CHECK(parse_date("12/14/2115")->iso() == "2115-12-14");
  CHECK(parse_date("2115-12-14")->iso() == "2115-12-14");
  CHECK(parse_date("12/14/15")->iso() == "1915-12-14");
  CHECK(parse_date("12/14/15", DateConfig{2100})->iso() == "2115-12-14");
  CHECK_FALSE(parse_date("02/30/2115"));
  CHECK_FALSE(parse_date("13/01/2115"));
  CHECK_FALSE(parse_date("11.80"));
  CHECK(*parse_date("03/02/2116") > *parse_date("12/14/2115"));
}

TEST_CASE("rng is reproducible and below() stays in range") {
  Rng a(3), b(3);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.below(7);
    CHECK(x == b.below(7));
    CHECK(x < 7);
  }
  std::vector<int> v = {1, 2, 3, 4, 5};
  Rng(9).shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{1, 2, 3, 4, 5});
}
