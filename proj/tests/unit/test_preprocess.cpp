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

using namespace qagen;

TEST_CASE("leading determiners and possessives are dropped") {
  CHECK(preprocess_entity("his home regimen") == "home regimen");
  CHECK(preprocess_entity("the patient's Lasix") == "Lasix");
  CHECK(preprocess_entity("An ECG") == "ECG");
}

TEST_CASE("clean surfaces pass unchanged") {
  CHECK(preprocess_entity("Nitroglycerin") == "Nitroglycerin");
  CHECK(preprocess_entity("HBA1C") == "HBA1C");
  CHECK(preprocess_entity("vitamin B12 (oral)") == "vitamin B12 (oral)");
}

TEST_CASE("trailing punctuation and spacing") {
  CHECK(preprocess_entity("the ffp .") == "ffp");
  CHECK(preprocess_entity("  chest   pain ,") == "chest pain");
  CHECK(preprocess_entity("HIV+") == "HIV+");
}

TEST_CASE("nothing left means rejection") {
  CHECK_FALSE(preprocess_entity("the"));
  CHECK_FALSE(preprocess_entity("his ."));
  CHECK_FALSE(preprocess_entity(""));
}

TEST_CASE("locating text in a line keeps the line's spelling") {
  CHECK(locate_in_line("Insulin 40mg po q.h.s.", "insulin") == "Insulin");
  CHECK_FALSE(locate_in_line("Insulin", "insulin glargine"));
  CHECK_FALSE(locate_in_line("abc", ""));
}
