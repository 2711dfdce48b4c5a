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

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qagen/lf.hpp"

namespace qagen {

// Ontology of events, their attributes and the relations between them.
//
// File format (UTF-8, '#' starts a comment):
//
//   [events]
//   MedicationEvent: dosage, frequency, date
//   [relations]
//   given: TrAP            # schema relation: aligned corpus relation types
//   [entity_map]
//   medication: MedicationEvent
//   [kb]
//   lab.reflow, lab.refhigh
struct Schema {
  std::map<std::string, std::set<std::string>> events;
  std::map<std::string, std::set<std::string>> relations;
  std::map<std::string, std::set<std::string>> entity_map;
  std::set<std::string> kb_paths;

  bool has_event(std::string_view name) const;
  bool has_relation(std::string_view name) const;
  // Corpus relation types aligned to a schema relation. A relation declared
  // without an alignment list aligns to its own name.
  std::set<std::string> aligned_relation_types(std::string_view relation) const;
  // Entity types that may fill the given event.
  std::set<std::string> entity_types_for_event(std::string_view event) const;
};

Schema parse_schema(std::string_view text, const std::string &source = "<schema>");
Schema load_schema(const std::filesystem::path &path);
// The shipped default, identical to data/schema.cfg.
Schema default_schema();
const std::string &default_schema_text();

// Empty iff every name used by the logical form is declared.
std::vector<std::string> validate_lf(const Schema &schema, const lf::LogicalForm &lf);

}  // namespace qagen
