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

#include "qagen/schema.hpp"

#include <fstream>
#include <sstream>

#include "qagen/error.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

const char *const kDefaultSchema = R"(# Default ontology for clinical logical forms.
#
# [events]      event: allowed attribute names
# [relations]   relation: corpus relation types aligned to it
# [entity_map]  placeholder entity type: events it may fill
# [kb]          allowed knowledge-base reference paths

[events]
MedicationEvent: dosage, frequency, duration, route, date, startdate, enddate, status
LabEvent: result, date, startdate, enddate, status
ProcedureEvent: result, date, startdate, enddate, status
ConditionEvent: date, startdate, enddate, status
SymptomEvent: date, startdate, enddate, status

[relations]
given: TrAP
conducted/reveals: TeRP, TeCP
conducted: TeCP, TeRP
reveals: TeRP
improves/worsens/causes: TrIP, TrWP, TrCP
improves: TrIP
worsens: TrWP
causes: TrCP

[entity_map]
problem: ConditionEvent, SymptomEvent
test: LabEvent, ProcedureEvent
treatment: MedicationEvent, ProcedureEvent
mode: MedicationEvent
medication: MedicationEvent

[kb]
lab.reflow, lab.refhigh
)";

std::set<std::string> parse_list(std::string_view text) {
  std::set<std::string> out;
  for (const std::string &item : split(text, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.insert(t);
  }
  return out;
}

enum class Section { None, Events, Relations, EntityMap, Kb };

void check_operand(const Schema &schema, const lf::Operand &operand, std::vector<std::string> &out) {
  if (const auto *kb = std::get_if<lf::KbRef>(&operand)) {
    if (!schema.kb_paths.count(kb->path)) out.push_back("unknown kb path " + kb->path);
  }
}

void check_node(const Schema &schema, const lf::Node &node, std::vector<std::string> &out) {
  if (!node.is_event()) {
    const lf::Composite &c = node.composite();
    check_node(schema, c.left, out);
    if (c.connective.kind == lf::ConnectiveKind::Relation && !schema.has_relation(c.connective.relation))
      out.push_back("unknown relation " + c.connective.relation);
    check_node(schema, c.right, out);
    return;
  }
  const lf::EventNode &event = node.event();
  auto it = schema.events.find(event.event_name);
  if (it == schema.events.end()) {
    out.push_back("unknown event " + event.event_name);
  }
  if (const auto *p = std::get_if<lf::Placeholder>(&event.argument)) {
    auto em = schema.entity_map.find(p->entity_type);
    if (em == schema.entity_map.end())
      out.push_back("unknown entity type " + p->entity_type);
    else if (it != schema.events.end() && !em->second.count(event.event_name))
      out.push_back("entity type " + p->entity_type + " cannot fill " + event.event_name);
  }
  for (const lf::AttributeSlot &slot : event.attributes) {
    if (it != schema.events.end() && !it->second.count(slot.name))
      out.push_back("unknown attribute " + slot.name + " on " + event.event_name);
    if (!slot.op) continue;
    if (const auto *c = std::get_if<lf::Compare>(&*slot.op)) {
      check_operand(schema, c->operand, out);
    } else if (const auto *r = std::get_if<lf::Range>(&*slot.op)) {
      if (r->low) check_operand(schema, *r->low, out);
      if (r->high) check_operand(schema, *r->high, out);
    }
  }
}

}  // namespace

bool Schema::has_event(std::string_view name) const { return events.count(std::string(name)) > 0; }

bool Schema::has_relation(std::string_view name) const {
  return relations.count(std::string(name)) > 0;
}

std::set<std::string> Schema::aligned_relation_types(std::string_view relation) const {
  auto it = relations.find(std::string(relation));
  if (it == relations.end()) return {};
  if (it->second.empty()) return {std::string(relation)};
  return it->second;
}

std::set<std::string> Schema::entity_types_for_event(std::string_view event) const {
  std::set<std::string> out;
  for (const auto &[type, events_for_type] : entity_map)
    if (events_for_type.count(std::string(event))) out.insert(type);
  return out;
}

Schema parse_schema(std::string_view text, const std::string &source) {
  Schema schema;
  Section section = Section::None;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError(source, line_no, "malformed section header");
      std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
      if (name == "events") section = Section::Events;
      else if (name == "relations") section = Section::Relations;
      else if (name == "entity_map") section = Section::EntityMap;
      else if (name == "kb") section = Section::Kb;
      else throw FormatError(source, line_no, "unknown section [" + name + "]");
      continue;
    }
    if (section == Section::None) throw FormatError(source, line_no, "entry outside of a section");
    if (section == Section::Kb) {
      for (const std::string &path : parse_list(line)) {
        if (path.find('.') == std::string::npos)
          throw FormatError(source, line_no, "kb path needs at least two segments: " + path);
        schema.kb_paths.insert(path);
      }
      continue;
    }
    std::string key = line;
    std::set<std::string> values;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      key = trim(std::string_view(line).substr(0, colon));
      values = parse_list(std::string_view(line).substr(colon + 1));
    } else if (section != Section::Relations) {
      throw FormatError(source, line_no, "expected 'name: values'");
    }
    if (key.empty()) throw FormatError(source, line_no, "empty name");
    auto &target = section == Section::Events      ? schema.events
                   : section == Section::Relations ? schema.relations
                                                   : schema.entity_map;
    if (target.count(key)) {
      const char *what = section == Section::Events      ? "event"
                         : section == Section::Relations ? "relation"
                                                         : "entity type";
      throw FormatError(source, line_no, std::string("duplicate ") + what + " " + key);
    }
    target.emplace(key, std::move(values));
  }
  if (schema.events.empty()) throw FormatError(source, line_no, "schema has no events");
  return schema;
}

Schema load_schema(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read schema " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_schema(buffer.str(), path.string());
}

const std::string &default_schema_text() {
  static const std::string text = kDefaultSchema;
  return text;
}

Schema default_schema() { return parse_schema(default_schema_text(), "<default schema>"); }

std::vector<std::string> validate_lf(const Schema &schema, const lf::LogicalForm &lf) {
  std::vector<std::string> out;
  check_node(schema, lf.root, out);
  return out;
}

}  // namespace qagen
