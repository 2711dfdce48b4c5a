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

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "qagen/generator.hpp"

namespace qagen {

using ojson = nlohmann::ordered_json;

std::string record_to_json(const QARecord &r) {
  ojson j;
  j["record_id"] = r.record_id;
  j["patient_id"] = r.patient_id;
  j["question"] = r.question;
  j["logical_form"] = lf::serialize_lf(r.lf);
  j["lf_template_id"] = r.lf_template_id;
  j["question_template_id"] = r.question_template_id;
  ojson evidences = ojson::array();
  for (const EvidenceSpan &e : r.evidences) {
    ojson ej;
    ej["doc_id"] = e.doc_id;
    ej["line"] = e.line;
    ej["char_start"] = e.char_start;
    ej["char_end"] = e.char_end;
    ej["line_text"] = e.line_text;
    if (e.answer_entity) ej["answer_entity"] = *e.answer_entity;
    evidences.push_back(std::move(ej));
  }
  j["evidences"] = std::move(evidences);
  if (!r.answer_class.empty()) j["answer_class"] = r.answer_class;
  ojson fills = ojson::array();
  for (const SlotFill &f : r.slot_fills)
    fills.push_back(ojson{{"entity_type", f.entity_type}, {"surface", f.surface}, {"source", f.source}});
  j["slot_fills"] = std::move(fills);
  return j.dump();
}

QARecord record_from_json(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const ojson::exception &e) {
    throw Error(std::string("invalid record: ") + e.what());
  }
  try {
    QARecord r;
    r.record_id = j.at("record_id").get<std::string>();
    r.patient_id = j.at("patient_id").get<std::string>();
    r.question = j.at("question").get<std::string>();
    r.lf = lf::parse_lf(j.at("logical_form").get<std::string>());
    r.lf_template_id = j.at("lf_template_id").get<std::string>();
    r.question_template_id = j.at("question_template_id").get<std::string>();
    for (const ojson &ej : j.at("evidences")) {
      EvidenceSpan e;
      e.doc_id = ej.at("doc_id").get<std::string>();
      e.line = ej.at("line").get<int>();
      e.char_start = ej.at("char_start").get<std::size_t>();
      e.char_end = ej.at("char_end").get<std::size_t>();
      e.line_text = ej.at("line_text").get<std::string>();
      if (ej.contains("answer_entity")) e.answer_entity = ej["answer_entity"].get<std::string>();
      r.evidences.push_back(std::move(e));
    }
    if (j.contains("answer_class")) r.answer_class = j["answer_class"].get<std::vector<std::string>>();
    if (j.contains("slot_fills")) {
      for (const ojson &fj : j["slot_fills"])
        r.slot_fills.push_back(SlotFill{fj.at("entity_type").get<std::string>(), fj.at("surface").get<std::string>(),
                                        fj.value("source", std::string())});
    }
    return r;
  } catch (const ojson::exception &e) {
    throw Error(std::string("invalid record: ") + e.what());
  }
}

void write_records(std::ostream &out, const std::vector<QARecord> &records) {
  for (const QARecord &r : records) out << record_to_json(r) << '\n';
}

std::vector<QARecord> read_records(std::istream &in, const std::string &source) {
  std::vector<QARecord> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const Error &e) {
      throw FormatError(source, n, e.what());
    }
  }
  return out;
}

std::vector<QARecord> load_records(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return read_records(in, path.string());
}

void save_records(const std::filesystem::path &path, const std::vector<QARecord> &records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_records(out, records);
}

}  // namespace qagen
