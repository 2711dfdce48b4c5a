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

#include <cstdio>
#include <fstream>
#include <set>

#include "qagen/corpus.hpp"
#include "qagen/rng.hpp"
#include "qagen/text.hpp"

namespace qagen {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kMedications = {"Lisinopril", "Metformin",  "Insulin",  "Aspirin",
                                               "Atorvastatin", "Metoprolol", "Warfarin", "Nitroglycerin",
                                               "Furosemide",  "Amiodarone"};
const std::vector<std::string> kDoses = {"40mg", "20mg", "10mg", "500mg", "81mg", "325mg", "5mg", "0.4mg"};
const std::vector<std::string> kFrequencies = {"daily", "b.i.d.", "t.i.d.", "q.h.s."};
const std::vector<std::string> kProblems = {"hypertension",     "diabetes",           "chest pain",
                                            "anemia",           "atrial fibrillation", "hyperlipidemia",
                                            "shortness of breath", "pneumonia"};
const std::vector<std::string> kTests = {"echocardiogram", "chest x-ray", "CT scan", "EKG", "stress test"};
struct LabSpec {
  std::string name;
  int low;  // value range in tenths
  int high;
  bool decimal;
};
const std::vector<LabSpec> kLabs = {{"creatinine", 5, 25, true}, {"potassium", 30, 58, true},
                                    {"hemoglobin", 80, 170, true}, {"LDL", 600, 1900, false},
                                    {"HDL", 250, 800, false},       {"TG", 500, 3000, false},
                                    {"gluc", 600, 2500, false}};
const std::vector<std::string> kProcedures = {"ascending aortic root replacement", "CABG", "appendectomy",
                                              "cholecystectomy", "pacemaker placement"};
const std::vector<std::string> kOutcomes = {"chest open", "hypotension", "bleeding", "fever", "atrial flutter"};
const std::vector<std::string> kSources = {"relations", "medications", "heart_disease", "obesity", "smoking"};
const std::vector<std::string> kComorbidities = {"CAD", "diabetes", "hyperlipidemia", "hypertension"};
const std::vector<std::string> kSmoking = {"current smoker", "non-smoker", "past smoker", "unknown"};

std::string two(int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", v);
  return buf;
}

std::string lab_value(Rng &rng, const LabSpec &lab) {
  int tenths = lab.low + static_cast<int>(rng.below(static_cast<std::uint64_t>(lab.high - lab.low + 1)));
  if (!lab.decimal) return std::to_string(tenths / 10);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string us_date(int y, int m, int d) { return two(m) + "/" + two(d) + "/" + std::to_string(y); }

class NoteBuilder {
 public:
  explicit NoteBuilder(std::string record_date) { lines_.push_back("Record Date: " + record_date); }

  int add_line(const std::string &text) {
    lines_.push_back(text);
    return static_cast<int>(lines_.size());
  }

  // Span of the first occurrence of `phrase` (whitespace tokens) on line n.
  std::string span(int line, const std::string &phrase, int from_token = 0) const {
    std::vector<Token> tokens = whitespace_tokens(lines_.at(line - 1));
    std::vector<Token> words = whitespace_tokens(phrase);
    for (std::size_t i = from_token; i + words.size() <= tokens.size(); ++i) {
      bool hit = true;
      for (std::size_t k = 0; k < words.size(); ++k)
        if (tokens[i + k].text != words[k].text) hit = false;
      if (hit) {
        return std::to_string(line) + ":" + std::to_string(i) + " " + std::to_string(line) + ":" +
               std::to_string(i + words.size() - 1);
      }
    }
    throw Error("synth: phrase '" + phrase + "' not on line " + std::to_string(line));
  }

  std::string mention(int line, const std::string &phrase, int from_token = 0) const {
    return "c=\"" + phrase + "\" " + span(line, phrase, from_token);
  }

  const std::vector<std::string> &lines() const { return lines_; }

 private:
  std::vector<std::string> lines_;
};

struct Files {
  std::vector<std::string> con, att, rel, chains;
};

void write_lines(const fs::path &path, const std::vector<std::string> &lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (const std::string &l : lines) out << l << '\n';
}

}  // namespace

SynthSummary synth_corpus(std::uint64_t seed, const SynthParams &params, const fs::path &root) {
  if (params.patients <= 0 || params.notes_per_patient <= 0)
    throw Error("synth: patients and notes_per_patient must be positive");
  if (params.medication_lines < 0 || params.lab_lines < 0 || params.relation_lines < 0 ||
      params.procedure_episodes < 0)
    throw Error("synth: line counts must be non-negative");

  fs::create_directories(root / "docs");
  fs::create_directories(root / "ann");
  Rng rng(seed);
  SynthSummary summary;
  std::vector<std::string> patients_tsv, classes_tsv;

  for (int p = 1; p <= params.patients; ++p) {
    std::string patient = "P" + std::string(p < 100 ? "0" : "") + (p < 10 ? "0" : "") + std::to_string(p);
    const std::string &source = kSources[static_cast<std::size_t>(p - 1) % kSources.size()];
    const bool coref_layer = source != "medications";
    int year = 2110 + static_cast<int>(rng.below(6));

    for (int n = 1; n <= params.notes_per_patient; ++n) {
      std::string doc_id = patient + "_" + two(n);
      patients_tsv.push_back(patient + "\t" + doc_id + "\t" + source);
      NoteBuilder note(us_date(year + n - 1, 1 + static_cast<int>(rng.below(12)), 1 + static_cast<int>(rng.below(28))));
      Files files;

      std::vector<std::string> meds = kMedications;
      rng.shuffle(meds);
      for (int i = 0; i < params.medication_lines && i < static_cast<int>(meds.size()); ++i) {
        const std::string &med = meds[i];
        std::string dose = rng.pick(kDoses);
        int line = note.add_line(med + " " + dose + " po " + rng.pick(kFrequencies));
        std::string owner = note.mention(line, med);
        files.con.push_back(owner + "||t=\"medication\"");
        files.att.push_back(owner + "||t=\"medication\"||a=\"dosage\"=\"" + dose + "\" " + note.span(line, dose));
        if (rng.below(3) == 0) {
          std::string dose2 = rng.pick(kDoses);
          int later = note.add_line(med + " was increased to " + dose2 + " .");
          files.att.push_back(owner + "||t=\"medication\"||a=\"dosage\"=\"" + dose2 + "\" " +
                              note.span(later, dose2));
        }
      }

      if (source == "heart_disease" && n == 1) {
        int line = note.add_line("gluc 192, LDL 115, TG 71, HDL 36");
        for (const char *lab : {"gluc", "LDL", "TG", "HDL"})
          files.con.push_back(note.mention(line, lab) + "||t=\"test\"");
        line = note.add_line("HBA1C 12/14/2115 11.80");
        files.con.push_back(note.mention(line, "HBA1C") + "||t=\"test\"");
        line = note.add_line("HBA1C 03/02/2116 9.40");
        files.con.push_back(note.mention(line, "HBA1C") + "||t=\"test\"");
      }
      for (int i = 0; i < params.lab_lines; ++i) {
        std::vector<LabSpec> labs = kLabs;
        rng.shuffle(labs);
        const std::string &a = labs[0].name, &b = labs[1].name;
        std::string va = lab_value(rng, labs[0]), vb = lab_value(rng, labs[1]);
        int line;
        if (rng.below(2) == 0) {
          line = note.add_line(a + " " + va + ", " + b + " " + vb);
        } else {
          std::string date = us_date(year + n - 1, 1 + static_cast<int>(rng.below(12)), 1 + static_cast<int>(rng.below(28)));
          line = note.add_line(a + " " + date + " " + va + ", " + b + " " + vb);
        }
        files.con.push_back(note.mention(line, a) + "||t=\"test\"");
        files.con.push_back(note.mention(line, b) + "||t=\"test\"");
      }

      for (int i = 0; i < params.relation_lines; ++i) {
        std::string problem = rng.pick(kProblems);
        int kind = static_cast<int>(rng.below(3));
        if (kind == 0) {
          std::string med = rng.pick(kMedications);
          int line = note.add_line(med + " was started for " + problem + " .");
          std::string head = note.mention(line, med), tail = note.mention(line, problem, 1);
          files.con.push_back(head + "||t=\"medication\"");
          files.con.push_back(tail + "||t=\"problem\"");
          files.rel.push_back(head + "||r=\"TrAP\"||" + tail);
        } else if (kind == 1) {
          std::string test = rng.pick(kTests);
          int line = note.add_line(test + " showed " + problem + " .");
          std::string head = note.mention(line, test), tail = note.mention(line, problem, 1);
          files.con.push_back(head + "||t=\"test\"");
          files.con.push_back(tail + "||t=\"problem\"");
          files.rel.push_back(head + "||r=\"TeRP\"||" + tail);
        } else {
          std::string med = rng.pick(kMedications);
          int line = note.add_line(problem + " improved with " + med + " .");
          std::string head = note.mention(line, med, 1), tail = note.mention(line, problem);
          files.con.push_back(head + "||t=\"medication\"");
          files.con.push_back(tail + "||t=\"problem\"");
          files.rel.push_back(head + "||r=\"TrIP\"||" + tail);
        }
      }

      for (int i = 0; i < params.procedure_episodes; ++i) {
        std::string procedure = rng.pick(kProcedures);
        std::string outcome = rng.pick(kOutcomes);
        std::string date = us_date(year + n - 1, 1 + static_cast<int>(rng.below(12)), 1 + static_cast<int>(rng.below(28)));
        int line = note.add_line(date + " " + procedure + " with omentopexy .");
        std::string proc = note.mention(line, procedure, 1);
        files.con.push_back(proc + "||t=\"treatment\"");
        note.add_line("The patient continued to be hemodynamically stable making good progress .");
        int later = note.add_line(
            "The patient tolerated the procedure fairly well and was transferred to the ICU with his " + outcome + " .");
        std::string mention = note.mention(later, "the procedure");
        std::string result = note.mention(later, outcome, 5);
        files.con.push_back(mention + "||t=\"treatment\"");
        files.con.push_back(result + "||t=\"problem\"");
        if (params.relation_lines > 0) files.rel.push_back(mention + "||r=\"TrCP\"||" + result);
        if (coref_layer) files.chains.push_back(proc + "||" + mention + "||t=\"coref treatment\"");
      }

      if (source == "obesity") note.add_line("Physical examination: BMI: 33.4 Obese, high risk . Pulse: 60 .");

      if (params.with_classes) {
        if (source == "obesity") {
          classes_tsv.push_back(doc_id + "\tobesity\t" + std::string(rng.below(2) == 0 ? "Yes" : "No"));
          std::vector<std::string> labels;
          for (const std::string &c : kComorbidities)
            if (rng.below(2) == 0) labels.push_back(c);
          if (labels.empty()) labels.push_back(rng.pick(kComorbidities));
          classes_tsv.push_back(doc_id + "\tcomorbidity\t" + join(labels, ","));
          ++summary.classes;
          ++summary.classes;
        }
      }

      write_lines(root / "docs" / (doc_id + ".txt"), note.lines());
      write_lines(root / "ann" / (doc_id + ".con"), files.con);
      write_lines(root / "ann" / (doc_id + ".att"), files.att);
      write_lines(root / "ann" / (doc_id + ".rel"), files.rel);
      write_lines(root / "ann" / (doc_id + ".chains"), files.chains);
      ++summary.documents;
      summary.concepts += files.con.size();
      summary.attributes += files.att.size();
      summary.relations += files.rel.size();
      summary.chains += files.chains.size();
    }
    if (params.with_classes && source == "smoking") {
      classes_tsv.push_back(patient + "\tsmoking\t" + rng.pick(kSmoking));
      ++summary.classes;
    }
  }
  write_lines(root / "patients.tsv", patients_tsv);
  write_lines(root / "classes.tsv", classes_tsv);
  return summary;
}

}  // namespace qagen
