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

#include "fixture_oracle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <tuple>

namespace oracle {
namespace fs = std::filesystem;
namespace {

// Raw annotations keyed by (doc, line, first token, last token).
using Key = std::tuple<std::string, int, int, int>;

struct Mention {
  Key key;
  std::string surface;
  std::string type;
};

struct Note {
  std::string patient;
  std::vector<std::string> lines;  // lines[0] is line 1
  std::string record_date;         // YYYY-MM-DD or empty
};

struct Raw {
  std::vector<std::string> patients;  // patients.tsv order, unique
  std::map<std::string, std::vector<std::string>> docs_of;
  std::map<std::string, Note> notes;
  std::vector<Mention> mentions;
  std::map<Key, std::vector<std::string>> attributes;  // key -> attribute names
  std::vector<std::tuple<Key, std::string, Key>> relations;
  std::vector<std::vector<Key>> chains;
  std::map<std::pair<std::string, std::string>, bool> classes;  // (target, task)
  std::map<std::string, double> refhigh;                        // lowercased lab
};

std::vector<std::string> read_lines(const fs::path &p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  std::string l;
  while (std::getline(in, l)) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

std::vector<std::string> fields(const std::string &line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, sep)) out.push_back(f);
  return out;
}

std::string lower(std::string s) {
  for (char &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> words(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

const std::regex kMention(R"re(c="([^"]*)" (\d+):(\d+) (\d+):(\d+))re");
const std::regex kType(R"re(\|\|t="([^"]*)")re");
const std::regex kRelType(R"re(\|\|r="([^"]*)")re");
const std::regex kAttr(R"re(\|\|a="([^"]*)"=)re");

std::vector<Mention> mentions_in(const std::string &doc, const std::string &line) {
  std::vector<Mention> out;
  for (auto it = std::sregex_iterator(line.begin(), line.end(), kMention); it != std::sregex_iterator(); ++it) {
    const std::smatch &m = *it;
    out.push_back({{doc, std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[5])}, m[1], ""});
  }
  return out;
}

// MM/DD/YYYY or YYYY-MM-DD as YYYY-MM-DD.
std::optional<std::string> as_date(const std::string &token) {
  static const std::regex us(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
  static const std::regex iso(R"((\d{4})-(\d{2})-(\d{2}))");
  std::smatch m;
  char buf[16];
  if (std::regex_match(token, m, us)) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", std::stoi(m[3]), std::stoi(m[1]), std::stoi(m[2]));
    return std::string(buf);
  }
  if (std::regex_match(token, m, iso)) return token;
  return std::nullopt;
}

std::string strip_tail(std::string t) {
  while (!t.empty() && std::string(",;:)").find(t.back()) != std::string::npos) t.pop_back();
  return t;
}

Raw read_raw(const fs::path &root, const fs::path &kb) {
  Raw raw;
  for (const std::string &l : read_lines(root / "patients.tsv")) {
    auto f = fields(l, '\t');
    if (f.size() < 2) continue;
    if (!raw.docs_of.count(f[0])) raw.patients.push_back(f[0]);
    raw.docs_of[f[0]].push_back(f[1]);
    Note note;
    note.patient = f[0];
    note.lines = read_lines(root / "docs" / (f[1] + ".txt"));
    if (!note.lines.empty() && note.lines[0].rfind("Record Date: ", 0) == 0)
      note.record_date = as_date(note.lines[0].substr(13)).value_or("");
    raw.notes[f[1]] = note;
  }
  for (const auto &[doc, note] : raw.notes) {
    fs::path ann = root / "ann";
    for (const std::string &l : read_lines(ann / (doc + ".con"))) {
      auto ms = mentions_in(doc, l);
      std::smatch t;
      if (ms.size() != 1 || !std::regex_search(l, t, kType)) continue;
      ms[0].type = t[1];
      raw.mentions.push_back(ms[0]);
    }
    for (const std::string &l : read_lines(ann / (doc + ".att"))) {
      auto ms = mentions_in(doc, l);
      std::smatch a;
      if (ms.empty() || !std::regex_search(l, a, kAttr)) continue;
      raw.attributes[ms[0].key].push_back(a[1]);
    }
    for (const std::string &l : read_lines(ann / (doc + ".rel"))) {
      auto ms = mentions_in(doc, l);
      std::smatch r;
      if (ms.size() != 2 || !std::regex_search(l, r, kRelType)) continue;
      raw.relations.emplace_back(ms[0].key, r[1], ms[1].key);
    }
    for (const std::string &l : read_lines(ann / (doc + ".chains"))) {
      std::vector<Key> chain;
      for (const Mention &m : mentions_in(doc, l)) chain.push_back(m.key);
      if (chain.size() >= 2) raw.chains.push_back(chain);
    }
  }
  for (const std::string &l : read_lines(root / "classes.tsv")) {
    auto f = fields(l, '\t');
    if (f.size() >= 3) raw.classes[{f[0], f[1]}] = true;
  }
  for (const std::string &l : read_lines(kb)) {
    if (l.empty() || l[0] == '#') continue;
    auto f = fields(l, '\t');
    if (f.size() >= 3) raw.refhigh[lower(f[0])] = std::stod(f[2]);
  }
  return raw;
}

// Surface left after dropping leading determiners and trailing punctuation.
std::string cleaned(const std::string &surface) {
  std::vector<std::string> w = words(surface);
  static const std::set<std::string> leading = {"a", "an", "the", "his", "her", "patient's", "patients'"};
  while (!w.empty() && leading.count(lower(w.front()))) w.erase(w.begin());
  std::string out;
  for (const std::string &x : w) out += (out.empty() ? "" : " ") + x;
  while (!out.empty() && std::string(".,;:!? ").find(out.back()) != std::string::npos) out.pop_back();
  return out;
}

class Patient {
 public:
  Patient(const Raw &raw, const std::string &id) : raw_(raw) {
    for (const std::string &d : raw.docs_of.at(id)) docs_.insert(d);
    for (const Mention &m : raw.mentions)
      if (docs_.count(std::get<0>(m.key))) mentions_.push_back(&m);
  }

  std::vector<const Mention *> of_type(const std::set<std::string> &types) const {
    std::vector<const Mention *> out;
    for (const Mention *m : mentions_)
      if (types.count(m->type) && !cleaned(m->surface).empty()) out.push_back(m);
    return out;
  }

  std::set<Key> coref(const Key &k) const {
    for (const auto &chain : raw_.chains)
      if (std::find(chain.begin(), chain.end(), k) != chain.end()) return {chain.begin(), chain.end()};
    return {k};
  }

  std::string type_of(const Key &k) const {
    for (const Mention &m : raw_.mentions)
      if (m.key == k) return m.type;
    return {};
  }

  bool has_attribute(const Key &k, const std::string &name) const {
    for (const Key &m : coref(k)) {
      auto it = raw_.attributes.find(m);
      if (it != raw_.attributes.end() && std::count(it->second.begin(), it->second.end(), name)) return true;
    }
    return false;
  }

  bool related(const Key &k, const std::set<std::string> &rel_types, const std::set<std::string> &far_types) const {
    std::set<Key> group = coref(k);
    for (const auto &[head, type, tail] : raw_.relations) {
      if (!rel_types.count(type)) continue;
      for (const Key &m : group) {
        const Key *other = head == m ? &tail : tail == m ? &head : nullptr;
        if (other && !group.count(*other) && far_types.count(type_of(*other))) return true;
      }
    }
    return false;
  }

  const std::string &line_of(const Key &k) const {
    return raw_.notes.at(std::get<0>(k)).lines.at(static_cast<std::size_t>(std::get<1>(k) - 1));
  }

  std::optional<double> value(const Key &k) const {
    static const std::regex number(R"([+-]?(\d+\.?\d*|\.\d+))");
    std::vector<std::string> w = words(line_of(k));
    for (std::size_t i = static_cast<std::size_t>(std::get<3>(k)) + 1; i < w.size(); ++i) {
      std::string t = strip_tail(w[i]);
      if (std::regex_match(t, number)) return std::stod(t);
    }
    return std::nullopt;
  }

  // Event date from the line, else the note's record date.
  std::string date(const Key &k) const {
    for (const std::string &w : words(line_of(k)))
      if (auto d = as_date(strip_tail(w))) return *d;
    return raw_.notes.at(std::get<0>(k)).record_date;
  }

  const std::set<std::string> &docs() const { return docs_; }
  const std::vector<const Mention *> &mentions() const { return mentions_; }

 private:
  const Raw &raw_;
  std::set<std::string> docs_;
  std::vector<const Mention *> mentions_;
};

enum class Kind { Attribute, Relation, RelationPair, EventList, Operator, Class };

const char *kind_name(Kind k) {
  switch (k) {
    case Kind::Attribute: return "attribute";
    case Kind::Relation: return "relation";
    case Kind::RelationPair: return "relation_pair";
    case Kind::EventList: return "event_list";
    case Kind::Operator: return "operator";
    case Kind::Class: return "class";
  }
  return "";
}

// What each shipped template asks for, written out by hand from the
// template files.
struct Row {
  std::vector<std::string> ids;
  Kind kind;
  std::string slot;                   // placeholder entity type
  std::string attribute;              // attribute kinds
  std::set<std::string> relations;    // relation kinds
  std::set<std::string> answer_types; // relation and list kinds
  std::string op;                     // operator kinds
  std::string task;                   // class kinds
};

const std::set<std::string> kProblem = {"problem"};
const std::set<std::string> kTreatmentLike = {"treatment", "mode", "medication"};
const std::set<std::string> kTrtOrTest = {"treatment", "mode", "medication", "test"};
const std::set<std::string> kImprovesEtc = {"TrIP", "TrWP", "TrCP"};

const std::vector<Row> &rows() {
  static const std::vector<Row> table = {
      {{"T001", "T002", "T003", "T004"}, Kind::Attribute, "medication", "dosage", {}, {}, "", ""},
      {{"T005", "T006"}, Kind::Attribute, "medication", "frequency", {}, {}, "", ""},
      {{"T007", "T008"}, Kind::Attribute, "medication", "enddate", {}, {}, "", ""},
      {{"T009", "T010", "T011"}, Kind::Relation, "medication", "", {"TrAP"}, kProblem, "", ""},
      {{"T012", "T013"}, Kind::Relation, "problem", "", {"TeRP", "TeCP"}, {"test"}, "", ""},
      {{"T014", "T015", "T016"}, Kind::EventList, "", "", {}, {"test"}, "above refhigh", ""},
      {{"T017", "T018"}, Kind::Operator, "test", "", {}, {}, "above 100", ""},
      {{"T019", "T020"}, Kind::Operator, "test", "", {}, {}, "on 2115-12-14", ""},
      {{"T021", "T022"}, Kind::Operator, "test", "", {}, {}, "latest", ""},
      {{"T023", "T024"}, Kind::Relation, "treatment", "", kImprovesEtc, kProblem, "", ""},
      {{"T025", "T026"}, Kind::Relation, "test", "", {"TeCP", "TeRP"}, kProblem, "", ""},
      {{"T027", "T028"}, Kind::Relation, "treatment", "", kImprovesEtc, kProblem, "", ""},
      {{"T029", "T030", "T031", "T032", "T033", "T034", "T035"}, Kind::Relation, "problem", "", {"TrAP"},
       kTrtOrTest, "", ""},
      {{"T036", "T037", "T038"}, Kind::EventList, "", "", {}, kTreatmentLike, "", ""},
      {{"T039", "T040"}, Kind::RelationPair, "", "", {"TrIP"}, {}, "", ""},
      {{"T041", "T042"}, Kind::Class, "", "", {}, {}, "", "obesity"},
      {{"T043", "T044"}, Kind::Class, "", "", {}, {}, "", "comorbidity"},
      {{"T045", "T046"}, Kind::Class, "", "", {}, {}, "", "smoking"},
      {{"T047", "T048"}, Kind::Attribute, "test", "result", {}, {}, "", ""},
  };
  return table;
}

// Records and answered records one template contributes for one patient.
Tally count(const Raw &raw, const Patient &p, const std::string &patient, const Row &row) {
  Tally t;
  auto add = [&](bool answered) {
    ++t.records;
    if (answered) ++t.answered;
  };
  switch (row.kind) {
    case Kind::Attribute:
      for (const Mention *m : p.of_type({row.slot})) {
        bool ok = p.has_attribute(m->key, row.attribute);
        if (!ok && row.attribute == "result")
          for (const Key &k : p.coref(m->key)) ok = ok || p.value(k).has_value();
        add(ok);
      }
      break;
    case Kind::Relation:
      for (const Mention *m : p.of_type({row.slot})) add(p.related(m->key, row.relations, row.answer_types));
      break;
    case Kind::RelationPair:
      for (const auto &[head, type, tail] : raw.relations) {
        if (!p.docs().count(std::get<0>(head)) || !row.relations.count(type)) continue;
        std::set<std::string> types = {p.type_of(head), p.type_of(tail)};
        if (types == std::set<std::string>{"medication", "problem"}) add(true);
      }
      break;
    case Kind::EventList: {
      bool any = false;
      for (const Mention *m : p.mentions()) {
        if (!row.answer_types.count(m->type)) continue;
        if (row.op.empty()) {
          any = true;
        } else {
          auto v = p.value(m->key);
          auto hi = raw.refhigh.find(lower(m->surface));
          if (v && hi != raw.refhigh.end() && *v > hi->second + 1e-9) any = true;
        }
      }
      add(any);
      break;
    }
    case Kind::Operator: {
      std::map<std::string, std::vector<Key>> groups;
      for (const Mention *m : p.of_type({row.slot})) groups[lower(cleaned(m->surface))].push_back(m->key);
      for (const auto &[name, keys] : groups) {
        bool ok = false;
        for (const Key &k : keys) {
          if (row.op == "above 100") ok = ok || (p.value(k) && *p.value(k) > 100 + 1e-9);
          if (row.op == "on 2115-12-14") ok = ok || p.date(k) == "2115-12-14";
          if (row.op == "latest") ok = ok || !p.date(k).empty();
        }
        add(ok);
      }
      break;
    }
    case Kind::Class: {
      bool patient_level = false;
      for (const auto &[key, _] : raw.classes)
        if (key.second == row.task && raw.docs_of.count(key.first)) patient_level = true;
      if (patient_level) {
        add(raw.classes.count({patient, row.task}) > 0);
      } else {
        for (const std::string &d : p.docs()) add(raw.classes.count({d, row.task}) > 0);
      }
      break;
    }
  }
  return t;
}

}  // namespace

FixtureCounts enumerate_fixture(const fs::path &corpus, const fs::path &kb) {
  Raw raw = read_raw(corpus, kb);
  FixtureCounts out;
  for (const std::string &patient : raw.patients) {
    Patient p(raw, patient);
    for (const Row &row : rows()) {
      Tally t = count(raw, p, patient, row);
      for (const std::string &id : row.ids) {
        Tally &a = out.per_template[id];
        a.records += t.records;
        a.answered += t.answered;
        Tally &s = out.per_strategy[kind_name(row.kind)];
        s.records += t.records;
        s.answered += t.answered;
      }
    }
  }
  return out;
}

std::vector<std::string> evidence_violations(const std::vector<qagen::QARecord> &records, const fs::path &corpus) {
  std::map<std::string, std::vector<std::string>> notes;
  std::vector<std::string> out;
  for (const qagen::QARecord &r : records) {
    for (const qagen::EvidenceSpan &e : r.evidences) {
      auto it = notes.find(e.doc_id);
      if (it == notes.end()) it = notes.emplace(e.doc_id, read_lines(corpus / "docs" / (e.doc_id + ".txt"))).first;
      const std::vector<std::string> &lines = it->second;
      std::string expected;
      if (e.line == 0) {
        for (std::size_t i = 0; i < lines.size(); ++i) expected += (i ? "\n" : "") + lines[i];
      } else if (e.line > 0 && static_cast<std::size_t>(e.line) <= lines.size()) {
        expected = lines[static_cast<std::size_t>(e.line - 1)];
      } else {
        out.push_back(r.record_id + ": line " + std::to_string(e.line) + " outside " + e.doc_id);
        continue;
      }
      if (e.line_text != expected) out.push_back(r.record_id + ": line text differs from " + e.doc_id);
      if (e.answer_entity && e.line_text.find(*e.answer_entity) == std::string::npos)
        out.push_back(r.record_id + ": answer entity '" + *e.answer_entity + "' not on its line");
    }
  }
  return out;
}

}  // namespace oracle
