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

#include "qagen/templates.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qagen/text.hpp"

namespace qagen {
namespace {

std::string read_file(const std::filesystem::path &path, const char *what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot read ") + what + " " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool skip_line(const std::string &line) {
  std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

std::map<std::string, std::size_t> count_types(const std::vector<std::string> &types) {
  std::map<std::string, std::size_t> out;
  for (const std::string &t : types) ++out[t];
  return out;
}

}  // namespace

std::optional<std::string> QuestionTemplate::class_task() const {
  auto it = flags.find("class");
  if (it == flags.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

LfTemplateMap parse_lf_templates(std::string_view text, const std::string &source) {
  LfTemplateMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError(source, line_no, "expected <id>\\t<logical form>");
    std::string id = trim(std::string_view(line).substr(0, tab));
    if (id.empty()) throw FormatError(source, line_no, "empty lf template id");
    if (out.count(id)) throw FormatError(source, line_no, "duplicate lf template id " + id);
    try {
      out.emplace(id, lf::parse_lf(std::string_view(line).substr(tab + 1)));
    } catch (const lf::ParseError &e) {
      throw FormatError(source, line_no, std::string("logical form: ") + e.what());
    }
  }
  return out;
}

LfTemplateMap load_lf_templates(const std::filesystem::path &path) {
  return parse_lf_templates(read_file(path, "lf templates"), path.string());
}

TemplateStore::TemplateStore(std::vector<QuestionTemplate> templates, LfTemplateMap lf_templates)
    : templates_(std::move(templates)), lf_templates_(std::move(lf_templates)) {
  std::map<std::string, std::size_t> group_index;
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    const QuestionTemplate &t = templates_[i];
    if (!index_.emplace(t.id, i).second) throw Error("duplicate template id " + t.id);
    if (!lf_templates_.count(t.lf_template_id))
      throw Error("template " + t.id + " references unknown lf template " + t.lf_template_id);
    auto [it, inserted] = group_index.emplace(t.lf_template_id, 0);
    if (inserted) {
      it->second = groups_.size();
      groups_.push_back({t.lf_template_id, {}});
    }
    groups_[it->second].members.push_back(t.id);
  }
  std::sort(groups_.begin(), groups_.end(),
            [](const ParaphraseGroup &a, const ParaphraseGroup &b) {
              return a.lf_template_id < b.lf_template_id;
            });
}

const QuestionTemplate *TemplateStore::find(std::string_view template_id) const {
  auto it = index_.find(template_id);
  return it == index_.end() ? nullptr : &templates_[it->second];
}

const lf::LogicalForm &TemplateStore::lf_for(const QuestionTemplate &t) const {
  return lf_templates_.at(t.lf_template_id);
}

std::vector<std::string> extract_placeholder_types(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &token : tokenize(text))
    if (is_placeholder_token(token)) out.emplace_back(placeholder_type(token));
  return out;
}

std::optional<std::string> check_placeholder_agreement(const std::vector<std::string> &question_types,
                                                       const std::vector<std::string> &lf_types) {
  auto q = count_types(question_types);
  auto l = count_types(lf_types);
  for (const auto &[type, n] : q) {
    auto it = l.find(type);
    if (it == l.end()) return "placeholder |" + type + "| missing from logical form";
    if (n != 1 && n != it->second)
      return "placeholder |" + type + "| appears " + std::to_string(n) + " times in the question but " +
             std::to_string(it->second) + " times in the logical form";
  }
  for (const auto &[type, n] : l)
    if (!q.count(type)) return "logical form placeholder |" + type + "| missing from question";
  return std::nullopt;
}

TemplateStore parse_templates(std::string_view text, LfTemplateMap lf_templates, const std::string &source) {
  std::vector<QuestionTemplate> templates;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skip_line(line)) continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4)
      throw FormatError(source, line_no, "expected template_id, lf_template_id, text[, flags]");
    QuestionTemplate t;
    t.id = trim(fields[0]);
    t.lf_template_id = trim(fields[1]);
    t.text = collapse_whitespace(fields[2]);
    if (t.id.empty() || t.text.empty()) throw FormatError(source, line_no, "empty template field");
    if (!seen.insert(t.id).second) throw FormatError(source, line_no, "duplicate template id " + t.id);
    auto lf_it = lf_templates.find(t.lf_template_id);
    if (lf_it == lf_templates.end())
      throw FormatError(source, line_no, "dangling lf template id " + t.lf_template_id);
    if (fields.size() == 4) {
      for (const std::string &flag : split(fields[3], ';')) {
        std::string f = trim(flag);
        if (f.empty()) continue;
        auto eq = f.find('=');
        if (eq == std::string::npos) t.flags[f] = "true";
        else t.flags[trim(f.substr(0, eq))] = trim(f.substr(eq + 1));
      }
    }
    t.placeholder_types = extract_placeholder_types(t.text);
    if (auto problem = check_placeholder_agreement(t.placeholder_types, lf::placeholder_types(lf_it->second)))
      throw FormatError(source, line_no, "template " + t.id + ": " + *problem);
    if (t.class_task() && !t.placeholder_types.empty())
      throw FormatError(source, line_no, "class templates cannot have placeholders");
    templates.push_back(std::move(t));
  }
  return TemplateStore(std::move(templates), std::move(lf_templates));
}

TemplateStore load_templates(const std::filesystem::path &path, LfTemplateMap lf_templates) {
  return parse_templates(read_file(path, "templates"), std::move(lf_templates), path.string());
}

Instantiation instantiate_template(const QuestionTemplate &t, const lf::LogicalForm &lf_template,
                                   const std::vector<SlotFill> &fills) {
  if (fills.size() != t.placeholder_types.size()) {
    throw ArityError("template " + t.id + " has " + std::to_string(t.placeholder_types.size()) +
                     " placeholders but " + std::to_string(fills.size()) + " fills were given");
  }
  for (std::size_t i = 0; i < fills.size(); ++i) {
    if (fills[i].entity_type != t.placeholder_types[i]) {
      throw SlotTypeError("template " + t.id + " slot " + std::to_string(i + 1) + " expects |" +
                          t.placeholder_types[i] + "| but got " + fills[i].entity_type);
    }
  }

  std::string question;
  std::size_t cursor = 0;
  std::size_t next_fill = 0;
  for (const Token &token : tokenize_with_offsets(t.text)) {
    if (!is_placeholder_token(token.text)) continue;
    question.append(t.text, cursor, token.begin - cursor);
    question += fills[next_fill++].surface;
    cursor = token.end;
  }
  question.append(t.text, cursor, std::string::npos);

  // Fills per type in question order; a lone fill covers every LF occurrence.
  std::map<std::string, std::vector<const SlotFill *>> by_type;
  for (const SlotFill &f : fills) by_type[f.entity_type].push_back(&f);
  std::map<std::string, std::size_t> used;
  Instantiation out{collapse_whitespace(question), lf_template};
  for (lf::EventNode *event : lf::leaf_events_mut(out.lf)) {
    const auto *p = std::get_if<lf::Placeholder>(&event->argument);
    if (!p) continue;
    auto it = by_type.find(p->entity_type);
    if (it == by_type.end())
      throw SlotTypeError("no fill for logical form placeholder |" + p->entity_type + "|");
    const std::vector<const SlotFill *> &candidates = it->second;
    std::size_t &k = used[p->entity_type];
    const SlotFill *fill = candidates.size() == 1 ? candidates.front() : candidates.at(std::min(k, candidates.size() - 1));
    ++k;
    event->argument = lf::Literal{fill->surface};
  }
  return out;
}

}  // namespace qagen
