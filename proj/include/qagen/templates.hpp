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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qagen/error.hpp"
#include "qagen/lf.hpp"

namespace qagen {

// One concrete entity used to fill a placeholder.
struct SlotFill {
  std::string entity_type;
  std::string surface;
  std::string source;  // annotation id, empty when unknown

  bool operator==(const SlotFill &) const = default;
};

struct QuestionTemplate {
  std::string id;
  std::string lf_template_id;
  std::string text;
  std::vector<std::string> placeholder_types;  // in text order
  std::map<std::string, std::string> flags;    // e.g. class=obesity

  // Task name when the template asks for a document-level class.
  std::optional<std::string> class_task() const;
};

// Templates sharing one logical form are paraphrases of each other.
struct ParaphraseGroup {
  std::string lf_template_id;
  std::vector<std::string> members;
};

using LfTemplateMap = std::map<std::string, lf::LogicalForm>;

// `<lf_template_id>\t<logical form>` per line, '#' comments.
LfTemplateMap parse_lf_templates(std::string_view text, const std::string &source = "<lf templates>");
LfTemplateMap load_lf_templates(const std::filesystem::path &path);

class TemplateStore {
 public:
  TemplateStore() = default;
  TemplateStore(std::vector<QuestionTemplate> templates, LfTemplateMap lf_templates);

  const std::vector<QuestionTemplate> &templates() const { return templates_; }
  const std::vector<ParaphraseGroup> &groups() const { return groups_; }
  const LfTemplateMap &lf_templates() const { return lf_templates_; }

  const QuestionTemplate *find(std::string_view template_id) const;
  const lf::LogicalForm &lf_for(const QuestionTemplate &t) const;

 private:
  std::vector<QuestionTemplate> templates_;
  std::vector<ParaphraseGroup> groups_;
  LfTemplateMap lf_templates_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// `template_id\tlf_template_id\ttext[\tkey=value;...]` per line. No spelling
// or grammar correction is applied to template text.
TemplateStore parse_templates(std::string_view text, LfTemplateMap lf_templates,
                              const std::string &source = "<templates>");
TemplateStore load_templates(const std::filesystem::path &path, LfTemplateMap lf_templates);

std::vector<std::string> extract_placeholder_types(std::string_view text);

// Checks that question and logical form placeholders agree: the same set of
// entity types, and for each type either equal counts or a single question
// placeholder that fills every logical-form occurrence of that type.
std::optional<std::string> check_placeholder_agreement(const std::vector<std::string> &question_types,
                                                       const std::vector<std::string> &lf_types);

class ArityError : public Error {
 public:
  using Error::Error;
};

class SlotTypeError : public Error {
 public:
  using Error::Error;
};

struct Instantiation {
  std::string question;
  lf::LogicalForm lf;
};

Instantiation instantiate_template(const QuestionTemplate &t, const lf::LogicalForm &lf_template,
                                   const std::vector<SlotFill> &fills);

}  // namespace qagen
