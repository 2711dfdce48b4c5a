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

#include "qagen/recognizer.hpp"

#include "qagen/text.hpp"

namespace qagen {
namespace {

std::vector<std::string> lowered_tokens(std::string_view text) {
  std::vector<std::string> out = tokenize(text);
  for (std::string &t : out) t = to_lower(t);
  return out;
}

}  // namespace

bool GazetteerRecognizer::add(std::string_view surface, std::string_view entity_type) {
  std::vector<std::string> key = lowered_tokens(surface);
  if (key.empty()) return false;
  max_tokens_ = std::max(max_tokens_, key.size());
  return entries_.emplace(std::move(key), std::string(entity_type)).second;
}

bool GazetteerRecognizer::remove(std::string_view surface) {
  return entries_.erase(lowered_tokens(surface)) > 0;
}

std::vector<std::pair<std::string, std::string>> GazetteerRecognizer::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[key, type] : entries_) out.emplace_back(join(key, " "), type);
  return out;
}

std::vector<Recognition> GazetteerRecognizer::recognize(std::string_view question) const {
  std::vector<Token> tokens = tokenize_with_offsets(question);
  std::vector<std::string> lowered;
  for (const Token &t : tokens) lowered.push_back(to_lower(t.text));

  std::vector<Recognition> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    std::size_t longest = std::min(max_tokens_, tokens.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::vector<std::string> key(lowered.begin() + i, lowered.begin() + i + len);
      auto it = entries_.find(key);
      if (it == entries_.end()) continue;
      std::size_t begin = tokens[i].begin;
      std::size_t end = tokens[i + len - 1].end;
      out.push_back({begin, end, it->second, std::string(question.substr(begin, end - begin))});
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  return out;
}

NormalizedQuestion normalize_question(const EntityRecognizer &recognizer, std::string_view question) {
  std::vector<Recognition> spans = recognizer.recognize(question);
  NormalizedQuestion out;
  std::vector<std::string> parts;
  std::size_t next = 0;
  std::size_t emitted = 0;
  for (const Token &token : tokenize_with_offsets(question)) {
    while (next < spans.size() && spans[next].end <= token.begin) {
      emitted = std::max(emitted, next + 1);
      ++next;
    }
    if (next < spans.size() && token.begin < spans[next].end && token.end > spans[next].begin) {
      if (emitted == next) {
        const Recognition &r = spans[next];
        parts.push_back("|" + r.entity_type + "|");
        out.fills.push_back({r.entity_type, collapse_whitespace(r.surface), {}});
        ++emitted;
      }
      continue;
    }
    parts.push_back(to_lower(token.text));
  }
  out.template_text = join(parts, " ");
  return out;
}

}  // namespace qagen
