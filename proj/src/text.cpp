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

#include "qagen/text.hpp"

#include <algorithm>
#include <cctype>

namespace qagen {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_leading_punct(char c) {
  return c == '(' || c == '[' || c == '{' || c == '"' || c == '\'';
}

bool is_trailing_punct(char c) {
  switch (c) {
    case '?': case '.': case ',': case '!': case ';': case ':':
    case ')': case ']': case '}': case '"': case '\'':
      return true;
    default:
      return false;
  }
}

}  // namespace

bool is_placeholder_token(std::string_view token) {
  return token.size() >= 3 && token.front() == '|' && token.back() == '|' &&
         token.substr(1, token.size() - 2).find('|') == std::string_view::npos;
}

std::string_view placeholder_type(std::string_view token) {
  if (!is_placeholder_token(token)) return {};
  return token.substr(1, token.size() - 2);
}

std::vector<Token> whitespace_tokens(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    out.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return out;
}

std::vector<Token> tokenize_with_offsets(std::string_view text) {
  std::vector<Token> out;
  for (const Token &chunk : whitespace_tokens(text)) {
    std::size_t b = chunk.begin;
    std::size_t e = chunk.end;
    std::vector<Token> trailing;
    while (b < e && is_leading_punct(text[b])) {
      out.push_back({std::string(1, text[b]), b, b + 1});
      ++b;
    }
    while (e > b && is_trailing_punct(text[e - 1])) {
      trailing.push_back({std::string(1, text[e - 1]), e - 1, e});
      --e;
    }
    if (e > b) out.push_back({std::string(text.substr(b, e - b)), b, e});
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(*it);
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view text) {
  std::vector<std::string> parts;
  for (Token &t : whitespace_tokens(text)) parts.push_back(std::move(t.text));
  return join(parts, " ");
}

std::vector<std::string> split(std::string_view text, char delimiter) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == delimiter) {
      out.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string join(const std::vector<std::string> &parts, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

bool starts_with_icase(std::string_view text, std::string_view prefix) {
  return text.size() >= prefix.size() && iequals(text.substr(0, prefix.size()), prefix);
}

std::string canonical_text(std::string_view text) {
  std::vector<std::string> tokens = tokenize(text);
  for (std::string &t : tokens) t = to_lower(t);
  return join(tokens, " ");
}

}  // namespace qagen
