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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qagen {

// A token together with its byte offsets [begin, end) in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Shared tokenizer used for templates, questions, evidence and statistics.
//
// Text is split on whitespace; leading and trailing punctuation is peeled off
// each chunk into single-character tokens while internal punctuation stays
// attached ("patient's", "33.4", "mg/dl", "12/14/2115"). A chunk of the form
// |name| is kept whole as a placeholder token.
std::vector<Token> tokenize_with_offsets(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

// Whitespace-only tokenization, the addressing scheme of annotation spans.
std::vector<Token> whitespace_tokens(std::string_view text);

bool is_placeholder_token(std::string_view token);
// "|medication|" -> "medication"; returns empty view for non-placeholders.
std::string_view placeholder_type(std::string_view token);

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);
std::string collapse_whitespace(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);
std::string join(const std::vector<std::string> &parts, std::string_view separator);
bool iequals(std::string_view a, std::string_view b);
bool starts_with_icase(std::string_view text, std::string_view prefix);

// Lowercased tokens joined by single spaces.
std::string canonical_text(std::string_view text);

}  // namespace qagen
