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

#include <array>
#include <cctype>

#include "qagen/generator.hpp"
#include "qagen/text.hpp"

namespace qagen {

std::optional<std::string> preprocess_entity(std::string_view surface) {
  static const std::array<std::string_view, 7> kLeading = {"a", "an", "the", "his", "her", "patient's", "patients'"};
  std::string s = collapse_whitespace(surface);
  // Trailing punctuation may be separated by spaces, as in "the ffp ."
  while (!s.empty() && (std::ispunct(static_cast<unsigned char>(s.back())) || s.back() == ' ')) {
    char c = s.back();
    if (c == ')' || c == ']' || c == '%' || c == '+') break;
    s.pop_back();
  }
  std::vector<std::string> words = split(s, ' ');
  std::size_t first = 0;
  while (first < words.size()) {
    std::string w = to_lower(words[first]);
    bool strip = false;
    for (std::string_view a : kLeading) strip = strip || w == a;
    if (!strip) break;
    ++first;
  }
  words.erase(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(first));
  std::string out = join(words, " ");
  if (out.empty()) return std::nullopt;
  return out;
}

std::optional<std::string> locate_in_line(std::string_view line, std::string_view text) {
  if (text.empty() || text.size() > line.size()) return std::nullopt;
  for (std::size_t i = 0; i + text.size() <= line.size(); ++i) {
    if (iequals(line.substr(i, text.size()), text)) return std::string(line.substr(i, text.size()));
  }
  return std::nullopt;
}

}  // namespace qagen
