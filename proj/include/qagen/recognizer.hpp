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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qagen/templates.hpp"

namespace qagen {

struct Recognition {
  std::size_t begin = 0;  // byte offsets into the question
  std::size_t end = 0;
  std::string entity_type;
  std::string surface;
};

// Finds entity mentions in a question. Returned spans are sorted, within
// bounds and non-overlapping. Implementations must be safe for concurrent
// read-only use.
class EntityRecognizer {
 public:
  virtual ~EntityRecognizer() = default;
  virtual std::vector<Recognition> recognize(std::string_view question) const = 0;
};

// Case-insensitive lexicon matcher, longest match first, left to right.
class GazetteerRecognizer : public EntityRecognizer {
 public:
  // Returns false when the surface is already present; the first type wins.
  bool add(std::string_view surface, std::string_view entity_type);
  bool remove(std::string_view surface);
  std::size_t size() const { return entries_.size(); }
  // (lowercased surface, entity type) pairs in lexicographic order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  std::vector<Recognition> recognize(std::string_view question) const override;

 private:
  std::map<std::vector<std::string>, std::string> entries_;
  std::size_t max_tokens_ = 0;
};

struct NormalizedQuestion {
  std::string template_text;
  std::vector<SlotFill> fills;
};

// Replaces recognized spans with |type| placeholders. The result is
// whitespace-normalized and lowercased outside of the entity surfaces.
NormalizedQuestion normalize_question(const EntityRecognizer &recognizer, std::string_view question);

}  // namespace qagen
