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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qagen/generator.hpp"

namespace oracle {

struct Tally {
  std::size_t records = 0;
  std::size_t answered = 0;
  bool operator==(const Tally &) const = default;
};

struct FixtureCounts {
  std::map<std::string, Tally> per_template;
  std::map<std::string, Tally> per_strategy;
};

// Recounts the records the shipped templates should yield on a synthetic
// corpus, straight from the raw files. Shares no code with the generator.
FixtureCounts enumerate_fixture(const std::filesystem::path &corpus, const std::filesystem::path &kb);

// Evidence lines and answer entities checked against the raw note files.
std::vector<std::string> evidence_violations(const std::vector<qagen::QARecord> &records,
                                             const std::filesystem::path &corpus);

}  // namespace oracle
