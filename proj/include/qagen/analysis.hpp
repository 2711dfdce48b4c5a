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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qagen/corpus.hpp"
#include "qagen/generator.hpp"
#include "qagen/templates.hpp"

namespace qagen {

struct DatasetStats {
  std::size_t records = 0;
  std::size_t answered = 0;
  std::size_t notes = 0;
  double mean_question_tokens = 0;
  double mean_evidence_tokens = 0;  // line evidences only
  double mean_lf_tokens = 0;
  double mean_note_tokens = 0;
  double mean_evidences_per_question = 0;  // over questions with line evidence
  double mean_questions_per_note = 0;      // answered records per document
  std::map<std::string, SourceCounts> per_source;

  std::string table() const;
  std::string to_json() const;
};

DatasetStats corpus_stats(const std::vector<QARecord> &records, const AnnotationCorpus &corpus);

enum class BleuVariant { Smoothed, Unsmoothed };

// Sentence BLEU-4 with uniform weights. The smoothed variant adds one to
// numerator and denominator of the 2..4-gram precisions.
double bleu(const std::vector<std::string> &candidate, const std::vector<std::string> &reference,
            BleuVariant variant = BleuVariant::Smoothed);

// Jaccard index of the lowercased token sets.
double jaccard(const std::vector<std::string> &a, const std::vector<std::string> &b);

struct GroupDiversity {
  std::string group_id;
  std::string reference;
  std::size_t members = 0;
  double bleu = 0;
  double jaccard = 0;
};

struct DiversityReport {
  std::vector<GroupDiversity> groups;  // groups with at least two members
  double bleu_mean = 0;
  double bleu_std = 0;
  double jaccard_mean = 0;
  double jaccard_std = 0;

  std::string table() const;
  std::string to_json() const;
};

using TextGroup = std::pair<std::string, std::vector<std::string>>;

DiversityReport paraphrase_diversity(const std::vector<TextGroup> &groups, std::uint64_t seed,
                                     BleuVariant variant = BleuVariant::Smoothed);
DiversityReport paraphrase_diversity(const TemplateStore &templates, std::uint64_t seed,
                                     BleuVariant variant = BleuVariant::Smoothed);

}  // namespace qagen
