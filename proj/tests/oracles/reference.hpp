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
#include <vector>

#include "qagen/analysis.hpp"
#include "qagen/baselines.hpp"
#include "qagen/lf.hpp"
#include "qagen/rng.hpp"

namespace oracle {

// Random AST following the grammar: events with optional attribute lists
// and operators, composed by OR, AND and named relations. depth counts
// composite levels above the deepest event.
qagen::lf::LogicalForm sample_lf(qagen::Rng &rng, int max_depth);
int lf_depth(const qagen::lf::Node &node);

// Straightforward reference versions of the metrics, written from their
// definitions. Texts are expected to be single-space separated words.
double bleu_reference(const std::vector<std::string> &candidate, const std::vector<std::string> &reference,
                      bool smoothed);
double jaccard_reference(const std::vector<std::string> &a, const std::vector<std::string> &b);
double subset_accuracy_reference(const std::vector<std::vector<std::string>> &predictions,
                                 const std::vector<std::vector<std::string>> &gold);
// Returns (EM, F1) under the endpoint rule with a 20 character window.
std::pair<double, double> eval_answers_reference(const std::vector<std::vector<qagen::PredictedSpan>> &predictions,
                                                 const std::vector<std::vector<qagen::EvidenceSpan>> &gold);

}  // namespace oracle
