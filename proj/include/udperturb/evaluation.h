// Copyright 2026 The udperturb Authors.
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

#ifndef UDPERTURB_EVALUATION_H_
#define UDPERTURB_EVALUATION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udperturb/conllu.h"

namespace udperturb {

enum class DeprelGranularity {
  kFull,       // compare the whole relation, subtypes included
  kUniversal,  // compare only the part before the first ':'
};

std::optional<DeprelGranularity> ParseDeprelGranularity(std::string_view name);

struct ScoreOptions {
  DeprelGranularity deprel_granularity = DeprelGranularity::kFull;
  bool include_punct = true;  // when false, gold PUNCT tokens are skipped
};

struct EvalScore {
  double las = 0.0;  // percentages
  double uas = 0.0;
  std::size_t token_count = 0;
};

struct RunAggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 when n == 1
  std::size_t n = 0;
};

// Both scorers require identical sentence counts and per-sentence token
// counts and throw AlignmentError naming the first divergent sentence.
EvalScore AttachmentScores(const Treebank& gold, const Treebank& pred,
                           const ScoreOptions& options = {});

// FEATS are compared in canonical (sorted) order.
double TagAccuracy(const Treebank& gold, const Treebank& pred,
                   TagColumn column);

// Throws ContractError on an empty list.
RunAggregate AggregateRuns(std::span<const double> scores);

// model.mean - baseline.mean per rate. Throws ContractError listing the
// rates present in only one of the two curves.
std::map<int, double> DeltaCurve(const std::map<int, RunAggregate>& model,
                                 const std::map<int, RunAggregate>& baseline);

// One row of the scores database.
struct ScoreRow {
  std::string treebank;
  std::string config;     // "<parser>/<model>", e.g. "graph/UPOS"
  std::string tag_setup;  // "perturbed" or "clean"
  int rate = 0;
  int run = 0;
  double las = 0.0;
  double uas = 0.0;
  std::optional<double> upos_acc;
  std::optional<double> xpos_acc;
  std::optional<double> feats_acc;
};

inline constexpr std::string_view kScoresHeader =
    "treebank\tconfig\ttag_setup\trate\trun\tlas\tuas\tupos_acc\txpos_acc\t"
    "feats_acc";

// Missing accuracies are written as "_".
std::string FormatScoreRow(const ScoreRow& row);
std::vector<ScoreRow> ParseScoresDatabase(std::string_view text);

}  // namespace udperturb

#endif  // UDPERTURB_EVALUATION_H_
