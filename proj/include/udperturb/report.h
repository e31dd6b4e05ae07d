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

#ifndef UDPERTURB_REPORT_H_
#define UDPERTURB_REPORT_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udperturb/evaluation.h"

namespace udperturb {

inline constexpr std::string_view kBaselineModel = "word";

// Mean LAS per (model, rate) for one parser and tag setup, averaged over
// treebanks. Each treebank contributes the mean of its runs.
struct LasTable {
  std::string parser;
  std::string tag_setup;
  std::vector<std::string> models;  // "word" first, then UPOS, XPOS, FEATS
  std::vector<int> rates;           // ascending
  // means[m][r] and stddevs[m][r] follow models x rates. stddevs hold the
  // average over treebanks of the per-treebank run standard deviation.
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> stddevs;
};

// Mean LAS difference of `model` against the word baseline of the same
// parser and tag setup; stddev is taken across treebanks.
struct DeltaSeries {
  std::string parser;
  std::string model;
  std::string tag_setup;
  std::map<int, RunAggregate> by_rate;
};

// Tagger accuracy under perturbed-input tagging, averaged over treebanks.
struct TaggerTable {
  std::vector<int> rates;
  std::map<int, std::array<std::optional<double>, 3>> by_rate;  // U/X/FEATS
};

struct Report {
  std::vector<LasTable> las_tables;
  std::vector<DeltaSeries> deltas;
  TaggerTable tagger;
  std::size_t source_rows = 0;
  std::size_t treebank_count = 0;
};

// Requires every (treebank, parser/model, tag setup, rate) cell to have at
// least one run; throws ContractError listing the missing cells otherwise.
// A tag setup without word rows borrows them from the other setup, since the
// word-only model reads no tags.
Report BuildReport(std::span<const ScoreRow> rows);

// Writes the tables, stddev tables, delta plot data and a metadata sidecar.
// Returns the written paths relative to out_dir, sorted.
std::vector<std::string> WriteReport(const Report& report,
                                     const std::filesystem::path& out_dir);

std::vector<std::string> EmitTables(std::span<const ScoreRow> rows,
                                    const std::filesystem::path& out_dir);

}  // namespace udperturb

#endif  // UDPERTURB_REPORT_H_
