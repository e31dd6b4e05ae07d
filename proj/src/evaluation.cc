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

#include "udperturb/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "udperturb/errors.h"

namespace udperturb {
namespace {

void CheckAligned(const Treebank& gold, const Treebank& pred) {
  const std::size_t common =
      std::min(gold.sentences.size(), pred.sentences.size());
  for (std::size_t s = 0; s < common; ++s) {
    if (gold.sentences[s].size() != pred.sentences[s].size()) {
      throw AlignmentError(
          s, "gold has " + std::to_string(gold.sentences[s].size()) +
                 " tokens, prediction has " +
                 std::to_string(pred.sentences[s].size()));
    }
  }
  if (gold.sentences.size() != pred.sentences.size()) {
    throw AlignmentError(common,
                         "gold has " + std::to_string(gold.sentences.size()) +
                             " sentences, prediction has " +
                             std::to_string(pred.sentences.size()));
  }
}

std::string NormalizedDeprel(std::string_view deprel,
                             DeprelGranularity granularity) {
  if (granularity == DeprelGranularity::kUniversal) {
    deprel = deprel.substr(0, deprel.find(':'));
  }
  std::string out(deprel);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

double Percent(std::size_t hits, std::size_t total) {
  return total == 0 ? 0.0
                    : 100.0 * static_cast<double>(hits) /
                          static_cast<double>(total);
}

std::string FormatNumber(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t at; (at = line.find('\t', start)) != line.npos;
       start = at + 1) {
    parts.push_back(line.substr(start, at - start));
  }
  parts.push_back(line.substr(start));
  return parts;
}

std::optional<double> ParseReal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const std::string copy(s);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::optional<DeprelGranularity> ParseDeprelGranularity(std::string_view name) {
  if (name == "full") return DeprelGranularity::kFull;
  if (name == "universal") return DeprelGranularity::kUniversal;
  return std::nullopt;
}

EvalScore AttachmentScores(const Treebank& gold, const Treebank& pred,
                           const ScoreOptions& options) {
  CheckAligned(gold, pred);
  std::size_t total = 0;
  std::size_t head_hits = 0;
  std::size_t labeled_hits = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto& g = gold.sentences[s].tokens;
    const auto& p = pred.sentences[s].tokens;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!options.include_punct && g[i].upos == "PUNCT") continue;
      ++total;
      if (g[i].head != p[i].head) continue;
      ++head_hits;
      if (NormalizedDeprel(g[i].deprel, options.deprel_granularity) ==
          NormalizedDeprel(p[i].deprel, options.deprel_granularity)) {
        ++labeled_hits;
      }
    }
  }
  return EvalScore{Percent(labeled_hits, total), Percent(head_hits, total),
                   total};
}

double TagAccuracy(const Treebank& gold, const Treebank& pred,
                   TagColumn column) {
  CheckAligned(gold, pred);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto& g = gold.sentences[s].tokens;
    const auto& p = pred.sentences[s].tokens;
    for (std::size_t i = 0; i < g.size(); ++i) {
      ++total;
      bool same = false;
      switch (column) {
        case TagColumn::kUpos:
          same = g[i].upos == p[i].upos;
          break;
        case TagColumn::kXpos:
          same = g[i].xpos == p[i].xpos;
          break;
        case TagColumn::kFeats:
          same = CanonicalFeatures(g[i].feats) == CanonicalFeatures(p[i].feats);
          break;
      }
      if (same) ++hits;
    }
  }
  return Percent(hits, total);
}

RunAggregate AggregateRuns(std::span<const double> scores) {
  if (scores.empty()) {
    throw ContractError("cannot aggregate an empty list of scores");
  }
  RunAggregate out;
  out.n = scores.size();
  double sum = 0.0;
  for (double x : scores) sum += x;
  out.mean = sum / static_cast<double>(out.n);
  if (out.n > 1) {
    double squares = 0.0;
    for (double x : scores) squares += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(squares / static_cast<double>(out.n - 1));
  }
  return out;
}

std::map<int, double> DeltaCurve(const std::map<int, RunAggregate>& model,
                                 const std::map<int, RunAggregate>& baseline) {
  std::string missing;
  for (const auto& [rate, agg] : model) {
    if (!baseline.count(rate)) {
      missing += " " + std::to_string(rate) + " (baseline)";
    }
  }
  for (const auto& [rate, agg] : baseline) {
    if (!model.count(rate)) missing += " " + std::to_string(rate) + " (model)";
  }
  if (!missing.empty()) {
    throw ContractError("rate keys differ; missing:" + missing);
  }
  std::map<int, double> delta;
  for (const auto& [rate, agg] : model) {
    delta[rate] = agg.mean - baseline.at(rate).mean;
  }
  return delta;
}

std::string FormatScoreRow(const ScoreRow& row) {
  const auto optional = [](const std::optional<double>& v) {
    return v ? FormatNumber(*v) : std::string("_");
  };
  return row.treebank + "\t" + row.config + "\t" + row.tag_setup + "\t" +
         std::to_string(row.rate) + "\t" + std::to_string(row.run) + "\t" +
         FormatNumber(row.las) + "\t" + FormatNumber(row.uas) + "\t" +
         optional(row.upos_acc) + "\t" + optional(row.xpos_acc) + "\t" +
         optional(row.feats_acc);
}

std::vector<ScoreRow> ParseScoresDatabase(std::string_view text) {
  std::vector<ScoreRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    std::size_t newline = text.find('\n', pos);
    if (newline == std::string_view::npos) newline = text.size();
    std::string_view line = text.substr(pos, newline - pos);
    pos = newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != kScoresHeader) {
        throw ParseError(line_no, "missing or unexpected scores header");
      }
      seen_header = true;
      continue;
    }
    const auto f = SplitTabs(line);
    if (f.size() != 10) throw ParseError(line_no, "expected 10 columns");
    ScoreRow row;
    row.treebank = f[0];
    row.config = f[1];
    row.tag_setup = f[2];
    const auto rate = ParseReal(f[3]);
    const auto run = ParseReal(f[4]);
    const auto las = ParseReal(f[5]);
    const auto uas = ParseReal(f[6]);
    if (!rate || !run || !las || !uas || *rate != std::floor(*rate) ||
        *run != std::floor(*run)) {
      throw ParseError(line_no, "bad numeric field");
    }
    row.rate = static_cast<int>(*rate);
    row.run = static_cast<int>(*run);
    row.las = *las;
    row.uas = *uas;
    const auto accuracy = [&](std::string_view s) -> std::optional<double> {
      if (s == "_" || s == "nan" || s == "NaN") return std::nullopt;
      const auto v = ParseReal(s);
      if (!v) throw ParseError(line_no, "bad accuracy '" + std::string(s) + "'");
      return v;
    };
    row.upos_acc = accuracy(f[7]);
    row.xpos_acc = accuracy(f[8]);
    row.feats_acc = accuracy(f[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace udperturb
