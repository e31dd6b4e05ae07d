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

#include "udperturb/report.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

#include "udperturb/errors.h"
#include "udperturb/io.h"

namespace udperturb {
namespace {

struct CellKey {
  std::string treebank;
  std::string parser;
  std::string model;
  std::string tag_setup;
  int rate;

  auto operator<=>(const CellKey&) const = default;
};

std::pair<std::string, std::string> SplitConfig(const std::string& config) {
  const auto slash = config.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == config.size()) {
    throw ContractError("config '" + config +
                        "' is not of the form <parser>/<model>");
  }
  return {config.substr(0, slash), config.substr(slash + 1)};
}

int ModelRank(const std::string& model) {
  static const std::vector<std::string> kOrder = {"word", "UPOS", "XPOS",
                                                  "FEATS"};
  const auto it = std::find(kOrder.begin(), kOrder.end(), model);
  return static_cast<int>(it - kOrder.begin());
}

std::string Fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  std::string out = buffer;
  if (out == "-0.00" || out == "-0.0000") out.erase(0, 1);
  return out;
}

double Mean(const std::vector<double>& values) {
  return AggregateRuns(values).mean;
}

}  // namespace

Report BuildReport(std::span<const ScoreRow> rows) {
  if (rows.empty()) throw ContractError("scores database is empty");

  std::map<CellKey, std::vector<double>> runs;
  std::set<int> rates;
  std::set<std::string> all_treebanks;
  std::map<std::string, std::set<std::string>> treebanks_of;
  std::map<std::string, std::set<std::string>> setups_of;
  std::map<std::pair<std::string, std::string>, std::set<std::string>>
      models_of;
  for (const auto& row : rows) {
    auto [parser, model] = SplitConfig(row.config);
    runs[{row.treebank, parser, model, row.tag_setup, row.rate}].push_back(
        row.las);
    rates.insert(row.rate);
    all_treebanks.insert(row.treebank);
    treebanks_of[parser].insert(row.treebank);
    setups_of[parser].insert(row.tag_setup);
    models_of[{parser, row.tag_setup}].insert(model);
  }

  Report report;
  report.source_rows = rows.size();
  report.treebank_count = all_treebanks.size();
  std::vector<std::string> missing;

  const auto find_runs = [&](const std::string& treebank,
                             const std::string& parser,
                             const std::string& model,
                             const std::string& setup,
                             int rate) -> const std::vector<double>* {
    if (auto it = runs.find({treebank, parser, model, setup, rate});
        it != runs.end()) {
      return &it->second;
    }
    if (model != kBaselineModel) return nullptr;
    for (const auto& other : setups_of[parser]) {
      if (auto it = runs.find({treebank, parser, model, other, rate});
          it != runs.end()) {
        return &it->second;
      }
    }
    return nullptr;
  };

  for (const auto& [parser, setups] : setups_of) {
    for (const auto& setup : setups) {
      std::set<std::string> model_set = models_of[{parser, setup}];
      model_set.insert(std::string(kBaselineModel));
      std::vector<std::string> models(model_set.begin(), model_set.end());
      std::stable_sort(models.begin(), models.end(),
                       [](const std::string& a, const std::string& b) {
                         return ModelRank(a) < ModelRank(b);
                       });

      // Per model and treebank: rate -> aggregate over runs.
      std::map<std::string, std::map<std::string, std::map<int, RunAggregate>>>
          curves;
      for (const auto& model : models) {
        for (const auto& treebank : treebanks_of[parser]) {
          for (int rate : rates) {
            const auto* values = find_runs(treebank, parser, model, setup, rate);
            if (!values) {
              missing.push_back(treebank + " " + parser + "/" + model + " " +
                                setup + " rate " + std::to_string(rate));
              continue;
            }
            curves[model][treebank][rate] = AggregateRuns(*values);
          }
        }
      }
      if (!missing.empty()) continue;

      LasTable table;
      table.parser = parser;
      table.tag_setup = setup;
      table.models = models;
      table.rates.assign(rates.begin(), rates.end());
      for (const auto& model : models) {
        std::vector<double> means;
        std::vector<double> stddevs;
        for (int rate : rates) {
          std::vector<double> tb_means;
          std::vector<double> tb_stddevs;
          for (const auto& [treebank, curve] : curves[model]) {
            tb_means.push_back(curve.at(rate).mean);
            tb_stddevs.push_back(curve.at(rate).stddev);
          }
          means.push_back(Mean(tb_means));
          stddevs.push_back(Mean(tb_stddevs));
        }
        table.means.push_back(std::move(means));
        table.stddevs.push_back(std::move(stddevs));
      }
      report.las_tables.push_back(std::move(table));

      for (const auto& model : models) {
        if (model == kBaselineModel) continue;
        std::map<int, std::vector<double>> per_rate;
        for (const auto& [treebank, curve] : curves[model]) {
          const auto delta =
              DeltaCurve(curve, curves[std::string(kBaselineModel)][treebank]);
          for (const auto& [rate, value] : delta) {
            per_rate[rate].push_back(value);
          }
        }
        DeltaSeries series{parser, model, setup, {}};
        for (const auto& [rate, values] : per_rate) {
          series.by_rate[rate] = AggregateRuns(values);
        }
        report.deltas.push_back(std::move(series));
      }
    }
  }
  if (!missing.empty()) {
    std::string message = "incomplete scores grid; missing cells:";
    for (const auto& cell : missing) message += "\n  " + cell;
    throw ContractError(message);
  }

  // Tagger accuracy, from rows whose tags were predicted on perturbed input.
  report.tagger.rates.assign(rates.begin(), rates.end());
  for (int rate : rates) {
    std::array<std::optional<double>, 3> cells;
    for (int column = 0; column < 3; ++column) {
      std::map<std::string, std::vector<double>> by_treebank;
      for (const auto& row : rows) {
        if (row.rate != rate || row.tag_setup != "perturbed") continue;
        const auto& value = column == 0   ? row.upos_acc
                            : column == 1 ? row.xpos_acc
                                          : row.feats_acc;
        if (value) by_treebank[row.treebank].push_back(*value);
      }
      if (by_treebank.empty()) continue;
      std::vector<double> tb_means;
      for (const auto& [treebank, values] : by_treebank) {
        tb_means.push_back(Mean(values));
      }
      cells[column] = Mean(tb_means);
    }
    report.tagger.by_rate[rate] = cells;
  }
  return report;
}

std::vector<std::string> WriteReport(const Report& report,
                                     const std::filesystem::path& out_dir) {
  std::vector<std::string> written;
  const auto write = [&](const std::string& name, const std::string& text) {
    WriteTextFile(out_dir / name, text);
    written.push_back(name);
  };

  for (const auto& table : report.las_tables) {
    std::string header = "rate";
    for (const auto& model : table.models) header += "\t" + model;
    header += "\n";
    std::string means = header;
    std::string stddevs = header;
    for (std::size_t r = 0; r < table.rates.size(); ++r) {
      means += std::to_string(table.rates[r]);
      stddevs += std::to_string(table.rates[r]);
      for (std::size_t m = 0; m < table.models.size(); ++m) {
        means += "\t" + Fixed(table.means[m][r], 2);
        stddevs += "\t" + Fixed(table.stddevs[m][r], 2);
      }
      means += "\n";
      stddevs += "\n";
    }
    const std::string stem = "las_" + table.parser + "_" + table.tag_setup;
    write(stem + ".tsv", means);
    write(stem + ".stddev.tsv", stddevs);
  }

  for (const auto& series : report.deltas) {
    std::string text = "rate\tdelta_las\tstddev\n";
    for (const auto& [rate, agg] : series.by_rate) {
      text += std::to_string(rate) + "\t" + Fixed(agg.mean, 4) + "\t" +
              Fixed(agg.stddev, 4) + "\n";
    }
    write("delta_" + series.parser + "_" + series.model + "_" +
              series.tag_setup + ".tsv",
          text);
  }

  const bool any_tagger = std::any_of(
      report.tagger.by_rate.begin(), report.tagger.by_rate.end(),
      [](const auto& entry) {
        return std::any_of(entry.second.begin(), entry.second.end(),
                           [](const auto& v) { return v.has_value(); });
      });
  if (any_tagger) {
    std::string text = "rate\tUPOS\tXPOS\tFEATS\n";
    for (const auto& [rate, cells] : report.tagger.by_rate) {
      text += std::to_string(rate);
      for (const auto& cell : cells) {
        text += "\t" + (cell ? Fixed(*cell, 2) : std::string("_"));
      }
      text += "\n";
    }
    write("tagger_accuracy.tsv", text);
  }

  std::sort(written.begin(), written.end());
  std::string meta = "key\tvalue\n";
  meta += "source_rows\t" + std::to_string(report.source_rows) + "\n";
  meta += "treebanks\t" + std::to_string(report.treebank_count) + "\n";
  for (const auto& name : written) meta += "file\t" + name + "\n";
  write("report.meta.tsv", meta);
  std::sort(written.begin(), written.end());
  return written;
}

std::vector<std::string> EmitTables(std::span<const ScoreRow> rows,
                                    const std::filesystem::path& out_dir) {
  return WriteReport(BuildReport(rows), out_dir);
}

}  // namespace udperturb
