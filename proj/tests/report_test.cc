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
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "udperturb/errors.h"
#include "udperturb/io.h"

namespace udperturb {
namespace {

using test_util::FixturePath;
using test_util::ScopedTempDir;

std::vector<std::vector<std::string>> ReadTable(
    const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> cells;
  std::stringstream in(ReadTextFile(path));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> row;
    std::stringstream fields(line);
    for (std::string f; std::getline(fields, f, '\t');) row.push_back(f);
    cells.push_back(row);
  }
  return cells;
}

ScoreRow Row(std::string treebank, std::string config, int rate, int run,
             double las, std::string setup = "perturbed") {
  ScoreRow row;
  row.treebank = std::move(treebank);
  row.config = std::move(config);
  row.tag_setup = std::move(setup);
  row.rate = rate;
  row.run = run;
  row.las = las;
  row.uas = las;
  return row;
}

TEST(BuildReportTest, EmptyDatabaseIsAContractError) {
  EXPECT_THROW(BuildReport(std::vector<ScoreRow>{}), ContractError);
}

TEST(BuildReportTest, ModelEqualToBaselineHasZeroDelta) {
  std::vector<ScoreRow> rows;
  for (const char* tb : {"a", "b"}) {
    for (int rate : {0, 50, 100}) {
      for (int run = 0; run < 3; ++run) {
        const double las = 80.0 - rate / 10.0 + run;
        rows.push_back(Row(tb, "graph/word", rate, run, las));
        rows.push_back(Row(tb, "graph/UPOS", rate, run, las));
      }
    }
  }
  const Report report = BuildReport(rows);
  ASSERT_EQ(report.deltas.size(), 1u);
  for (const auto& [rate, agg] : report.deltas[0].by_rate) {
    EXPECT_EQ(agg.mean, 0.0) << rate;
    EXPECT_EQ(agg.stddev, 0.0) << rate;
  }
  ASSERT_EQ(report.las_tables.size(), 1u);
  EXPECT_EQ(report.las_tables[0].models,
            (std::vector<std::string>{"word", "UPOS"}));
  EXPECT_DOUBLE_EQ(report.las_tables[0].means[0][0], 81.0);
  EXPECT_DOUBLE_EQ(report.las_tables[0].stddevs[0][0], 1.0);

  ScopedTempDir dir;
  WriteReport(report, dir.path());
  const auto delta = ReadTable(dir.path() / "delta_graph_UPOS_perturbed.tsv");
  ASSERT_EQ(delta.size(), 4u);
  for (std::size_t r = 1; r < delta.size(); ++r) {
    EXPECT_EQ(delta[r][1], "0.0000");
  }
}

TEST(BuildReportTest, DeltaStddevIsAcrossTreebanks) {
  std::vector<ScoreRow> rows = {
      Row("a", "t/word", 0, 0, 70), Row("a", "t/UPOS", 0, 0, 72),
      Row("b", "t/word", 0, 0, 60), Row("b", "t/UPOS", 0, 0, 58),
  };
  const Report report = BuildReport(rows);
  const RunAggregate& d = report.deltas[0].by_rate.at(0);
  EXPECT_DOUBLE_EQ(d.mean, 0.0);
  EXPECT_NEAR(d.stddev, std::sqrt(8.0), 1e-12);
  EXPECT_EQ(d.n, 2u);
}

TEST(BuildReportTest, MissingCellsAreListed) {
  std::vector<ScoreRow> rows = {
      Row("a", "t/word", 0, 0, 70), Row("a", "t/UPOS", 0, 0, 72),
      Row("a", "t/word", 10, 0, 69),
  };
  try {
    BuildReport(rows);
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("a t/UPOS perturbed rate 10"),
              std::string::npos)
        << e.what();
  }
}

TEST(BuildReportTest, WordBaselineIsSharedAcrossSetups) {
  std::vector<ScoreRow> rows = {
      Row("a", "t/word", 0, 0, 70),
      Row("a", "t/UPOS", 0, 0, 72, "perturbed"),
      Row("a", "t/UPOS", 0, 0, 75, "clean"),
  };
  const Report report = BuildReport(rows);
  ASSERT_EQ(report.deltas.size(), 2u);
  EXPECT_DOUBLE_EQ(report.deltas[0].by_rate.at(0).mean, 5.0);  // clean
  EXPECT_DOUBLE_EQ(report.deltas[1].by_rate.at(0).mean, 2.0);
}

TEST(WriteReportTest, ReferenceTablesReproduceShapeAndDeltas) {
  const auto rows =
      ParseScoresDatabase(ReadTextFile(FixturePath("reference_tables.tsv")));
  ScopedTempDir dir;
  const auto files = EmitTables(rows, dir.path());
  EXPECT_TRUE(std::is_sorted(files.begin(), files.end()));

  for (const char* parser : {"transition", "graph", "seqlab"}) {
    const auto table =
        ReadTable(dir.path() / ("las_" + std::string(parser) + "_perturbed.tsv"));
    ASSERT_EQ(table.size(), 12u) << parser;
    EXPECT_EQ(table[0], (std::vector<std::string>{"rate", "word", "UPOS",
                                                  "XPOS", "FEATS"}));
    for (std::size_t r = 1; r < table.size(); ++r) {
      EXPECT_EQ(table[r].size(), 5u);
      EXPECT_EQ(table[r][0], std::to_string((r - 1) * 10));
    }
  }
  const auto graph = ReadTable(dir.path() / "las_graph_perturbed.tsv");
  EXPECT_EQ(graph[11][1], "70.59");
  EXPECT_EQ(graph[11][2], "59.23");

  const auto delta = ReadTable(dir.path() / "delta_graph_UPOS_perturbed.tsv");
  EXPECT_EQ(delta[11][0], "100");
  EXPECT_NEAR(std::stod(delta[11][1]), -11.36, 0.005);

  const auto seq_xpos =
      ReadTable(dir.path() / "delta_seqlab_XPOS_perturbed.tsv");
  EXPECT_NEAR(std::stod(seq_xpos[11][1]), 2.05, 0.005);

  const auto tagger = ReadTable(dir.path() / "tagger_accuracy.tsv");
  ASSERT_EQ(tagger.size(), 12u);
  EXPECT_EQ(tagger[1], (std::vector<std::string>{"0", "89.76", "87.80",
                                                 "83.38"}));
}

TEST(WriteReportTest, OutputIsAPureFunctionOfTheDatabase) {
  const auto rows =
      ParseScoresDatabase(ReadTextFile(FixturePath("reference_tables.tsv")));
  ScopedTempDir a, b;
  const auto files = EmitTables(rows, a.path());
  EXPECT_EQ(EmitTables(rows, b.path()), files);
  for (const auto& name : files) {
    EXPECT_EQ(ReadTextFile(a.path() / name), ReadTextFile(b.path() / name))
        << name;
  }
}

}  // namespace
}  // namespace udperturb
