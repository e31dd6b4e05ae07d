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

#include "udperturb/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "udperturb/attack.h"
#include "udperturb/conllu.h"
#include "udperturb/errors.h"
#include "udperturb/evaluation.h"
#include "udperturb/io.h"
#include "udperturb/keyboard.h"
#include "udperturb/report.h"
#include "udperturb/suite.h"
#include "udperturb/tree_codec.h"

namespace udperturb {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kDefaultLayout = "en";

struct PerturbArgs {
  std::string input;
  std::string out_dir;
  std::string seed;
  double rate = 0.0;
  std::string layout{kDefaultLayout};
  std::string policy;
};

struct SuiteArgs {
  std::string input;
  std::string out_dir;
  std::string seed;
  std::string rates;
  int runs = 0;
  std::string layout;
  std::string policy;
};

struct CodecArgs {
  std::string input;
  std::string out_dir;
};

struct OverlayArgs {
  std::string input;
  std::string gold;
  std::string column;
  std::string out_dir;
};

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string deprel = "full";
  std::string column;
  bool exclude_punct = false;
  std::string db;
  std::string treebank;
  std::string config;
  std::string tag_setup = "perturbed";
  int rate = 0;
  int run = 0;
};

struct ReportArgs {
  std::string input;
  std::string out_dir;
};

// Decimal or 0x-prefixed hexadecimal 64-bit seed.
std::uint64_t ParseSeed(const std::string& text) {
  std::string_view digits = text;
  int base = 10;
  if (digits.starts_with("0x") || digits.starts_with("0X")) {
    digits.remove_prefix(2);
    base = 16;
  }
  std::uint64_t seed = 0;
  const auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), seed, base);
  if (digits.empty() || ec != std::errc() ||
      end != digits.data() + digits.size()) {
    throw CLI::ValidationError("--seed", "expected a 64-bit unsigned integer");
  }
  return seed;
}

PerturbationPolicy MakePolicy(const ExperimentSettings& settings,
                              const std::string& layout_flag) {
  std::string layout = layout_flag;
  if (layout.empty()) {
    layout = settings.layout.value_or(std::string(kDefaultLayout));
  }
  PerturbationPolicy policy(ResolveLayout(layout));
  if (settings.content_upos) policy.content_upos = *settings.content_upos;
  if (settings.min_form_length) {
    policy.min_form_length = *settings.min_form_length;
  }
  return policy;
}

ExperimentSettings LoadSettings(const std::string& path) {
  if (path.empty()) return {};
  try {
    return ParseExperimentSettings(ReadTextFile(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void WriteOrPrint(const std::string& out_dir, const std::string& file_name,
                  const std::string& text, std::ostream& out) {
  if (out_dir.empty()) {
    out << text;
  } else {
    WriteTextFile(fs::path(out_dir) / file_name, text);
  }
}

int RunPerturb(const PerturbArgs& a, std::ostream& out) {
  const std::uint64_t seed = ParseSeed(a.seed);
  const ExperimentSettings settings = LoadSettings(a.policy);
  const PerturbationPolicy policy = MakePolicy(settings, a.layout);
  const Treebank treebank = ReadConlluFile(a.input);
  const PerturbedTreebank result =
      PerturbTreebank(treebank, policy, a.rate / 100.0, seed);
  const std::string stem = fs::path(a.input).stem().string();
  const fs::path dir(a.out_dir);
  WriteConlluFile(dir / (stem + ".conllu"), result.treebank);
  WriteTextFile(dir / (stem + ".attacks.tsv"),
                FormatAttackRecords(result.records));
  out << "attacked " << result.records.size() << " of "
      << treebank.TokenCount() << " tokens\n";
  return kExitOk;
}

int RunSuite(const SuiteArgs& a, std::ostream& out) {
  const std::uint64_t seed = ParseSeed(a.seed);
  const ExperimentSettings settings = LoadSettings(a.policy);
  SuiteConfig config(MakePolicy(settings, a.layout));
  config.master_seed = seed;
  if (settings.rates) config.rates = *settings.rates;
  if (settings.runs) config.runs_per_rate = *settings.runs;
  if (!a.rates.empty()) config.rates = ParseRateList(a.rates);
  if (a.runs > 0) config.runs_per_rate = a.runs;
  const Treebank treebank = ReadConlluFile(a.input);
  const SuiteManifest manifest = GenerateSuite(treebank, config, a.out_dir);
  out << "wrote " << manifest.entries.size() << " treebank files to "
      << a.out_dir << "\n";
  out << "non-2-planar sentences: " << CountNonTwoPlanar(treebank) << "\n";
  return kExitOk;
}

int RunEncode(const CodecArgs& a, std::ostream& out, std::ostream& err) {
  const Treebank treebank = ReadConlluFile(a.input);
  std::vector<LabeledSentence> labeled;
  try {
    labeled = EncodeTreebank(treebank);
  } catch (const EncodingFailure&) {
    err << "non-2-planar sentences in " << a.input << ": "
        << CountNonTwoPlanar(treebank) << "\n";
    throw;
  }
  WriteOrPrint(a.out_dir, fs::path(a.input).stem().string() + ".labels.tsv",
               FormatLabelFile(labeled), out);
  return kExitOk;
}

int RunDecode(const CodecArgs& a, std::ostream& out) {
  const auto labeled = ParseLabelFile(ReadTextFile(a.input));
  WriteOrPrint(a.out_dir, fs::path(a.input).stem().string() + ".conllu",
               SerializeConllu(DecodeToTreebank(labeled)), out);
  return kExitOk;
}

int RunOverlay(const OverlayArgs& a, std::ostream& out) {
  const auto column = ParseTagColumn(a.column);
  if (!column) {
    throw CLI::ValidationError("--column", "expected UPOS, XPOS or FEATS");
  }
  const Treebank perturbed = ReadConlluFile(a.input);
  const Treebank source = ReadConlluFile(a.gold);
  const Treebank overlaid = OverlayTags(perturbed, source, *column);
  WriteOrPrint(a.out_dir, fs::path(a.input).filename().string(),
               SerializeConllu(overlaid), out);
  return kExitOk;
}

int RunEval(const EvalArgs& a, std::ostream& out) {
  const auto granularity = ParseDeprelGranularity(a.deprel);
  if (!granularity) {
    throw CLI::ValidationError("--deprel", "expected full or universal");
  }
  std::optional<TagColumn> only;
  if (!a.column.empty()) {
    only = ParseTagColumn(a.column);
    if (!only) {
      throw CLI::ValidationError("--column", "expected UPOS, XPOS or FEATS");
    }
  }
  if (!a.db.empty() && a.config.empty()) {
    throw CLI::ValidationError("--config", "required when --db is given");
  }
  const Treebank gold = ReadConlluFile(a.gold);
  const Treebank pred = ReadConlluFile(a.pred);
  ScoreOptions options;
  options.deprel_granularity = *granularity;
  options.include_punct = !a.exclude_punct;
  const EvalScore score = AttachmentScores(gold, pred, options);

  ScoreRow row;
  row.treebank =
      a.treebank.empty() ? fs::path(a.gold).stem().string() : a.treebank;
  row.config = a.config;
  row.tag_setup = a.tag_setup;
  row.rate = a.rate;
  row.run = a.run;
  row.las = score.las;
  row.uas = score.uas;
  const auto accuracy = [&](TagColumn c) -> std::optional<double> {
    if (only && *only != c) return std::nullopt;
    return TagAccuracy(gold, pred, c);
  };
  row.upos_acc = accuracy(TagColumn::kUpos);
  row.xpos_acc = accuracy(TagColumn::kXpos);
  row.feats_acc = accuracy(TagColumn::kFeats);

  char line[256];
  std::snprintf(line, sizeof line, "las=%.2f\tuas=%.2f\ttokens=%zu", row.las,
                row.uas, score.token_count);
  out << line;
  for (auto [name, value] : {std::pair{"upos_acc", row.upos_acc},
                             std::pair{"xpos_acc", row.xpos_acc},
                             std::pair{"feats_acc", row.feats_acc}}) {
    if (!value) continue;
    std::snprintf(line, sizeof line, "\t%s=%.2f", name, *value);
    out << line;
  }
  out << "\n";

  if (!a.db.empty()) {
    std::string existing;
    if (fs::exists(a.db)) existing = ReadTextFile(a.db);
    if (existing.empty()) existing = std::string(kScoresHeader) + "\n";
    if (existing.back() != '\n') existing.push_back('\n');
    existing += FormatScoreRow(row) + "\n";
    WriteTextFile(a.db, existing);
  }
  return kExitOk;
}

int RunReport(const ReportArgs& a, std::ostream& out) {
  const auto rows = ParseScoresDatabase(ReadTextFile(a.input));
  for (const auto& name : EmitTables(rows, a.out_dir)) {
    out << (fs::path(a.out_dir) / name).string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Character-level perturbation suites and evaluation for "
               "CoNLL-U treebanks",
               "udperturb"};
  app.require_subcommand(1);

  PerturbArgs perturb;
  auto* perturb_cmd =
      app.add_subcommand("perturb", "Perturb one treebank at a single rate");
  perturb_cmd->add_option("--input", perturb.input, "CoNLL-U file")->required();
  perturb_cmd->add_option("--out-dir", perturb.out_dir)->required();
  perturb_cmd->add_option("--seed", perturb.seed, "64-bit seed")->required();
  perturb_cmd->add_option("--rate", perturb.rate,
                          "percentage of eligible words to attack")
      ->required()
      ->check(CLI::Range(0.0, 100.0));
  perturb_cmd->add_option("--layout", perturb.layout,
                          "bundled layout key or layout file");
  perturb_cmd->add_option("--policy", perturb.policy,
                          "key=value experiment settings file");

  SuiteArgs suite;
  auto* suite_cmd =
      app.add_subcommand("suite", "Generate the full rate x run suite");
  suite_cmd->add_option("--input", suite.input)->required();
  suite_cmd->add_option("--out-dir", suite.out_dir)->required();
  suite_cmd->add_option("--seed", suite.seed)->required();
  suite_cmd->add_option("--rates", suite.rates,
                        "comma-separated percentages (default 0,10,...,100)");
  suite_cmd->add_option("--runs", suite.runs, "runs per nonzero rate")
      ->check(CLI::PositiveNumber);
  suite_cmd->add_option("--layout", suite.layout);
  suite_cmd->add_option("--policy", suite.policy);

  CodecArgs encode;
  auto* encode_cmd =
      app.add_subcommand("encode", "Write 2-planar bracket labels");
  encode_cmd->add_option("--input", encode.input)->required();
  encode_cmd->add_option("--out-dir", encode.out_dir);

  CodecArgs decode;
  auto* decode_cmd =
      app.add_subcommand("decode", "Rebuild trees from a label file");
  decode_cmd->add_option("--input", decode.input)->required();
  decode_cmd->add_option("--out-dir", decode.out_dir);

  OverlayArgs overlay;
  auto* overlay_cmd = app.add_subcommand(
      "overlay-tags", "Copy one tag column from a clean treebank");
  overlay_cmd->add_option("--input", overlay.input, "perturbed treebank")
      ->required();
  overlay_cmd->add_option("--gold", overlay.gold, "treebank supplying tags")
      ->required();
  overlay_cmd->add_option("--column", overlay.column, "UPOS, XPOS or FEATS")
      ->required();
  overlay_cmd->add_option("--out-dir", overlay.out_dir);

  EvalArgs eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score a prediction file against gold");
  eval_cmd->add_option("--gold", eval.gold)->required();
  eval_cmd->add_option("--pred", eval.pred)->required();
  eval_cmd->add_option("--deprel", eval.deprel, "full or universal");
  eval_cmd->add_option("--column", eval.column,
                       "restrict tag accuracy to one column");
  eval_cmd->add_flag("--exclude-punct", eval.exclude_punct);
  eval_cmd->add_option("--db", eval.db, "append the scores to this database");
  eval_cmd->add_option("--treebank", eval.treebank);
  eval_cmd->add_option("--config", eval.config, "<parser>/<model>");
  eval_cmd->add_option("--tag-setup", eval.tag_setup)
      ->check(CLI::IsMember({"perturbed", "clean"}));
  eval_cmd->add_option("--rate", eval.rate)->check(CLI::Range(0, 100));
  eval_cmd->add_option("--run", eval.run)->check(CLI::NonNegativeNumber);

  ReportArgs report;
  auto* report_cmd =
      app.add_subcommand("report", "Build LAS tables and delta curves");
  report_cmd->add_option("--input", report.input, "scores database")
      ->required();
  report_cmd->add_option("--out-dir", report.out_dir)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (perturb_cmd->parsed()) return RunPerturb(perturb, out);
    if (suite_cmd->parsed()) return RunSuite(suite, out);
    if (encode_cmd->parsed()) return RunEncode(encode, out, err);
    if (decode_cmd->parsed()) return RunDecode(decode, out);
    if (overlay_cmd->parsed()) return RunOverlay(overlay, out);
    if (eval_cmd->parsed()) return RunEval(eval, out);
    if (report_cmd->parsed()) return RunReport(report, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::Error& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace udperturb
