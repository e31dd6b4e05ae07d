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

#include "udperturb/suite.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "udperturb/digest.h"
#include "udperturb/errors.h"
#include "udperturb/io.h"

namespace udperturb {
namespace {

constexpr std::string_view kManifestHeader =
    "rate\trun\tpath\tattacks_path\tseed_hex\tsha256";

void CheckConfig(const SuiteConfig& config) {
  if (config.runs_per_rate < 1) {
    throw ContractError("runs_per_rate must be at least 1");
  }
  std::set<int> seen;
  for (int rate : config.rates) {
    if (rate < 0 || rate > 100) {
      throw ContractError("rate " + std::to_string(rate) +
                          " is outside [0, 100]");
    }
    if (!seen.insert(rate).second) {
      throw ContractError("rate " + std::to_string(rate) + " listed twice");
    }
  }
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t at; (at = s.find(sep, start)) != s.npos; start = at + 1) {
    parts.push_back(s.substr(start, at - start));
  }
  parts.push_back(s.substr(start));
  return parts;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view s, int base = 10) {
  T value{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value,
                                       base);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

std::string Hex(std::uint64_t value) {
  char buffer[17];
  const auto [end, ec] = std::to_chars(buffer, buffer + 16, value, 16);
  return std::string(buffer, end);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t master, std::size_t rate_index,
                         std::size_t run_index) {
  const std::uint64_t cell =
      static_cast<std::uint64_t>(rate_index) * 1024 + run_index + 1;
  return MixSeed(master ^ (cell * SplitMix64::kGoldenGamma));
}

ManifestEntry GenerateSuiteEntry(const Treebank& treebank,
                                 const SuiteConfig& config,
                                 std::size_t rate_index, std::size_t run_index,
                                 const std::filesystem::path& out_dir) {
  CheckConfig(config);
  if (rate_index >= config.rates.size()) {
    throw ContractError("rate index out of range");
  }
  const int rate = config.rates[rate_index];
  ManifestEntry entry;
  entry.rate = rate;
  entry.run = static_cast<int>(run_index);
  entry.child_seed = DeriveSeed(config.master_seed, rate_index, run_index);
  const std::string stem =
      std::to_string(rate) + "/" + std::to_string(run_index);
  entry.path = stem + ".conllu";
  entry.attacks_path = stem + ".attacks.tsv";

  const PerturbedTreebank perturbed = PerturbTreebank(
      treebank, config.policy, rate / 100.0, entry.child_seed);
  const std::string text = SerializeConllu(perturbed.treebank);
  entry.sha256 = Sha256Hex(text);
  WriteTextFile(out_dir / entry.path, text);
  WriteTextFile(out_dir / entry.attacks_path,
                FormatAttackRecords(perturbed.records));
  return entry;
}

SuiteManifest GenerateSuite(const Treebank& treebank, const SuiteConfig& config,
                            const std::filesystem::path& out_dir,
                            unsigned threads) {
  CheckConfig(config);
  struct Cell {
    std::size_t rate_index;
    std::size_t run_index;
  };
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < config.rates.size(); ++r) {
    const int runs = config.rates[r] == 0 ? 1 : config.runs_per_rate;
    for (int run = 0; run < runs; ++run) {
      cells.push_back({r, static_cast<std::size_t>(run)});
    }
  }

  SuiteManifest manifest;
  manifest.entries.resize(cells.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      try {
        manifest.entries[i] = GenerateSuiteEntry(
            treebank, config, cells[i].rate_index, cells[i].run_index, out_dir);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) {
              return std::tie(a.rate, a.run) < std::tie(b.rate, b.run);
            });
  WriteTextFile(out_dir / kManifestFileName, FormatManifest(manifest));
  return manifest;
}

std::string FormatManifest(const SuiteManifest& manifest) {
  std::string out(kManifestHeader);
  out.push_back('\n');
  for (const auto& e : manifest.entries) {
    out += std::to_string(e.rate) + "\t" + std::to_string(e.run) + "\t" +
           e.path + "\t" + e.attacks_path + "\t" + Hex(e.child_seed) + "\t" +
           e.sha256 + "\n";
  }
  return out;
}

SuiteManifest ParseManifest(std::string_view text) {
  SuiteManifest manifest;
  std::size_t line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    line = Trim(line);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kManifestHeader) {
        throw ParseError(line_no, "unexpected manifest header");
      }
      continue;
    }
    const auto f = Split(line, '\t');
    if (f.size() != 6) throw ParseError(line_no, "expected 6 columns");
    const auto rate = ParseNumber<int>(f[0]);
    const auto run = ParseNumber<int>(f[1]);
    const auto seed = ParseNumber<std::uint64_t>(f[4], 16);
    if (!rate || !run || !seed) {
      throw ParseError(line_no, "bad numeric field");
    }
    manifest.entries.push_back(ManifestEntry{*rate, *run, std::string(f[2]),
                                             std::string(f[3]), *seed,
                                             std::string(f[5])});
  }
  return manifest;
}

Treebank OverlayTags(const Treebank& perturbed, const Treebank& tag_source,
                     TagColumn column) {
  const std::size_t common =
      std::min(perturbed.sentences.size(), tag_source.sentences.size());
  for (std::size_t s = 0; s < common; ++s) {
    const auto n = perturbed.sentences[s].size();
    const auto m = tag_source.sentences[s].size();
    if (n != m) {
      throw AlignmentError(s, "token counts differ (" + std::to_string(n) +
                                  " vs " + std::to_string(m) + ")");
    }
  }
  if (perturbed.sentences.size() != tag_source.sentences.size()) {
    throw AlignmentError(common, "sentence counts differ (" +
                                     std::to_string(perturbed.sentences.size()) +
                                     " vs " +
                                     std::to_string(tag_source.sentences.size()) +
                                     ")");
  }
  Treebank out = perturbed;
  for (std::size_t s = 0; s < common; ++s) {
    auto& tokens = out.sentences[s].tokens;
    const auto& source = tag_source.sentences[s].tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      switch (column) {
        case TagColumn::kUpos:
          tokens[i].upos = source[i].upos;
          break;
        case TagColumn::kXpos:
          tokens[i].xpos = source[i].xpos;
          break;
        case TagColumn::kFeats:
          tokens[i].feats = source[i].feats;
          break;
      }
    }
  }
  return out;
}

std::vector<int> ParseRateList(std::string_view text) {
  std::vector<int> rates;
  for (std::string_view item : Split(text, ',')) {
    item = Trim(item);
    const auto rate = ParseNumber<int>(item);
    if (!rate || *rate < 0 || *rate > 100) {
      throw ContractError("bad rate '" + std::string(item) +
                          "' (expected an integer percentage 0-100)");
    }
    rates.push_back(*rate);
  }
  return rates;
}

ExperimentSettings ParseExperimentSettings(std::string_view text) {
  ExperimentSettings settings;
  std::size_t line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == line.npos) throw ParseError(line_no, "expected key=value");
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    try {
      if (key == "rates") {
        settings.rates = ParseRateList(value);
      } else if (key == "runs") {
        settings.runs = ParseNumber<int>(value);
        if (!settings.runs || *settings.runs < 1) {
          throw ContractError("runs must be a positive integer");
        }
      } else if (key == "layout") {
        settings.layout = std::string(value);
      } else if (key == "content_upos") {
        std::set<std::string> tags;
        for (auto tag : Split(value, ',')) tags.emplace(Trim(tag));
        settings.content_upos = std::move(tags);
      } else if (key == "min_form_length") {
        settings.min_form_length = ParseNumber<int>(value);
        if (!settings.min_form_length || *settings.min_form_length < 2) {
          throw ContractError("min_form_length must be an integer >= 2");
        }
      } else {
        throw ContractError("unknown key '" + std::string(key) + "'");
      }
    } catch (const ContractError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return settings;
}

}  // namespace udperturb
