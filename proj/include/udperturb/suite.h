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

#ifndef UDPERTURB_SUITE_H_
#define UDPERTURB_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "udperturb/attack.h"
#include "udperturb/conllu.h"

namespace udperturb {

// The grid of perturbed test sets built from one treebank.
struct SuiteConfig {
  explicit SuiteConfig(PerturbationPolicy perturbation)
      : policy(std::move(perturbation)) {}

  std::vector<int> rates = DefaultRates();  // percentages in [0, 100]
  int runs_per_rate = 10;
  std::uint64_t master_seed = 0;
  PerturbationPolicy policy;

  static std::vector<int> DefaultRates() {
    return {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  }
};

struct ManifestEntry {
  int rate = 0;
  int run = 0;
  std::string path;          // relative to the suite directory
  std::string attacks_path;  // relative to the suite directory
  std::uint64_t child_seed = 0;
  std::string sha256;        // of the emitted treebank file

  bool operator==(const ManifestEntry&) const = default;
};

struct SuiteManifest {
  std::vector<ManifestEntry> entries;  // sorted by (rate, run)

  bool operator==(const SuiteManifest&) const = default;
};

inline constexpr std::string_view kManifestFileName = "manifest.tsv";

// MixSeed(master ^ ((rate_index * 1024 + run_index + 1) * golden gamma)).
std::uint64_t DeriveSeed(std::uint64_t master, std::size_t rate_index,
                         std::size_t run_index);

// Rate 0 yields a single unperturbed copy (run 0); every other rate yields
// runs_per_rate files. Files go to out_dir/<rate>/<run>.conllu with an
// .attacks.tsv sidecar next to each, and out_dir/manifest.tsv is written
// last. `threads` == 0 picks the hardware concurrency; the output does not
// depend on it.
SuiteManifest GenerateSuite(const Treebank& treebank, const SuiteConfig& config,
                            const std::filesystem::path& out_dir,
                            unsigned threads = 0);

// Regenerates one grid cell; used by GenerateSuite and for spot re-checks.
ManifestEntry GenerateSuiteEntry(const Treebank& treebank,
                                 const SuiteConfig& config,
                                 std::size_t rate_index, std::size_t run_index,
                                 const std::filesystem::path& out_dir);

std::string FormatManifest(const SuiteManifest& manifest);
SuiteManifest ParseManifest(std::string_view text);

// Copy of `perturbed` whose `column` is taken token-by-token from
// `tag_source`. Throws AlignmentError naming the first sentence whose token
// count differs (or the first missing sentence).
Treebank OverlayTags(const Treebank& perturbed, const Treebank& tag_source,
                     TagColumn column);

// Settings read from a flat key=value experiment file. Recognised keys:
// rates, runs, layout, content_upos, min_form_length. List values are
// comma-separated.
struct ExperimentSettings {
  std::optional<std::vector<int>> rates;
  std::optional<int> runs;
  std::optional<std::string> layout;
  std::optional<std::set<std::string>> content_upos;
  std::optional<int> min_form_length;
};

ExperimentSettings ParseExperimentSettings(std::string_view text);

// Parses "0,10,20" style lists of integer percentages.
std::vector<int> ParseRateList(std::string_view text);

}  // namespace udperturb

#endif  // UDPERTURB_SUITE_H_
