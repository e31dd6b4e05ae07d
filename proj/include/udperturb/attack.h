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

#ifndef UDPERTURB_ATTACK_H_
#define UDPERTURB_ATTACK_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udperturb/conllu.h"
#include "udperturb/keyboard.h"
#include "udperturb/random.h"

namespace udperturb {

enum class AttackKind { kDrop, kSwap, kInsert, kReplace };

inline constexpr std::array<AttackKind, 4> kAllAttackKinds = {
    AttackKind::kDrop, AttackKind::kSwap, AttackKind::kInsert,
    AttackKind::kReplace};

std::string_view AttackKindName(AttackKind kind);  // "Drop", "Swap", ...
std::optional<AttackKind> ParseAttackKind(std::string_view name);

// Which tokens may be attacked and which keyboard drives Insert/Replace.
struct PerturbationPolicy {
  explicit PerturbationPolicy(KeyboardLayout keyboard)
      : layout(std::move(keyboard)) {}

  std::set<std::string> content_upos = DefaultContentUpos();
  int min_form_length = 3;  // in Unicode scalar values; must be >= 2
  KeyboardLayout layout;

  static std::set<std::string> DefaultContentUpos() {
    return {"ADJ", "ADV", "INTJ", "PROPN", "NOUN", "VERB"};
  }
};

struct AttackRecord {
  std::size_t sentence_index = 0;  // 0-based
  int token_id = 0;
  std::string original_form;
  std::string perturbed_form;
  AttackKind kind = AttackKind::kDrop;
  int position = 0;                // 1-based character index of the edit
  std::uint64_t rng_seed = 0;      // stream seed of the sentence

  bool operator==(const AttackRecord&) const = default;
};

struct AttackResult {
  std::string form;
  int position = 0;
};

// Ids of the tokens the policy allows to be attacked, in sentence order.
std::vector<int> EligibleTokens(const Sentence& sentence,
                                const PerturbationPolicy& policy);

// floor(rate * eligible + 0.5).
std::size_t TargetCount(double rate, std::size_t eligible);

// Seeded partial Fisher-Yates shuffle over a list of token ids. Each Draw()
// fixes one more slot of the shuffle; ids already drawn are never returned
// again.
class TargetPool {
 public:
  explicit TargetPool(std::span<const int> eligible)
      : ids_(eligible.begin(), eligible.end()) {}

  std::optional<int> Draw(UniformSource& random);
  std::size_t remaining() const { return ids_.size() - drawn_; }

 private:
  std::vector<int> ids_;
  std::size_t drawn_ = 0;
};

// TargetCount(rate, |eligible|) ids chosen by the partial shuffle, ascending.
std::vector<int> SelectTargets(std::span<const int> eligible, double rate,
                               UniformSource& random);

// Applies one attack of the given kind to `form`:
//   Drop     removes a character at position 2..len (the first is kept).
//   Swap     exchanges an adjacent pair of differing characters.
//   Insert   adds, after some character, a keyboard neighbour of it.
//   Replace  substitutes a character with one of its keyboard neighbours.
// Inserted and replacement characters take the case of the character they
// are derived from. Returns nullopt when the kind has no legal site.
std::optional<AttackResult> ApplyAttack(std::string_view form, AttackKind kind,
                                        UniformSource& random,
                                        const KeyboardLayout& layout);

struct PerturbedTreebank {
  Treebank treebank;
  std::vector<AttackRecord> records;  // sentence-major, token-minor
};

// Stream seed of sentence `index` under treebank seed `seed`.
std::uint64_t SentenceSeed(std::uint64_t seed, std::size_t index);

// Attacks floor(rate * eligible + 0.5) eligible tokens of every sentence,
// each exactly once. Only FORM columns change. rate is a fraction in [0, 1].
PerturbedTreebank PerturbTreebank(const Treebank& treebank,
                                  const PerturbationPolicy& policy,
                                  double rate, std::uint64_t seed);

// ".attacks.tsv" sidecar: sentence_index, token_id, original_form,
// perturbed_form, kind, position, rng_seed (lowercase hex), tab-separated.
std::string FormatAttackRecords(std::span<const AttackRecord> records);
std::vector<AttackRecord> ParseAttackRecords(std::string_view text);

}  // namespace udperturb

#endif  // UDPERTURB_ATTACK_H_
