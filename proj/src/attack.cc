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

#include "udperturb/attack.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "udperturb/errors.h"
#include "udperturb/unicode.h"

namespace udperturb {
namespace {

// Snaps rate * n to the nearest integer count, ties upward. The epsilon
// absorbs binary rounding of decimal rates such as 0.7 * 5.
constexpr double kRoundingSlack = 1e-9;

char32_t MatchCase(char32_t replacement, char32_t model) {
  return IsUpper(model) ? ToUpper(replacement) : replacement;
}

std::u32string Decode(std::string_view form) {
  auto decoded = DecodeUtf8(form);
  if (!decoded) throw ContractError("form is not valid UTF-8");
  return *std::move(decoded);
}

template <typename T>
const T& Pick(const std::vector<T>& items, UniformSource& random) {
  return items[static_cast<std::size_t>(random.Uniform(items.size()))];
}

// Case-adjusted keyboard neighbours of c that differ from c itself.
std::vector<char32_t> Neighbours(char32_t c, const KeyboardLayout& layout) {
  std::vector<char32_t> out;
  for (char32_t key : layout.AdjacentKeys(c)) {
    const char32_t cased = MatchCase(key, c);
    if (cased != c) out.push_back(cased);
  }
  return out;
}

std::optional<AttackResult> Drop(std::u32string chars, UniformSource& random) {
  if (chars.size() < 2) return std::nullopt;
  const auto index = 1 + random.Uniform(chars.size() - 1);
  chars.erase(index, 1);
  return AttackResult{EncodeUtf8(chars), static_cast<int>(index) + 1};
}

std::optional<AttackResult> Swap(std::u32string chars, UniformSource& random) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i + 1 < chars.size(); ++i) {
    if (chars[i] != chars[i + 1]) sites.push_back(i);
  }
  if (sites.empty()) return std::nullopt;
  const std::size_t i = Pick(sites, random);
  std::swap(chars[i], chars[i + 1]);
  return AttackResult{EncodeUtf8(chars), static_cast<int>(i) + 1};
}

std::optional<AttackResult> Insert(std::u32string chars, UniformSource& random,
                                   const KeyboardLayout& layout) {
  // Gap g follows the character at 0-based index g.
  std::vector<std::size_t> gaps;
  for (std::size_t g = 0; g < chars.size(); ++g) {
    if (!layout.AdjacentKeys(chars[g]).empty()) gaps.push_back(g);
  }
  if (gaps.empty()) return std::nullopt;
  const std::size_t g = Pick(gaps, random);
  const char32_t inserted = MatchCase(Pick(layout.AdjacentKeys(chars[g]),
                                           random),
                                      chars[g]);
  chars.insert(chars.begin() + static_cast<std::ptrdiff_t>(g) + 1, inserted);
  return AttackResult{EncodeUtf8(chars), static_cast<int>(g) + 2};
}

std::optional<AttackResult> Replace(std::u32string chars,
                                    UniformSource& random,
                                    const KeyboardLayout& layout) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (!Neighbours(chars[i], layout).empty()) sites.push_back(i);
  }
  if (sites.empty()) return std::nullopt;
  const std::size_t i = Pick(sites, random);
  chars[i] = Pick(Neighbours(chars[i], layout), random);
  return AttackResult{EncodeUtf8(chars), static_cast<int>(i) + 1};
}

std::string ToHex(std::uint64_t value) {
  char buffer[17];
  const auto [end, ec] = std::to_chars(buffer, buffer + 16, value, 16);
  return std::string(buffer, end);
}

}  // namespace

std::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kDrop:
      return "Drop";
    case AttackKind::kSwap:
      return "Swap";
    case AttackKind::kInsert:
      return "Insert";
    case AttackKind::kReplace:
      return "Replace";
  }
  return "?";
}

std::optional<AttackKind> ParseAttackKind(std::string_view name) {
  for (AttackKind kind : kAllAttackKinds) {
    if (AttackKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::vector<int> EligibleTokens(const Sentence& sentence,
                                const PerturbationPolicy& policy) {
  if (policy.min_form_length < 2) {
    throw ContractError("min_form_length must be at least 2");
  }
  std::vector<int> ids;
  for (const auto& token : sentence.tokens) {
    if (!policy.content_upos.count(token.upos)) continue;
    const std::u32string chars = Decode(token.form);
    if (chars.size() < static_cast<std::size_t>(policy.min_form_length)) {
      continue;
    }
    if (std::any_of(chars.begin(), chars.end(), [&](char32_t c) {
          return policy.layout.Contains(c);
        })) {
      ids.push_back(token.id);
    }
  }
  return ids;
}

std::size_t TargetCount(double rate, std::size_t eligible) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ContractError("perturbation rate must lie in [0, 1]");
  }
  return static_cast<std::size_t>(std::floor(
      rate * static_cast<double>(eligible) + 0.5 + kRoundingSlack));
}

std::optional<int> TargetPool::Draw(UniformSource& random) {
  if (drawn_ == ids_.size()) return std::nullopt;
  const std::size_t j = drawn_ + random.Uniform(ids_.size() - drawn_);
  std::swap(ids_[drawn_], ids_[j]);
  return ids_[drawn_++];
}

std::vector<int> SelectTargets(std::span<const int> eligible, double rate,
                               UniformSource& random) {
  const std::size_t k = TargetCount(rate, eligible.size());
  TargetPool pool(eligible);
  std::vector<int> targets;
  targets.reserve(k);
  for (std::size_t i = 0; i < k; ++i) targets.push_back(*pool.Draw(random));
  std::sort(targets.begin(), targets.end());
  return targets;
}

std::optional<AttackResult> ApplyAttack(std::string_view form, AttackKind kind,
                                        UniformSource& random,
                                        const KeyboardLayout& layout) {
  std::u32string chars = Decode(form);
  switch (kind) {
    case AttackKind::kDrop:
      return Drop(std::move(chars), random);
    case AttackKind::kSwap:
      return Swap(std::move(chars), random);
    case AttackKind::kInsert:
      return Insert(std::move(chars), random, layout);
    case AttackKind::kReplace:
      return Replace(std::move(chars), random, layout);
  }
  return std::nullopt;
}

std::uint64_t SentenceSeed(std::uint64_t seed, std::size_t index) {
  return MixSeed(seed ^ ((static_cast<std::uint64_t>(index) + 1) *
                         SplitMix64::kGoldenGamma));
}

namespace {

// Tries the four kinds in random order until one applies.
std::optional<std::pair<AttackKind, AttackResult>> AttackWithSomeKind(
    std::string_view form, UniformSource& random,
    const KeyboardLayout& layout) {
  std::vector<AttackKind> remaining(kAllAttackKinds.begin(),
                                    kAllAttackKinds.end());
  while (!remaining.empty()) {
    const std::size_t i =
        static_cast<std::size_t>(random.Uniform(remaining.size()));
    const AttackKind kind = remaining[i];
    if (auto result = ApplyAttack(form, kind, random, layout)) {
      return std::make_pair(kind, *std::move(result));
    }
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return std::nullopt;
}

void PerturbSentence(Sentence& sentence, std::size_t index,
                     const PerturbationPolicy& policy, double rate,
                     std::uint64_t seed, std::vector<AttackRecord>& records) {
  const std::vector<int> eligible = EligibleTokens(sentence, policy);
  const std::size_t k = TargetCount(rate, eligible.size());
  if (k == 0) return;
  const std::uint64_t stream_seed = SentenceSeed(seed, index);
  SplitMix64 random(stream_seed);
  TargetPool pool(eligible);
  std::vector<int> targets;
  for (std::size_t i = 0; i < k; ++i) targets.push_back(*pool.Draw(random));
  std::sort(targets.begin(), targets.end());

  const std::size_t first_record = records.size();
  for (int target : targets) {
    std::optional<int> id = target;
    while (id) {
      Token& token = sentence.tokens[static_cast<std::size_t>(*id) - 1];
      if (auto attack = AttackWithSomeKind(token.form, random, policy.layout)) {
        records.push_back(AttackRecord{index, *id, token.form,
                                       attack->second.form, attack->first,
                                       attack->second.position, stream_seed});
        token.form = std::move(attack->second.form);
        break;
      }
      // No kind applies to this token; give the slot to an unselected one.
      id = pool.Draw(random);
    }
  }
  std::sort(records.begin() + static_cast<std::ptrdiff_t>(first_record),
            records.end(), [](const AttackRecord& a, const AttackRecord& b) {
              return a.token_id < b.token_id;
            });
}

}  // namespace

PerturbedTreebank PerturbTreebank(const Treebank& treebank,
                                  const PerturbationPolicy& policy,
                                  double rate, std::uint64_t seed) {
  TargetCount(rate, 0);  // validates the rate even for empty treebanks
  PerturbedTreebank out{treebank, {}};
  for (std::size_t s = 0; s < out.treebank.sentences.size(); ++s) {
    PerturbSentence(out.treebank.sentences[s], s, policy, rate, seed,
                    out.records);
  }
  return out;
}

std::string FormatAttackRecords(std::span<const AttackRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += std::to_string(r.sentence_index) + "\t" +
           std::to_string(r.token_id) + "\t" + r.original_form + "\t" +
           r.perturbed_form + "\t" + std::string(AttackKindName(r.kind)) +
           "\t" + std::to_string(r.position) + "\t" + ToHex(r.rng_seed) +
           "\n";
  }
  return out;
}

std::vector<AttackRecord> ParseAttackRecords(std::string_view text) {
  std::vector<AttackRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t newline = text.find('\n', pos);
    if (newline == std::string_view::npos) newline = text.size();
    std::string_view line = text.substr(pos, newline - pos);
    pos = newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != line.npos;
         start = tab + 1) {
      f.push_back(line.substr(start, tab - start));
    }
    f.push_back(line.substr(start));
    if (f.size() != 7) throw ParseError(line_no, "expected 7 columns");
    AttackRecord r;
    const auto number = [&](std::string_view s, auto& out, int base) {
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out,
                                           base);
      if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
        throw ParseError(line_no, "bad number '" + std::string(s) + "'");
      }
    };
    number(f[0], r.sentence_index, 10);
    number(f[1], r.token_id, 10);
    r.original_form = f[2];
    r.perturbed_form = f[3];
    const auto kind = ParseAttackKind(f[4]);
    if (!kind) throw ParseError(line_no, "unknown attack kind");
    r.kind = *kind;
    number(f[5], r.position, 10);
    number(f[6], r.rng_seed, 16);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace udperturb
