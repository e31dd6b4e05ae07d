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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "udperturb/conllu.h"
#include "udperturb/errors.h"
#include "udperturb/unicode.h"

namespace udperturb {
namespace {

using test_util::DamerauLevenshtein;
using test_util::ScriptedSource;

PerturbationPolicy UsPolicy() {
  return PerturbationPolicy(LoadBundledLayout("en"));
}

Sentence MakeSentence(const std::vector<std::pair<std::string, std::string>>&
                          form_upos) {
  Sentence s;
  int id = 0;
  for (const auto& [form, upos] : form_upos) {
    Token t;
    t.id = ++id;
    t.form = form;
    t.upos = upos;
    t.head = id == 1 ? 0 : 1;
    t.deprel = id == 1 ? "root" : "dep";
    s.tokens.push_back(t);
  }
  return s;
}

int Distance(const std::string& a, const std::string& b) {
  return DamerauLevenshtein(*DecodeUtf8(a), *DecodeUtf8(b));
}

TEST(EligibleTokensTest, Examples) {
  const PerturbationPolicy policy = UsPolicy();
  EXPECT_EQ(EligibleTokens(MakeSentence({{"the", "DET"},
                                         {"cat", "NOUN"},
                                         {"sat", "VERB"}}),
                           policy),
            (std::vector<int>{2, 3}));
  EXPECT_TRUE(EligibleTokens(MakeSentence({{"ox", "NOUN"}}), policy).empty());
  EXPECT_TRUE(EligibleTokens(MakeSentence({{"123", "NOUN"}}), policy).empty());
  EXPECT_EQ(EligibleTokens(MakeSentence({{"año", "NOUN"}}), policy),
            (std::vector<int>{1}));
}

TEST(TargetCountTest, RoundsHalfUp) {
  EXPECT_EQ(TargetCount(0.0, 7), 0u);
  EXPECT_EQ(TargetCount(1.0, 3), 3u);
  EXPECT_EQ(TargetCount(0.5, 5), 3u);
  EXPECT_EQ(TargetCount(0.7, 5), 4u);
  EXPECT_EQ(TargetCount(0.1, 5), 1u);
  EXPECT_EQ(TargetCount(0.1, 4), 0u);
  EXPECT_THROW(TargetCount(1.5, 3), ContractError);
  EXPECT_THROW(TargetCount(-0.1, 3), ContractError);
}

TEST(SelectTargetsTest, Examples) {
  SplitMix64 rng(1);
  const std::vector<int> eligible = {2, 3, 5};
  EXPECT_TRUE(SelectTargets(eligible, 0.0, rng).empty());
  EXPECT_EQ(SelectTargets(eligible, 1.0, rng), eligible);
  const std::vector<int> five = {1, 2, 3, 4, 5};
  const auto half = SelectTargets(five, 0.5, rng);
  EXPECT_EQ(half.size(), 3u);
  EXPECT_TRUE(std::is_sorted(half.begin(), half.end()));
}

TEST(TargetPoolTest, NeverRepeats) {
  SplitMix64 rng(5);
  const std::vector<int> ids = {4, 8, 15, 16, 23, 42};
  TargetPool pool(ids);
  std::vector<int> seen;
  while (auto id = pool.Draw(rng)) seen.push_back(*id);
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(seen, ids);
  EXPECT_EQ(pool.remaining(), 0u);
}

TEST(ApplyAttackTest, ForcedSwap) {
  const KeyboardLayout us = LoadBundledLayout("en");
  ScriptedSource draws({1});
  const auto r = ApplyAttack("word", AttackKind::kSwap, draws, us);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->form, "wrod");
  EXPECT_EQ(r->position, 2);
}

TEST(ApplyAttackTest, SwapWithoutDifferingPairIsInapplicable) {
  const KeyboardLayout us = LoadBundledLayout("en");
  SplitMix64 rng(3);
  for (int i = 0; i < 20; ++i) {
    EXPECT_FALSE(ApplyAttack("aaa", AttackKind::kSwap, rng, us).has_value());
  }
}

TEST(ApplyAttackTest, ReplaceInheritsCase) {
  const KeyboardLayout us = LoadBundledLayout("en");
  ScriptedSource draws({0, 1});
  const auto r = ApplyAttack("Gato", AttackKind::kReplace, draws, us);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->form, "Fato");
  EXPECT_EQ(r->position, 1);
}

TEST(ApplyAttackTest, DropKeepsFirstCharacter) {
  const KeyboardLayout us = LoadBundledLayout("en");
  ScriptedSource draws({0});
  const auto r = ApplyAttack("cat", AttackKind::kDrop, draws, us);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->form, "ct");
  EXPECT_EQ(r->position, 2);
  EXPECT_EQ(draws.bounds(), (std::vector<std::uint64_t>{2}));
}

TEST(ApplyAttackTest, InsertAddsNeighbourAfterCharacter) {
  const KeyboardLayout us = LoadBundledLayout("en");
  // Gap after 'a' (index 1), then neighbour 'q' of {q,s,w,z}.
  ScriptedSource draws({1, 0});
  const auto r = ApplyAttack("Cat", AttackKind::kInsert, draws, us);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->form, "Caqt");
  EXPECT_EQ(r->position, 3);
}

TEST(ApplyAttackTest, NonLayoutCharactersAreNotEdited) {
  const KeyboardLayout us = LoadBundledLayout("en");
  SplitMix64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto r = ApplyAttack("1ñ9x", AttackKind::kReplace, rng, us);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->position, 4);
  }
  EXPECT_FALSE(
      ApplyAttack("123", AttackKind::kInsert, rng, us).has_value());
}

TEST(ApplyAttackTest, EveryKindIsASingleEdit) {
  const KeyboardLayout us = LoadBundledLayout("en");
  SplitMix64 rng(2024);
  const std::vector<std::string> forms = {"word", "Gato", "añejo", "AbCd",
                                          "hello", "zz9z", "Ümlaut"};
  for (const auto& form : forms) {
    for (AttackKind kind : kAllAttackKinds) {
      for (int i = 0; i < 50; ++i) {
        const auto r = ApplyAttack(form, kind, rng, us);
        if (!r) continue;
        EXPECT_EQ(Distance(form, r->form), 1)
            << form << " " << AttackKindName(kind) << " " << r->form;
      }
    }
  }
}

TEST(PerturbTreebankTest, RateZeroIsIdentity) {
  const Treebank tb = test_util::SyntheticTreebank(50, 3);
  const PerturbedTreebank out = PerturbTreebank(tb, UsPolicy(), 0.0, 9);
  EXPECT_EQ(SerializeConllu(out.treebank), SerializeConllu(tb));
  EXPECT_TRUE(out.records.empty());
}

TEST(PerturbTreebankTest, FullRateChangesEveryEligibleForm) {
  const PerturbationPolicy policy = UsPolicy();
  const Treebank tb = test_util::SyntheticTreebank(200, 4);
  const PerturbedTreebank out = PerturbTreebank(tb, policy, 1.0, 17);
  std::size_t eligible = 0;
  for (std::size_t s = 0; s < tb.sentences.size(); ++s) {
    for (int id : EligibleTokens(tb.sentences[s], policy)) {
      ++eligible;
      EXPECT_NE(tb.sentences[s].tokens[id - 1].form,
                out.treebank.sentences[s].tokens[id - 1].form);
    }
  }
  EXPECT_EQ(out.records.size(), eligible);
}

TEST(PerturbTreebankTest, PreservesAnnotationsAndFunctionWords) {
  const PerturbationPolicy policy = UsPolicy();
  const Treebank tb = test_util::SyntheticTreebank(300, 5);
  const PerturbedTreebank out = PerturbTreebank(tb, policy, 0.6, 21);
  ASSERT_EQ(out.treebank.sentences.size(), tb.sentences.size());
  for (std::size_t s = 0; s < tb.sentences.size(); ++s) {
    const auto& a = tb.sentences[s];
    const auto& b = out.treebank.sentences[s];
    ASSERT_EQ(a.size(), b.size());
    EXPECT_EQ(a.comments, b.comments);
    for (std::size_t i = 0; i < a.size(); ++i) {
      Token copy = b.tokens[i];
      copy.form = a.tokens[i].form;
      EXPECT_EQ(copy, a.tokens[i]);
      if (!policy.content_upos.count(a.tokens[i].upos)) {
        EXPECT_EQ(a.tokens[i].form, b.tokens[i].form);
      }
    }
  }
  for (const auto& r : out.records) {
    EXPECT_EQ(Distance(r.original_form, r.perturbed_form), 1);
    EXPECT_EQ(out.treebank.sentences[r.sentence_index]
                  .tokens[r.token_id - 1]
                  .form,
              r.perturbed_form);
    EXPECT_EQ(r.rng_seed, SentenceSeed(21, r.sentence_index));
  }
}

TEST(PerturbTreebankTest, Deterministic) {
  const Treebank tb = test_util::SyntheticTreebank(100, 6);
  const auto a = PerturbTreebank(tb, UsPolicy(), 0.3, 42);
  const auto b = PerturbTreebank(tb, UsPolicy(), 0.3, 42);
  EXPECT_EQ(SerializeConllu(a.treebank), SerializeConllu(b.treebank));
  EXPECT_EQ(a.records, b.records);
  const auto c = PerturbTreebank(tb, UsPolicy(), 0.3, 43);
  EXPECT_NE(SerializeConllu(a.treebank), SerializeConllu(c.treebank));
}

TEST(PerturbTreebankTest, KindsAreDrawnUniformly) {
  // Forms of distinct layout letters admit all four kinds, so each kind
  // should be picked with probability 1/4.
  Treebank tb;
  for (int s = 0; s < 2000; ++s) {
    tb.sentences.push_back(
        MakeSentence({{"house", "NOUN"}, {"garden", "NOUN"}}));
  }
  const auto out = PerturbTreebank(tb, UsPolicy(), 1.0, 77);
  ASSERT_EQ(out.records.size(), 4000u);
  std::map<AttackKind, int> counts;
  for (const auto& r : out.records) ++counts[r.kind];
  const double n = 4000.0;
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (AttackKind kind : kAllAttackKinds) {
    EXPECT_NEAR(counts[kind], n / 4, 3 * sigma) << AttackKindName(kind);
  }
}

TEST(AttackRecordsTest, SidecarRoundTrip) {
  const Treebank tb = test_util::SyntheticTreebank(40, 8);
  const auto out = PerturbTreebank(tb, UsPolicy(), 0.5, 0xDEADBEEF);
  ASSERT_FALSE(out.records.empty());
  const std::string text = FormatAttackRecords(out.records);
  EXPECT_EQ(ParseAttackRecords(text), out.records);
  EXPECT_THROW(ParseAttackRecords("1\t2\tx\n"), ParseError);
}

}  // namespace
}  // namespace udperturb
