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

#include "udperturb/conllu.h"

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "udperturb/errors.h"
#include "udperturb/io.h"

namespace udperturb {
namespace {

using test_util::FixturePath;

constexpr char kMinimal[] = "1\thi\t_\tINTJ\t_\t_\t0\troot\t_\t_\n\n";

TEST(ParseConlluTest, EmptyInput) {
  EXPECT_TRUE(ParseConllu("").sentences.empty());
  EXPECT_EQ(SerializeConllu(Treebank{}), "");
}

TEST(ParseConlluTest, MinimalSentence) {
  const Treebank tb = ParseConllu(kMinimal);
  ASSERT_EQ(tb.sentences.size(), 1u);
  ASSERT_EQ(tb.sentences[0].size(), 1u);
  const Token& t = tb.sentences[0].tokens[0];
  EXPECT_EQ(t.form, "hi");
  EXPECT_EQ(t.head, 0);
  EXPECT_EQ(t.deprel, "root");
  EXPECT_EQ(SerializeConllu(tb), kMinimal);
}

TEST(ParseConlluTest, MissingFinalBlankLineIsAccepted) {
  const Treebank tb = ParseConllu("1\thi\t_\tINTJ\t_\t_\t0\troot\t_\t_\n");
  ASSERT_EQ(tb.sentences.size(), 1u);
  EXPECT_EQ(SerializeConllu(tb), kMinimal);
}

TEST(ParseConlluTest, FixtureRoundTripIsByteExact) {
  const std::string text = ReadTextFile(FixturePath("sample.conllu"));
  const Treebank tb = ParseConllu(text);
  ASSERT_EQ(tb.sentences.size(), 3u);
  EXPECT_EQ(SerializeConllu(tb), NormalizeNewlines(text));
}

TEST(ParseConlluTest, FixtureStructure) {
  const Treebank tb = ReadConlluFile(FixturePath("sample.conllu"));
  EXPECT_EQ(tb.TokenCount(), 7u + 6u + 6u);

  const Sentence& s2 = tb.sentences[1];
  ASSERT_EQ(s2.mwt_ranges.size(), 2u);
  EXPECT_EQ(s2.mwt_ranges[0].start, 1);
  EXPECT_EQ(s2.mwt_ranges[0].end, 2);
  EXPECT_EQ(s2.mwt_ranges[0].surface_form, "Vámonos");
  EXPECT_EQ(s2.mwt_ranges[1].surface_form, "al");

  const Sentence& s3 = tb.sentences[2];
  ASSERT_EQ(s3.empty_nodes.size(), 1u);
  EXPECT_EQ(s3.empty_nodes[0].after_token, 5);
  EXPECT_EQ(s3.comments.size(), 2u);
  EXPECT_EQ(s3.tokens[1].feats,
            (std::vector<Feature>{{"Number", "Sing"},
                                  {"Person", "3"},
                                  {"Tense", "Pres"}}));
}

TEST(ParseConlluTest, CrlfIsNormalised) {
  std::string crlf = ReadTextFile(FixturePath("sample.conllu"));
  std::string with_cr;
  for (char c : crlf) {
    if (c == '\n') with_cr += '\r';
    with_cr += c;
  }
  EXPECT_EQ(SerializeConllu(ParseConllu(with_cr)), crlf);
}

TEST(ParseConlluTest, NoLinesAreDropped) {
  const std::string text = ReadTextFile(FixturePath("sample.conllu"));
  std::size_t word_lines = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::string line = text.substr(start, end - start);
    if (!line.empty() && line[0] != '#') {
      const std::string id = line.substr(0, line.find('\t'));
      if (id.find('-') == std::string::npos) ++word_lines;
    }
    start = end + 1;
  }
  const Treebank tb = ParseConllu(text);
  std::size_t empty_nodes = 0;
  for (const auto& s : tb.sentences) empty_nodes += s.empty_nodes.size();
  EXPECT_EQ(word_lines, tb.TokenCount() + empty_nodes);
}

TEST(ParseConlluTest, ErrorsCarryLineNumbers) {
  struct Case {
    std::string text;
    std::size_t line;
  };
  const std::vector<Case> cases = {
      {"1\thi\t_\tINTJ\t_\t_\t0\troot\t_\n", 1},              // 9 columns
      {"1\thi\t_\tINTJ\t_\t_\t0\troot\t_\t_\n"
       "3\tx\t_\tX\t_\t_\t1\tdep\t_\t_\n", 2},                 // id gap
      {"1\thi\t_\tINTJ\t_\t_\tzero\troot\t_\t_\n", 1},         // bad head
      {"1\thi\t_\tINTJ\t_\t_\t5\troot\t_\t_\n\n", 1},          // head > n
      {"1\thi\t_\tINTJ\t_\tNoEquals\t0\troot\t_\t_\n", 1},     // bad feats
      {"#c\n#d\n1\t\t_\tINTJ\t_\t_\t0\troot\t_\t_\n", 3},        // empty form
      {"#c\n\n", 2},                                          // no tokens
  };
  for (const Case& c : cases) {
    try {
      ParseConllu(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
    }
  }
}

TEST(ParseConlluTest, InvalidUtf8IsAnEncodingError) {
  const std::string text = "# ok\n1\th\xC3\x28\t_\tX\t_\t_\t0\troot\t_\t_\n";
  try {
    ParseConllu(text);
    FAIL();
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(FeaturesTest, CanonicalOrder) {
  EXPECT_EQ(CanonicalFeatures(ParseFeatures("Number=Sing|Case=Nom")),
            CanonicalFeatures(ParseFeatures("Case=Nom|Number=Sing")));
  EXPECT_EQ(FormatFeatures({}), "_");
  EXPECT_TRUE(ParseFeatures("_").empty());
}

TEST(ValidateHeadsTest, Examples) {
  const std::vector<int> single = {0};
  TreeReport r = ValidateHeads(single);
  EXPECT_TRUE(r.is_tree);
  EXPECT_EQ(r.root_count, 1);
  EXPECT_TRUE(r.cycle_members.empty());

  const std::vector<int> two_cycle = {2, 1};
  r = ValidateHeads(two_cycle);
  EXPECT_FALSE(r.is_tree);
  EXPECT_EQ(r.cycle_members, (std::vector<int>{1, 2}));

  const std::vector<int> hand = {2, 0, 2, 3};
  r = ValidateHeads(hand);
  EXPECT_TRUE(r.is_tree);
  EXPECT_EQ(r.root_count, 1);
}

TEST(ValidateHeadsTest, CycleMembersExcludeTails) {
  // 4 -> 1 -> 2 -> 3 -> 2: only 2 and 3 are on the cycle.
  const std::vector<int> heads = {2, 3, 2, 1};
  const TreeReport r = ValidateHeads(heads);
  EXPECT_FALSE(r.is_tree);
  EXPECT_EQ(r.cycle_members, (std::vector<int>{2, 3}));
}

TEST(ValidateHeadsTest, AgreesWithReachabilityOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<int> heads(n);
    for (int& h : heads) h = static_cast<int>(rng() % (n + 1));
    EXPECT_EQ(ValidateHeads(heads).is_tree, test_util::IsTreeOracle(heads))
        << "trial " << trial;
  }
}

TEST(TagColumnTest, ParseIsCaseInsensitive) {
  EXPECT_EQ(ParseTagColumn("upos"), TagColumn::kUpos);
  EXPECT_EQ(ParseTagColumn("XPOS"), TagColumn::kXpos);
  EXPECT_EQ(ParseTagColumn("Feats"), TagColumn::kFeats);
  EXPECT_FALSE(ParseTagColumn("lemma").has_value());
  EXPECT_EQ(TagColumnName(TagColumn::kFeats), "FEATS");
}

}  // namespace
}  // namespace udperturb
