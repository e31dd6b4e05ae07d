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

#ifndef UDPERTURB_TREE_CODEC_H_
#define UDPERTURB_TREE_CODEC_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udperturb/conllu.h"

namespace udperturb {

// Split of a tree's arcs into two planes, keyed by dependent id.
struct PlaneAssignment {
  std::map<int, int> plane_of_arc;  // dependent id -> 1 or 2
  bool is_two_planar = true;
};

// Per-token 2-planar bracket label. `brackets` is built from
//   <   the token's head is to its right
//   \   one per dependent to the left
//   /   one per dependent to the right
//   >   the token's head is to its left
// in that order, each suffixed with '*' when the arc is on plane 2. Root
// attachments carry no incoming marker.
struct BracketLabel {
  std::string brackets;
  std::string deprel;

  bool operator==(const BracketLabel&) const = default;
};

// Heads and relations recovered from a label sequence; index i is token i+1.
struct DecodedTree {
  std::vector<int> heads;
  std::vector<std::string> deprels;

  bool operator==(const DecodedTree&) const = default;
};

// True when arcs {a, b} and {c, d} cross: exactly one endpoint of one arc
// lies strictly inside the other. Arcs sharing an endpoint never cross.
bool ArcsCross(int a, int b, int c, int d);

// Greedy assignment: arcs sorted by right endpoint (then left) go to plane 1
// unless they cross a plane-1 arc, else to plane 2 unless they cross a
// plane-2 arc; otherwise the tree is reported as not 2-planar.
// Throws ContractError if the heads do not form a tree.
PlaneAssignment AssignPlanes(std::span<const int> heads);
PlaneAssignment AssignPlanes(const Sentence& sentence);

// Throws EncodingFailure when the tree is not 2-planar and ContractError
// when it is not a tree.
std::vector<BracketLabel> EncodeTwoPlanar(std::span<const int> heads,
                                          std::span<const std::string> deprels);
std::vector<BracketLabel> EncodeTwoPlanar(const Sentence& sentence);

// Total decoder: any label sequence yields a tree. Closing markers of a token
// are matched before its opening markers are pushed; each plane keeps its own
// stack. Unmatched markers are dropped, headless tokens go to the root (the
// first of them relabelled "root"), and cycles are broken by re-attaching
// their smallest member to the root.
DecodedTree DecodeTwoPlanar(std::span<const BracketLabel> labels);

// Label files: "form<TAB>brackets<TAB>deprel" per token ("-" for an empty
// bracket string), blank line after each sentence.
struct LabeledSentence {
  std::vector<std::string> forms;
  std::vector<BracketLabel> labels;
};

std::string FormatLabelFile(std::span<const LabeledSentence> sentences);
std::vector<LabeledSentence> ParseLabelFile(std::string_view text);

// Encodes every sentence. Throws EncodingFailure naming the first sentence
// (0-based) that is not a tree or not 2-planar.
std::vector<LabeledSentence> EncodeTreebank(const Treebank& treebank);

// Number of sentences that are trees but not 2-planar under AssignPlanes.
std::size_t CountNonTwoPlanar(const Treebank& treebank);

// Builds a CoNLL-U treebank with forms, heads and relations; the other
// columns are "_".
Treebank DecodeToTreebank(std::span<const LabeledSentence> sentences);

}  // namespace udperturb

#endif  // UDPERTURB_TREE_CODEC_H_
