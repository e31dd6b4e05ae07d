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

#ifndef UDPERTURB_CONLLU_H_
#define UDPERTURB_CONLLU_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace udperturb {

// One key=value entry of the FEATS column.
struct Feature {
  std::string key;
  std::string value;

  bool operator==(const Feature&) const = default;
};

// A syntactic word (integer-id line) of a CoNLL-U sentence.
struct Token {
  int id = 0;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::vector<Feature> feats;  // empty <=> "_"
  int head = 0;                // 0 is the virtual root
  std::string deprel = "_";
  std::string deps = "_";      // opaque
  std::string misc = "_";      // opaque

  bool operator==(const Token&) const = default;
};

// An "a-b" multiword token line. Columns other than FORM and MISC are "_".
struct MwtRange {
  int start = 0;
  int end = 0;
  std::string surface_form;
  std::string misc = "_";

  bool operator==(const MwtRange&) const = default;
};

// An "a.b" empty node line, kept verbatim. It follows token `after_token`
// (0 when it precedes the first token).
struct EmptyNode {
  int after_token = 0;
  std::string line;

  bool operator==(const EmptyNode&) const = default;
};

struct Sentence {
  std::vector<std::string> comments;  // full lines, including the '#'
  std::vector<Token> tokens;          // ids are exactly 1..n
  std::vector<MwtRange> mwt_ranges;
  std::vector<EmptyNode> empty_nodes;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence&) const = default;
};

struct Treebank {
  std::vector<Sentence> sentences;
  std::string source_name;

  std::size_t TokenCount() const;
};

// Parses CoNLL-U text. Accepts "\n" and "\r\n" line endings.
// Throws EncodingError on invalid UTF-8 and ParseError on malformed lines;
// both carry the 1-based line number.
Treebank ParseConllu(std::string_view text, std::string source_name = "");

// Emits CoNLL-U with "\n" line endings and a blank line after every
// sentence. Inverse of ParseConllu up to NormalizeNewlines.
std::string SerializeConllu(const Treebank& treebank);
std::string FormatToken(const Token& token);

// Converts "\r\n" to "\n".
std::string NormalizeNewlines(std::string_view text);

Treebank ReadConlluFile(const std::filesystem::path& path);
void WriteConlluFile(const std::filesystem::path& path,
                     const Treebank& treebank);

// FEATS helpers. "_" <-> empty list.
std::vector<Feature> ParseFeatures(std::string_view column);
std::string FormatFeatures(const std::vector<Feature>& feats);
// Pairs sorted lexicographically by their "key=value" text.
std::string CanonicalFeatures(const std::vector<Feature>& feats);

struct TreeReport {
  bool is_tree = false;
  int root_count = 0;
  std::vector<int> cycle_members;  // ascending ids of nodes lying on a cycle
};

// heads[i] is the head of token i + 1. A structure is a tree iff every node
// reaches the virtual root 0 without revisiting a node. Multiple roots are
// allowed; root_count reports them.
TreeReport ValidateHeads(std::span<const int> heads);
TreeReport ValidateTree(const Sentence& sentence);

std::vector<int> HeadsOf(const Sentence& sentence);

// The three morphological columns that taggers predict.
enum class TagColumn { kUpos, kXpos, kFeats };

std::string_view TagColumnName(TagColumn column);  // "UPOS", "XPOS", "FEATS"
std::optional<TagColumn> ParseTagColumn(std::string_view name);

}  // namespace udperturb

#endif  // UDPERTURB_CONLLU_H_
