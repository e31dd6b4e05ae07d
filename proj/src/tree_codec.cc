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

#include "udperturb/tree_codec.h"

#include <algorithm>
#include <array>
#include <optional>

#include "udperturb/errors.h"

namespace udperturb {
namespace {

struct Arc {
  int left;
  int right;
  int dependent;
};

std::string Marker(char symbol, int plane) {
  std::string out(1, symbol);
  if (plane == 2) out.push_back('*');
  return out;
}

void RequireTree(std::span<const int> heads) {
  const TreeReport report = ValidateHeads(heads);
  if (!report.is_tree) {
    throw ContractError("head assignment is not a tree");
  }
}

// Marker counts of one label: counts[plane][symbol].
struct MarkerCounts {
  enum Symbol { kFromRight, kToLeft, kToRight, kFromLeft };
  std::array<std::array<int, 4>, 2> counts{};
};

MarkerCounts CountMarkers(std::string_view brackets) {
  MarkerCounts m;
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    int symbol;
    switch (brackets[i]) {
      case '<':
        symbol = MarkerCounts::kFromRight;
        break;
      case '\\':
        symbol = MarkerCounts::kToLeft;
        break;
      case '/':
        symbol = MarkerCounts::kToRight;
        break;
      case '>':
        symbol = MarkerCounts::kFromLeft;
        break;
      default:
        continue;
    }
    int plane = 0;
    if (i + 1 < brackets.size() && brackets[i + 1] == '*') {
      plane = 1;
      ++i;
    }
    ++m.counts[plane][symbol];
  }
  return m;
}

struct Pending {
  enum Kind { kSource, kDependent } kind;
  int position;
};

}  // namespace

bool ArcsCross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

PlaneAssignment AssignPlanes(std::span<const int> heads) {
  RequireTree(heads);
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < heads.size(); ++i) {
    const int dependent = static_cast<int>(i) + 1;
    if (heads[i] == 0) continue;
    arcs.push_back({std::min(dependent, heads[i]),
                    std::max(dependent, heads[i]), dependent});
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return x.right != y.right ? x.right < y.right : x.left < y.left;
  });
  PlaneAssignment result;
  std::array<std::vector<Arc>, 2> planes;
  for (const Arc& arc : arcs) {
    bool placed = false;
    for (int p = 0; p < 2 && !placed; ++p) {
      const bool crosses =
          std::any_of(planes[p].begin(), planes[p].end(), [&](const Arc& o) {
            return ArcsCross(arc.left, arc.right, o.left, o.right);
          });
      if (!crosses) {
        planes[p].push_back(arc);
        result.plane_of_arc[arc.dependent] = p + 1;
        placed = true;
      }
    }
    if (!placed) result.is_two_planar = false;
  }
  return result;
}

PlaneAssignment AssignPlanes(const Sentence& sentence) {
  const auto heads = HeadsOf(sentence);
  return AssignPlanes(heads);
}

std::vector<BracketLabel> EncodeTwoPlanar(
    std::span<const int> heads, std::span<const std::string> deprels) {
  if (heads.size() != deprels.size()) {
    throw ContractError("heads and deprels differ in length");
  }
  const PlaneAssignment planes = AssignPlanes(heads);
  if (!planes.is_two_planar) {
    throw EncodingFailure("tree is not 2-planar");
  }
  const int n = static_cast<int>(heads.size());
  std::vector<BracketLabel> labels(heads.size());
  for (int token = 1; token <= n; ++token) {
    std::string& out = labels[token - 1].brackets;
    labels[token - 1].deprel = deprels[token - 1];
    const int head = heads[token - 1];
    const int own_plane = head == 0 ? 0 : planes.plane_of_arc.at(token);
    if (head > token) out += Marker('<', own_plane);
    for (char symbol : {'\\', '/'}) {
      for (int plane : {1, 2}) {
        for (int dep = 1; dep <= n; ++dep) {
          if (heads[dep - 1] != token) continue;
          if ((symbol == '\\') != (dep < token)) continue;
          if (planes.plane_of_arc.at(dep) == plane) {
            out += Marker(symbol, plane);
          }
        }
      }
    }
    if (head != 0 && head < token) out += Marker('>', own_plane);
  }
  return labels;
}

std::vector<BracketLabel> EncodeTwoPlanar(const Sentence& sentence) {
  std::vector<int> heads;
  std::vector<std::string> deprels;
  for (const auto& t : sentence.tokens) {
    heads.push_back(t.head);
    deprels.push_back(t.deprel);
  }
  return EncodeTwoPlanar(heads, deprels);
}

DecodedTree DecodeTwoPlanar(std::span<const BracketLabel> labels) {
  const int n = static_cast<int>(labels.size());
  DecodedTree tree;
  tree.heads.assign(labels.size(), -1);
  tree.deprels.reserve(labels.size());
  for (const auto& label : labels) tree.deprels.push_back(label.deprel);

  std::array<std::vector<Pending>, 2> stacks;
  for (int token = 1; token <= n; ++token) {
    const MarkerCounts markers = CountMarkers(labels[token - 1].brackets);
    for (int p = 0; p < 2; ++p) {
      auto& stack = stacks[p];
      int need_source = markers.counts[p][MarkerCounts::kFromLeft];
      int need_dependent = markers.counts[p][MarkerCounts::kToLeft];
      while (need_source > 0 || need_dependent > 0) {
        auto it = std::find_if(stack.rbegin(), stack.rend(),
                               [&](const Pending& e) {
                                 return e.kind == Pending::kSource
                                            ? need_source > 0
                                            : need_dependent > 0;
                               });
        if (it == stack.rend()) break;
        const Pending match = *it;
        // Entries opened strictly after the match would cross the new arc.
        const auto match_index = stack.size() - 1 -
                                 static_cast<std::size_t>(it - stack.rbegin());
        std::vector<Pending> kept(stack.begin(),
                                  stack.begin() +
                                      static_cast<std::ptrdiff_t>(match_index));
        for (std::size_t j = match_index + 1; j < stack.size(); ++j) {
          if (stack[j].position == match.position) kept.push_back(stack[j]);
        }
        stack = std::move(kept);
        if (match.kind == Pending::kSource) {
          --need_source;
          if (tree.heads[token - 1] < 0) tree.heads[token - 1] = match.position;
        } else {
          --need_dependent;
          if (tree.heads[match.position - 1] < 0) {
            tree.heads[match.position - 1] = token;
          }
        }
      }
      for (int i = 0; i < markers.counts[p][MarkerCounts::kFromRight]; ++i) {
        stack.push_back({Pending::kDependent, token});
      }
      for (int i = 0; i < markers.counts[p][MarkerCounts::kToRight]; ++i) {
        stack.push_back({Pending::kSource, token});
      }
    }
  }

  bool first_root = true;
  for (int i = 0; i < n; ++i) {
    if (tree.heads[i] >= 0) continue;
    tree.heads[i] = 0;
    if (first_root) tree.deprels[i] = "root";
    first_root = false;
  }
  while (true) {
    const TreeReport report = ValidateHeads(tree.heads);
    if (report.is_tree) break;
    tree.heads[report.cycle_members.front() - 1] = 0;
  }
  return tree;
}

std::string FormatLabelFile(std::span<const LabeledSentence> sentences) {
  std::string out;
  for (const auto& sentence : sentences) {
    for (std::size_t i = 0; i < sentence.labels.size(); ++i) {
      const auto& label = sentence.labels[i];
      out += sentence.forms[i];
      out.push_back('\t');
      out += label.brackets.empty() ? "-" : label.brackets;
      out.push_back('\t');
      out += label.deprel;
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<LabeledSentence> ParseLabelFile(std::string_view text) {
  std::vector<LabeledSentence> sentences;
  LabeledSentence current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  const auto flush = [&] {
    if (!current.labels.empty()) sentences.push_back(std::move(current));
    current = LabeledSentence();
  };
  while (pos < text.size()) {
    std::size_t newline = text.find('\n', pos);
    if (newline == std::string_view::npos) newline = text.size();
    std::string_view line = text.substr(pos, newline - pos);
    pos = newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      flush();
      continue;
    }
    const auto first = line.find('\t');
    const auto second =
        first == line.npos ? line.npos : line.find('\t', first + 1);
    if (second == line.npos || line.find('\t', second + 1) != line.npos) {
      throw ParseError(line_no, "expected form<TAB>brackets<TAB>deprel");
    }
    std::string brackets(line.substr(first + 1, second - first - 1));
    if (brackets == "-") brackets.clear();
    current.forms.emplace_back(line.substr(0, first));
    current.labels.push_back(
        BracketLabel{std::move(brackets), std::string(line.substr(second + 1))});
  }
  flush();
  return sentences;
}

std::vector<LabeledSentence> EncodeTreebank(const Treebank& treebank) {
  std::vector<LabeledSentence> out;
  out.reserve(treebank.sentences.size());
  for (std::size_t s = 0; s < treebank.sentences.size(); ++s) {
    const Sentence& sentence = treebank.sentences[s];
    LabeledSentence labeled;
    try {
      labeled.labels = EncodeTwoPlanar(sentence);
    } catch (const DataError& e) {
      throw EncodingFailure("sentence " + std::to_string(s) + ": " + e.what());
    }
    for (const auto& t : sentence.tokens) labeled.forms.push_back(t.form);
    out.push_back(std::move(labeled));
  }
  return out;
}

std::size_t CountNonTwoPlanar(const Treebank& treebank) {
  std::size_t count = 0;
  for (const auto& sentence : treebank.sentences) {
    if (ValidateTree(sentence).is_tree && !AssignPlanes(sentence).is_two_planar) {
      ++count;
    }
  }
  return count;
}

Treebank DecodeToTreebank(std::span<const LabeledSentence> sentences) {
  Treebank treebank;
  for (const auto& labeled : sentences) {
    const DecodedTree tree = DecodeTwoPlanar(labeled.labels);
    Sentence sentence;
    for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
      Token token;
      token.id = static_cast<int>(i) + 1;
      token.form = labeled.forms[i];
      token.head = tree.heads[i];
      token.deprel = tree.deprels[i].empty() ? "_" : tree.deprels[i];
      sentence.tokens.push_back(std::move(token));
    }
    treebank.sentences.push_back(std::move(sentence));
  }
  return treebank;
}

}  // namespace udperturb
