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

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>

#include "udperturb/errors.h"
#include "udperturb/io.h"
#include "udperturb/unicode.h"

namespace udperturb {
namespace {

constexpr std::size_t kColumns = 10;

std::optional<int> ParseNonNegative(std::string_view text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Accumulates the lines of one sentence and checks the structural rules.
class SentenceBuilder {
 public:
  bool empty() const {
    return sentence_.comments.empty() && sentence_.tokens.empty() &&
           sentence_.mwt_ranges.empty() && sentence_.empty_nodes.empty();
  }

  void AddComment(std::size_t line_no, std::string_view line) {
    if (!sentence_.tokens.empty() || !sentence_.mwt_ranges.empty() ||
        !sentence_.empty_nodes.empty()) {
      throw ParseError(line_no, "comment line inside a sentence body");
    }
    sentence_.comments.emplace_back(line);
  }

  void AddWordLine(std::size_t line_no, std::string_view line) {
    const auto fields = SplitTabs(line);
    if (fields.size() != kColumns) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < kColumns; ++i) {
      if (fields[i].empty()) {
        throw ParseError(line_no,
                         "empty column " + std::to_string(i + 1) +
                             " (use '_' for missing values)");
      }
    }
    const std::string_view id = fields[0];
    const int next_id = static_cast<int>(sentence_.tokens.size()) + 1;
    if (const auto dash = id.find('-'); dash != std::string_view::npos) {
      AddRange(line_no, fields, dash, next_id);
    } else if (const auto dot = id.find('.'); dot != std::string_view::npos) {
      AddEmptyNode(line_no, line, id, dot, next_id);
    } else {
      AddToken(line_no, fields, next_id);
    }
  }

  Sentence Finish(std::size_t line_no) {
    if (sentence_.tokens.empty()) {
      throw ParseError(line_no, "sentence has no token lines");
    }
    if (pending_range_start_ != 0) {
      throw ParseError(line_no, "multiword range without its first token");
    }
    const int n = static_cast<int>(sentence_.tokens.size());
    for (std::size_t i = 0; i < sentence_.tokens.size(); ++i) {
      if (sentence_.tokens[i].head > n) {
        throw ParseError(token_lines_[i],
                         "head " + std::to_string(sentence_.tokens[i].head) +
                             " is outside the sentence (" + std::to_string(n) +
                             " tokens)");
      }
    }
    for (std::size_t i = 0; i < sentence_.mwt_ranges.size(); ++i) {
      if (sentence_.mwt_ranges[i].end > n) {
        throw ParseError(range_lines_[i],
                         "multiword range ends past the last token");
      }
    }
    Sentence done = std::move(sentence_);
    *this = SentenceBuilder();
    return done;
  }

 private:
  void AddRange(std::size_t line_no,
                const std::vector<std::string_view>& fields, std::size_t dash,
                int next_id) {
    const auto start = ParseNonNegative(fields[0].substr(0, dash));
    const auto end = ParseNonNegative(fields[0].substr(dash + 1));
    if (!start || !end || *start < 1 || *end < *start) {
      throw ParseError(line_no, "malformed multiword range id '" +
                                    std::string(fields[0]) + "'");
    }
    if (*start != next_id || pending_range_start_ != 0) {
      throw ParseError(line_no, "multiword range " + std::string(fields[0]) +
                                    " is not followed by token " +
                                    std::to_string(*start));
    }
    for (std::size_t i = 2; i <= 8; ++i) {
      if (fields[i] != "_") {
        throw ParseError(line_no, "multiword range line must have '_' in "
                                  "column " + std::to_string(i + 1));
      }
    }
    sentence_.mwt_ranges.push_back(MwtRange{*start, *end,
                                            std::string(fields[1]),
                                            std::string(fields[9])});
    range_lines_.push_back(line_no);
    pending_range_start_ = *start;
  }

  void AddEmptyNode(std::size_t line_no, std::string_view line,
                    std::string_view id, std::size_t dot, int next_id) {
    const auto major = ParseNonNegative(id.substr(0, dot));
    const auto minor = ParseNonNegative(id.substr(dot + 1));
    if (!major || !minor || *minor < 1) {
      throw ParseError(line_no,
                       "malformed empty node id '" + std::string(id) + "'");
    }
    if (*major != next_id - 1 || pending_range_start_ != 0) {
      throw ParseError(line_no,
                       "empty node " + std::string(id) + " is out of order");
    }
    sentence_.empty_nodes.push_back(EmptyNode{*major, std::string(line)});
  }

  void AddToken(std::size_t line_no,
                const std::vector<std::string_view>& fields, int next_id) {
    const auto id = ParseNonNegative(fields[0]);
    if (!id) {
      throw ParseError(line_no, "non-numeric id '" + std::string(fields[0]) +
                                    "'");
    }
    if (*id != next_id) {
      throw ParseError(line_no, "expected token id " +
                                    std::to_string(next_id) + ", found " +
                                    std::to_string(*id));
    }
    const auto head = ParseNonNegative(fields[6]);
    if (!head) {
      throw ParseError(line_no, "non-numeric head '" +
                                    std::string(fields[6]) + "'");
    }
    if (*head == *id) {
      throw ParseError(line_no, "token " + std::to_string(*id) +
                                    " is its own head");
    }
    Token token;
    token.id = *id;
    token.form = fields[1];
    token.lemma = fields[2];
    token.upos = fields[3];
    token.xpos = fields[4];
    try {
      token.feats = ParseFeatures(fields[5]);
    } catch (const DataError& e) {
      throw ParseError(line_no, e.what());
    }
    token.head = *head;
    token.deprel = fields[7];
    token.deps = fields[8];
    token.misc = fields[9];
    sentence_.tokens.push_back(std::move(token));
    token_lines_.push_back(line_no);
    pending_range_start_ = 0;
  }

  Sentence sentence_;
  std::vector<std::size_t> token_lines_;
  std::vector<std::size_t> range_lines_;
  int pending_range_start_ = 0;
};

}  // namespace

std::size_t Treebank::TokenCount() const {
  std::size_t count = 0;
  for (const auto& s : sentences) count += s.size();
  return count;
}

std::vector<Feature> ParseFeatures(std::string_view column) {
  std::vector<Feature> feats;
  if (column == "_") return feats;
  std::size_t start = 0;
  while (start <= column.size()) {
    std::size_t bar = column.find('|', start);
    if (bar == std::string_view::npos) bar = column.size();
    const std::string_view item = column.substr(start, bar - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw DataError("malformed FEATS entry '" + std::string(item) + "'");
    }
    feats.push_back(Feature{std::string(item.substr(0, eq)),
                            std::string(item.substr(eq + 1))});
    start = bar + 1;
  }
  return feats;
}

std::string FormatFeatures(const std::vector<Feature>& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (const auto& f : feats) {
    if (!out.empty()) out.push_back('|');
    out += f.key;
    out.push_back('=');
    out += f.value;
  }
  return out;
}

std::string CanonicalFeatures(const std::vector<Feature>& feats) {
  if (feats.empty()) return "_";
  std::vector<std::string> items;
  items.reserve(feats.size());
  for (const auto& f : feats) items.push_back(f.key + "=" + f.value);
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out.push_back('|');
    out += item;
  }
  return out;
}

Treebank ParseConllu(std::string_view text, std::string source_name) {
  Treebank treebank;
  treebank.source_name = std::move(source_name);
  SentenceBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t newline = text.find('\n', pos);
    if (newline == std::string_view::npos) newline = text.size();
    std::string_view line = text.substr(pos, newline - pos);
    pos = newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (FindInvalidUtf8(line)) {
      throw EncodingError(line_no, "invalid UTF-8");
    }
    if (line.empty()) {
      if (!builder.empty()) {
        treebank.sentences.push_back(builder.Finish(line_no));
      }
    } else if (line.front() == '#') {
      builder.AddComment(line_no, line);
    } else {
      builder.AddWordLine(line_no, line);
    }
  }
  if (!builder.empty()) {
    treebank.sentences.push_back(builder.Finish(line_no));
  }
  return treebank;
}

std::string FormatToken(const Token& t) {
  std::string out = std::to_string(t.id);
  const auto add = [&out](std::string_view field) {
    out.push_back('\t');
    out += field;
  };
  add(t.form);
  add(t.lemma);
  add(t.upos);
  add(t.xpos);
  add(FormatFeatures(t.feats));
  add(std::to_string(t.head));
  add(t.deprel);
  add(t.deps);
  add(t.misc);
  return out;
}

std::string SerializeConllu(const Treebank& treebank) {
  std::string out;
  for (const auto& sentence : treebank.sentences) {
    for (const auto& comment : sentence.comments) {
      out += comment;
      out.push_back('\n');
    }
    const auto emit_empty_nodes = [&](int after) {
      for (const auto& node : sentence.empty_nodes) {
        if (node.after_token == after) {
          out += node.line;
          out.push_back('\n');
        }
      }
    };
    emit_empty_nodes(0);
    for (const auto& token : sentence.tokens) {
      for (const auto& range : sentence.mwt_ranges) {
        if (range.start == token.id) {
          out += std::to_string(range.start) + "-" + std::to_string(range.end);
          out += "\t" + range.surface_form + "\t_\t_\t_\t_\t_\t_\t_\t" +
                 range.misc + "\n";
        }
      }
      out += FormatToken(token);
      out.push_back('\n');
      emit_empty_nodes(token.id);
    }
    out.push_back('\n');
  }
  return out;
}

std::string NormalizeNewlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    }
    out.push_back(text[i]);
  }
  return out;
}

Treebank ReadConlluFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return ParseConllu(text, path.filename().string());
  } catch (const ParseError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteConlluFile(const std::filesystem::path& path,
                     const Treebank& treebank) {
  WriteTextFile(path, SerializeConllu(treebank));
}

std::vector<int> HeadsOf(const Sentence& sentence) {
  std::vector<int> heads;
  heads.reserve(sentence.size());
  for (const auto& t : sentence.tokens) heads.push_back(t.head);
  return heads;
}

TreeReport ValidateHeads(std::span<const int> heads) {
  enum State : unsigned char { kUnseen, kOnPath, kRooted, kBroken };
  const int n = static_cast<int>(heads.size());
  TreeReport report;
  std::vector<State> state(heads.size() + 1, kUnseen);
  state[0] = kRooted;
  bool all_rooted = true;
  std::vector<int> path;
  for (int start = 1; start <= n; ++start) {
    if (heads[start - 1] == 0) ++report.root_count;
    if (state[start] != kUnseen) continue;
    path.clear();
    int node = start;
    State outcome = kBroken;
    while (true) {
      if (node < 0 || node > n) {
        outcome = kBroken;
        break;
      }
      if (state[node] == kRooted || state[node] == kBroken) {
        outcome = state[node];
        break;
      }
      if (state[node] == kOnPath) {
        const auto it = std::find(path.begin(), path.end(), node);
        report.cycle_members.insert(report.cycle_members.end(), it,
                                    path.end());
        outcome = kBroken;
        break;
      }
      state[node] = kOnPath;
      path.push_back(node);
      node = heads[node - 1];
    }
    for (int visited : path) state[visited] = outcome;
    if (outcome != kRooted) all_rooted = false;
  }
  std::sort(report.cycle_members.begin(), report.cycle_members.end());
  report.is_tree = all_rooted;
  return report;
}

std::string_view TagColumnName(TagColumn column) {
  switch (column) {
    case TagColumn::kUpos:
      return "UPOS";
    case TagColumn::kXpos:
      return "XPOS";
    case TagColumn::kFeats:
      return "FEATS";
  }
  return "?";
}

std::optional<TagColumn> ParseTagColumn(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  for (TagColumn column :
       {TagColumn::kUpos, TagColumn::kXpos, TagColumn::kFeats}) {
    if (TagColumnName(column) == upper) return column;
  }
  return std::nullopt;
}

TreeReport ValidateTree(const Sentence& sentence) {
  const auto heads = HeadsOf(sentence);
  return ValidateHeads(heads);
}

}  // namespace udperturb
