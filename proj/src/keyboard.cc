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

#include "udperturb/keyboard.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <utility>

#include "udperturb/errors.h"
#include "udperturb/io.h"
#include "udperturb/unicode.h"

namespace udperturb {
namespace internal {
const std::vector<std::pair<std::string_view, std::string_view>>&
BundledLayoutSources();
}  // namespace internal

namespace {

constexpr double kMaxKeyDistance = 1.0;
constexpr double kEpsilon = 1e-9;

std::vector<std::string> SplitWhitespace(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> parts;
  std::string part;
  while (in >> part) parts.push_back(part);
  return parts;
}

}  // namespace

KeyboardLayout::KeyboardLayout(std::string name, std::vector<KeyRow> rows)
    : name_(std::move(name)), rows_(std::move(rows)) {
  struct Position {
    char32_t key;
    int row;
    double x;
  };
  std::vector<Position> positions;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const KeyRow& row = rows_[r];
    if (row.keys.empty()) {
      throw FormatError("layout " + name_ + ": row " + std::to_string(r + 1) +
                        " has no keys");
    }
    if (!std::isfinite(row.offset) || row.offset < 0.0) {
      throw FormatError("layout " + name_ + ": row " + std::to_string(r + 1) +
                        " has an invalid offset");
    }
    for (std::size_t col = 0; col < row.keys.size(); ++col) {
      const char32_t key = row.keys[col];
      if (IsUpper(key)) {
        throw FormatError("layout " + name_ + ": key '" + EncodeUtf8(key) +
                          "' is not lowercase");
      }
      if (!alphabet_.insert(key).second) {
        throw FormatError("layout " + name_ + ": duplicate character '" +
                          EncodeUtf8(key) + "'");
      }
      positions.push_back({key, static_cast<int>(r),
                           row.offset + static_cast<double>(col)});
    }
  }
  for (const auto& a : positions) {
    auto& neighbours = adjacency_[a.key];
    for (const auto& b : positions) {
      if (a.key == b.key) continue;
      if (std::abs(a.row - b.row) <= 1 &&
          std::abs(a.x - b.x) <= kMaxKeyDistance + kEpsilon) {
        neighbours.push_back(b.key);
      }
    }
    std::sort(neighbours.begin(), neighbours.end());
  }
}

bool KeyboardLayout::Contains(char32_t c) const {
  return alphabet_.count(ToLower(c)) > 0;
}

const std::vector<char32_t>& KeyboardLayout::AdjacentKeys(char32_t c) const {
  static const std::vector<char32_t> kNone;
  const auto it = adjacency_.find(ToLower(c));
  return it == adjacency_.end() ? kNone : it->second;
}

KeyboardLayout LoadLayout(std::string_view text) {
  if (const auto bad = FindInvalidUtf8(text)) {
    throw FormatError("layout is not valid UTF-8 (byte " +
                      std::to_string(*bad) + ")");
  }
  std::string name;
  std::vector<KeyRow> rows;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto parts = SplitWhitespace(raw);
    if (parts.empty() || parts[0].front() == '#') continue;
    const std::string where = "layout line " + std::to_string(line_no) + ": ";
    if (parts[0] == "name") {
      if (parts.size() != 2 || !name.empty()) {
        throw FormatError(where + "expected a single 'name <identifier>'");
      }
      name = parts[1];
    } else if (parts[0] == "row") {
      if (name.empty()) throw FormatError(where + "'row' before 'name'");
      if (parts.size() == 2) throw FormatError(where + "empty row");
      if (parts.size() != 3) {
        throw FormatError(where + "expected 'row <offset> <characters>'");
      }
      KeyRow row;
      std::size_t consumed = 0;
      try {
        row.offset = std::stod(parts[1], &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed != parts[1].size()) {
        throw FormatError(where + "bad offset '" + parts[1] + "'");
      }
      row.keys = *DecodeUtf8(parts[2]);
      rows.push_back(std::move(row));
    } else {
      throw FormatError(where + "unknown directive '" + parts[0] + "'");
    }
  }
  if (name.empty()) throw FormatError("layout has no 'name' line");
  if (rows.empty()) throw FormatError("layout " + name + " has no rows");
  return KeyboardLayout(std::move(name), std::move(rows));
}

std::vector<std::string> BundledLayoutKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, text] : internal::BundledLayoutSources()) {
    keys.emplace_back(key);
  }
  return keys;
}

KeyboardLayout LoadBundledLayout(std::string_view key) {
  for (const auto& [lang, text] : internal::BundledLayoutSources()) {
    if (lang == key) return LoadLayout(text);
  }
  for (const auto& [lang, text] : internal::BundledLayoutSources()) {
    KeyboardLayout layout = LoadLayout(text);
    if (layout.name() == key) return layout;
  }
  throw FormatError("no bundled layout named '" + std::string(key) + "'");
}

KeyboardLayout ResolveLayout(std::string_view key_or_path) {
  for (const auto& [lang, text] : internal::BundledLayoutSources()) {
    if (lang == key_or_path || LoadLayout(text).name() == key_or_path) {
      return LoadLayout(text);
    }
  }
  const std::filesystem::path path{std::string(key_or_path)};
  if (!std::filesystem::exists(path)) {
    throw FormatError("'" + std::string(key_or_path) +
                      "' is neither a bundled layout nor a readable file");
  }
  try {
    return LoadLayout(ReadTextFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace udperturb
