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

#ifndef UDPERTURB_KEYBOARD_H_
#define UDPERTURB_KEYBOARD_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace udperturb {

// One row of keys. Key j of the row sits at horizontal position offset + j,
// measured in key widths.
struct KeyRow {
  double offset = 0.0;
  std::u32string keys;
};

// Base-layer (lowercase) key grid of a physical keyboard.
//
// Two keys are adjacent when their rows differ by at most one and their
// horizontal positions differ by at most one key width. With the usual
// 0 / 0.25 / 0.75 stagger this gives the familiar neighbourhoods: on US
// QWERTY, 'g' touches t, y, f, h, v and b.
class KeyboardLayout {
 public:
  KeyboardLayout(std::string name, std::vector<KeyRow> rows);

  const std::string& name() const { return name_; }
  const std::vector<KeyRow>& rows() const { return rows_; }
  const std::set<char32_t>& alphabet() const { return alphabet_; }

  // Case-insensitive membership.
  bool Contains(char32_t c) const;

  // Keys adjacent to the lowercase form of c, ascending by code point.
  // Empty when c is not on the layout.
  const std::vector<char32_t>& AdjacentKeys(char32_t c) const;

 private:
  std::string name_;
  std::vector<KeyRow> rows_;
  std::set<char32_t> alphabet_;
  std::map<char32_t, std::vector<char32_t>> adjacency_;
};

// Parses the layout text format:
//   name <identifier>
//   row <offset> <characters with no separators>
// Blank lines and lines starting with '#' are ignored. Throws FormatError.
KeyboardLayout LoadLayout(std::string_view text);

// Bundled layouts are keyed by language code ("en", "de", ...). Lookup also
// accepts the layout's own name ("qwerty-us", "qwertz-de").
std::vector<std::string> BundledLayoutKeys();
KeyboardLayout LoadBundledLayout(std::string_view key);

// A bundled key/name if one matches, otherwise a path to a layout file.
KeyboardLayout ResolveLayout(std::string_view key_or_path);

}  // namespace udperturb

#endif  // UDPERTURB_KEYBOARD_H_
