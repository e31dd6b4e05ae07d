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

#ifndef UDPERTURB_UNICODE_H_
#define UDPERTURB_UNICODE_H_

#include <optional>
#include <string>
#include <string_view>

namespace udperturb {

// Decodes UTF-8 into Unicode scalar values. Returns nullopt on any invalid
// sequence (overlongs, surrogates, truncation, values above U+10FFFF).
std::optional<std::u32string> DecodeUtf8(std::string_view text);

// Returns the byte offset of the first invalid sequence, or nullopt.
std::optional<std::size_t> FindInvalidUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t c);

// Simple, locale-independent case mapping for the Latin blocks used by the
// bundled layouts (Basic Latin, Latin-1 Supplement, Latin Extended-A).
// Characters outside those blocks map to themselves.
char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);
bool IsUpper(char32_t c);

}  // namespace udperturb

#endif  // UDPERTURB_UNICODE_H_
