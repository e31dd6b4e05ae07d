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

#ifndef UDPERTURB_IO_H_
#define UDPERTURB_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace udperturb {

// Whole-file helpers. Failures throw IoError naming the path.
std::string ReadTextFile(const std::filesystem::path& path);
// Creates missing parent directories.
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

}  // namespace udperturb

#endif  // UDPERTURB_IO_H_
