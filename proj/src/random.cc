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

#include "udperturb/random.h"

#include <limits>

#include "udperturb/errors.h"

namespace udperturb {

std::uint64_t SplitMix64::Uniform(std::uint64_t bound) {
  if (bound == 0) throw ContractError("Uniform() requires a positive bound");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t excess = (0 - bound) % bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
  while (true) {
    const std::uint64_t x = Next();
    if (x <= limit) return x % bound;
  }
}

}  // namespace udperturb
