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

#ifndef UDPERTURB_RANDOM_H_
#define UDPERTURB_RANDOM_H_

#include <cstdint>

namespace udperturb {

// Source of uniform integers in [0, bound). The attack code draws through
// this interface so tests can script individual draws.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual std::uint64_t Uniform(std::uint64_t bound) = 0;
};

// SplitMix64 (Steele, Lea & Flood). Every random decision in the toolkit is
// derived from this generator so suites are reproducible bit-for-bit.
class SplitMix64 final : public UniformSource {
 public:
  static constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t Next() {
    state_ += kGoldenGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Rejection sampling on the largest multiple of bound below 2^64, so the
  // result is exactly uniform. bound must be positive.
  std::uint64_t Uniform(std::uint64_t bound) override;

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// One SplitMix64 step from `state`: the stream seed for a derived job.
inline std::uint64_t MixSeed(std::uint64_t state) {
  return SplitMix64(state).Next();
}

}  // namespace udperturb

#endif  // UDPERTURB_RANDOM_H_
