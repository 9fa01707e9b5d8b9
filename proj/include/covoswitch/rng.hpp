// Copyright 2026 The CoVoSwitch Tools Authors.
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace covoswitch {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// One SplitMix64 step; a bijective mixer used to derive stream keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable generator with a portable output sequence. Streams for
/// independent work items are derived from (seed, key, index) so results do
/// not depend on the order in which items are processed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream for one (pair id, r) synthesis attempt under a corpus seed.
  static Rng for_attempt(std::uint64_t seed, std::string_view pair_id, std::uint64_t r);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive. Uses
  /// rejection on the top of the range, so no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace covoswitch
