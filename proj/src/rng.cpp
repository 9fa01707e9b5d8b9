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

#include "covoswitch/rng.hpp"

#include <limits>

#include "covoswitch/errors.hpp"

namespace covoswitch {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::for_attempt(std::uint64_t seed, std::string_view pair_id, std::uint64_t r) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ fnv1a64(pair_id));
  key = splitmix64(key ^ r);
  return Rng(key);
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw ContractViolation("uniform_below needs a positive bound");
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return x % bound;
}

}  // namespace covoswitch
