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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "covoswitch/code_switched.hpp"
#include "covoswitch/corpus_io.hpp"
#include "covoswitch/rng.hpp"

namespace covoswitch {

/// [1, 2, ..., n_ius - 1]; empty for a single-IU sentence.
std::vector<std::size_t> replacement_counts(std::size_t n_ius);

/// Above this many r-subsets the selector samples instead of enumerating.
inline constexpr std::uint64_t kEnumerationLimit = 10'000;

/// Number of r-subsets of [0, n) with no two adjacent members.
std::uint64_t nonconsecutive_count(std::size_t n, std::size_t r);

std::uint64_t binomial(std::size_t n, std::size_t r);

/// Picks r of n IU indices, ascending. When subsets without adjacent
/// indices exist the draw is uniform over those, otherwise uniform over all
/// r-subsets. Throws ContractViolation unless 1 <= r <= n - 1.
std::vector<std::size_t> select_iu_indices(std::size_t n, std::size_t r, Rng& rng);

enum class RejectReason { NoL2, EqualsSource };

struct Rejected {
  RejectReason reason;
};

using ReplaceResult = std::variant<CodeSwitchedSentence, Rejected>;

/// Replaces the IUs listed in `indices` with their aligned non-English
/// tokens. Within a replaced IU the union of aligned target indices is
/// emitted once, ascending, at the position of the IU's first aligned
/// token; each unaligned English token leaves an Empty placeholder in
/// place. Tokens of other IUs stay English. The sentence id is
/// "<pair id>-r<r>".
ReplaceResult replace_ius(const ParallelPair& pair, std::span<const std::size_t> indices);

struct SynthesisSummary {
  std::size_t pairs = 0;
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  std::size_t rejected_no_l2 = 0;
  std::size_t rejected_equals_source = 0;

  SynthesisSummary& operator+=(const SynthesisSummary& other);
  friend bool operator==(const SynthesisSummary&, const SynthesisSummary&) = default;
};

struct SynthesisResult {
  std::vector<CodeSwitchedSentence> sentences;
  SynthesisSummary summary;
};

/// One selection and replacement per (pair, r). Output is ordered by pair,
/// then ascending r, and is identical for any `jobs` >= 1.
SynthesisResult synthesize_corpus(std::span<const ParallelPair> pairs, std::uint64_t seed,
                                  unsigned jobs = 1);

}  // namespace covoswitch
