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

#include "covoswitch/synthesis.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "covoswitch/errors.hpp"

namespace covoswitch {

std::vector<std::size_t> replacement_counts(std::size_t n_ius) {
  std::vector<std::size_t> out;
  for (std::size_t r = 1; r + 1 <= n_ius; ++r) out.push_back(r);
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // acc * (n - r + i) is divisible by i; cancel before multiplying.
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (n - r + i) / (i / g);
    acc /= g;
    if (acc > kMax / factor) return kMax;
    acc *= factor;
  }
  return acc;
}

std::uint64_t nonconsecutive_count(std::size_t n, std::size_t r) {
  if (r == 0) return 1;
  if (n + 1 < r) return 0;
  return binomial(n - r + 1, r);
}

namespace {

/// Every r-subset of [0, n) in lexicographic order, optionally restricted to
/// those without adjacent members.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n, std::size_t r,
                                                        bool nonconsecutive_only) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(r);
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    bool keep = true;
    if (nonconsecutive_only)
      for (std::size_t i = 1; i < r && keep; ++i) keep = current[i] > current[i - 1] + 1;
    if (keep) out.push_back(current);

    // Advance to the next combination.
    std::size_t i = r;
    while (i > 0 && current[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < r; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t r, Rng& rng) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < r; ++i) {
    const auto j = i + rng.uniform_below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(r);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

std::vector<std::size_t> select_iu_indices(std::size_t n, std::size_t r, Rng& rng) {
  if (r < 1 || r + 1 > n)
    throw ContractViolation(fmt::format("cannot replace {} of {} intonation units", r, n));

  const bool spread = nonconsecutive_count(n, r) > 0;
  if (binomial(n, r) <= kEnumerationLimit) {
    const auto candidates = enumerate_subsets(n, r, spread);
    return candidates[rng.uniform_below(candidates.size())];
  }

  if (!spread) return sample_subset(n, r, rng);
  // b_0 < ... < b_{r-1} in [0, n - r + 1) maps one-to-one onto
  // nonconsecutive subsets via a_i = b_i + i.
  auto subset = sample_subset(n - r + 1, r, rng);
  for (std::size_t i = 0; i < r; ++i) subset[i] += i;
  return subset;
}

ReplaceResult replace_ius(const ParallelPair& pair, std::span<const std::size_t> indices) {
  const auto n = pair.segmentation.size();
  std::vector<bool> replaced(n, false);
  for (auto k : indices) {
    if (k >= n) throw ContractViolation(fmt::format("IU index {} out of range for {} IUs", k, n));
    if (replaced[k]) throw ContractViolation(fmt::format("IU index {} listed twice", k));
    replaced[k] = true;
  }
  if (indices.empty() || indices.size() >= n)
    throw ContractViolation(fmt::format("cannot replace {} of {} intonation units", indices.size(), n));

  CodeSwitchedSentence out;
  out.lang = pair.lang;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& span = pair.segmentation[k];
    if (!replaced[k]) {
      for (auto p = span.begin; p < span.end; ++p) {
        out.tokens.push_back(pair.en.tokens[p]);
        out.tags.push_back(Tag::L1);
      }
      continue;
    }
    out.replaced_ius.push_back(k);

    std::set<std::size_t> targets;
    for (auto p = span.begin; p < span.end; ++p)
      for (auto t : pair.alignment.targets_of(p)) targets.insert(t);

    bool emitted = false;
    for (auto p = span.begin; p < span.end; ++p) {
      if (pair.alignment.targets_of(p).empty()) {
        out.tokens.emplace_back();
        out.tags.push_back(Tag::Empty);
      } else if (!emitted) {
        for (auto t : targets) {
          out.tokens.push_back(pair.xx.tokens[t]);
          out.tags.push_back(Tag::L2);
        }
        emitted = true;
      }
    }
  }
  out.id = fmt::format("{}-r{}", pair.id, out.replaced_ius.size());

  if (std::find(out.tags.begin(), out.tags.end(), Tag::L2) == out.tags.end())
    return Rejected{RejectReason::NoL2};
  std::string source;
  for (const auto& t : pair.en.tokens) {
    if (!source.empty()) source += ' ';
    source += t;
  }
  if (out.rendered_text() == source) return Rejected{RejectReason::EqualsSource};
  return out;
}

SynthesisSummary& SynthesisSummary::operator+=(const SynthesisSummary& other) {
  pairs += other.pairs;
  attempts += other.attempts;
  accepted += other.accepted;
  rejected_no_l2 += other.rejected_no_l2;
  rejected_equals_source += other.rejected_equals_source;
  return *this;
}

namespace {

SynthesisResult synthesize_pair(const ParallelPair& pair, std::uint64_t seed) {
  SynthesisResult result;
  result.summary.pairs = 1;
  const auto n = pair.segmentation.size();
  for (auto r : replacement_counts(n)) {
    auto rng = Rng::for_attempt(seed, pair.id, r);
    const auto indices = select_iu_indices(n, r, rng);
    ++result.summary.attempts;
    auto attempt = replace_ius(pair, indices);
    if (auto* sentence = std::get_if<CodeSwitchedSentence>(&attempt)) {
      ++result.summary.accepted;
      result.sentences.push_back(std::move(*sentence));
    } else if (std::get<Rejected>(attempt).reason == RejectReason::NoL2) {
      ++result.summary.rejected_no_l2;
    } else {
      ++result.summary.rejected_equals_source;
    }
  }
  return result;
}

}  // namespace

SynthesisResult synthesize_corpus(std::span<const ParallelPair> pairs, std::uint64_t seed,
                                  unsigned jobs) {
  std::vector<SynthesisResult> per_pair(pairs.size());
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(pairs.size(), 1));

  auto run_block = [&](std::size_t w) {
    const auto begin = pairs.size() * w / workers;
    const auto end = pairs.size() * (w + 1) / workers;
    for (auto i = begin; i < end; ++i) per_pair[i] = synthesize_pair(pairs[i], seed);
  };

  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> threads;
      for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
          try {
            run_block(w);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
    }
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  SynthesisResult result;
  for (auto& r : per_pair) {
    result.summary += r.summary;
    std::move(r.sentences.begin(), r.sentences.end(), std::back_inserter(result.sentences));
  }
  return result;
}

}  // namespace covoswitch
