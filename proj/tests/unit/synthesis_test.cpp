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
#include <bit>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "builders.hpp"
#include "covoswitch/errors.hpp"
#include "covoswitch/rng.hpp"
#include "fixture_corpus.hpp"
#include "oracles.hpp"

namespace covoswitch {
namespace {

using Indices = std::vector<std::size_t>;
using Tokens = std::vector<std::string>;

ParallelPair cat_pair() {
  return testing::make_pair("cat", "the cat sat down", "el gat es va asseure", "0-0 1-1 2-2 2-3 3-4", {2, 2});
}

const CodeSwitchedSentence& accepted(const ReplaceResult& r) {
  EXPECT_TRUE(std::holds_alternative<CodeSwitchedSentence>(r));
  return std::get<CodeSwitchedSentence>(r);
}

bool adjacent(const Indices& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1] + 1) return true;
  return false;
}

TEST(ReplacementCounts, Examples) {
  EXPECT_EQ(replacement_counts(1), Indices{});
  EXPECT_EQ(replacement_counts(2), Indices{1});
  EXPECT_EQ(replacement_counts(4), (Indices{1, 2, 3}));
}

TEST(Combinatorics, BinomialAndNonconsecutiveCounts) {
  EXPECT_EQ(binomial(8, 3), 56u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(62, 31), 465428353255261088u);
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t r = 1; r < n; ++r) {
      std::uint64_t brute = 0;
      for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (static_cast<std::size_t>(std::popcount(m)) == r && (m & (m >> 1)) == 0) ++brute;
      EXPECT_EQ(nonconsecutive_count(n, r), brute) << n << "," << r;
    }
  }
}

TEST(SelectIuIndices, ThreeChooseTwoIsAlwaysTheEnds) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(select_iu_indices(3, 2, rng), (Indices{0, 2}));
  }
}

TEST(SelectIuIndices, TwoChooseOneIsFair) {
  std::size_t zeros = 0;
  constexpr std::size_t kDraws = 10'000;
  for (std::uint64_t i = 0; i < kDraws; ++i) {
    auto rng = Rng::for_attempt(99, "pair-" + std::to_string(i), 1);
    const auto s = select_iu_indices(2, 1, rng);
    ASSERT_EQ(s.size(), 1u);
    if (s[0] == 0) ++zeros;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / kDraws, 0.5, 0.05);
}

TEST(SelectIuIndices, FourChooseTwoAvoidsAdjacency) {
  std::map<Indices, std::size_t> seen;
  Rng rng(7);
  for (int i = 0; i < 3000; ++i) ++seen[select_iu_indices(4, 2, rng)];
  ASSERT_EQ(seen.size(), 3u);
  for (const auto& want : {Indices{0, 2}, Indices{0, 3}, Indices{1, 3}}) {
    ASSERT_TRUE(seen.count(want));
    EXPECT_NEAR(static_cast<double>(seen[want]) / 3000.0, 1.0 / 3.0, 0.05);
  }
}

TEST(SelectIuIndices, FallsBackToAllSubsetsWhenForced) {
  Rng rng(3);
  std::set<Indices> seen;
  for (int i = 0; i < 500; ++i) seen.insert(select_iu_indices(4, 3, rng));
  EXPECT_EQ(seen.size(), 4u);
}

TEST(SelectIuIndices, OutOfRangeIsAContractViolation) {
  Rng rng(1);
  EXPECT_THROW(select_iu_indices(3, 0, rng), ContractViolation);
  EXPECT_THROW(select_iu_indices(3, 3, rng), ContractViolation);
  EXPECT_THROW(select_iu_indices(1, 1, rng), ContractViolation);
}

TEST(SelectIuIndices, MatchesEnumerationOracle) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t r = 1; r < n; ++r) {
      const auto candidates = testing::brute_candidates(n, r);
      const std::set<Indices> allowed(candidates.begin(), candidates.end());
      Rng rng(n * 100 + r);
      for (int i = 0; i < 200; ++i) ASSERT_TRUE(allowed.count(select_iu_indices(n, r, rng))) << n << "," << r;
    }
  }
}

// Above the enumeration limit the selector maps r-subsets of a shorter
// range onto nonconsecutive subsets; check the smallest index follows the
// exact distribution over all nonconsecutive subsets.
TEST(SelectIuIndices, SampledPathIsUniform) {
  constexpr std::size_t n = 19, r = 5;
  ASSERT_GT(binomial(n, r), kEnumerationLimit);
  const auto candidates = testing::brute_candidates(n, r);
  ASSERT_EQ(candidates.size(), nonconsecutive_count(n, r));
  std::vector<double> expected(n, 0.0);
  for (const auto& c : candidates) expected[c.front()] += 1.0;

  constexpr std::size_t kDraws = 60'000;
  std::vector<double> observed(n, 0.0);
  Rng rng(2024);
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto s = select_iu_indices(n, r, rng);
    ASSERT_EQ(s.size(), r);
    ASSERT_FALSE(adjacent(s));
    ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
    ASSERT_LT(s.back(), n);
    observed[s.front()] += 1.0;
  }
  double chi2 = 0;
  std::size_t bins = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (expected[k] == 0) {
      EXPECT_EQ(observed[k], 0.0);
      continue;
    }
    const double e = expected[k] / static_cast<double>(candidates.size()) * kDraws;
    chi2 += (observed[k] - e) * (observed[k] - e) / e;
    ++bins;
  }
  boost::math::chi_squared dist(static_cast<double>(bins - 1));
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01) << "chi2=" << chi2;
}

TEST(SelectIuIndices, SampledPathWithoutSpreadSubsets) {
  constexpr std::size_t n = 20, r = 15;
  ASSERT_EQ(nonconsecutive_count(n, r), 0u);
  ASSERT_GT(binomial(n, r), kEnumerationLimit);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = select_iu_indices(n, r, rng);
    ASSERT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), r);
    ASSERT_LT(s.back(), n);
  }
}

TEST(ReplaceIus, FirstUnit) {
  const auto s = accepted(replace_ius(cat_pair(), Indices{0}));
  EXPECT_EQ(s.tokens, (Tokens{"el", "gat", "sat", "down"}));
  EXPECT_EQ(s.tags, (std::vector<Tag>{Tag::L2, Tag::L2, Tag::L1, Tag::L1}));
  EXPECT_EQ(s.id, "cat-r1");
  EXPECT_EQ(s.replaced_ius, Indices{0});
}

TEST(ReplaceIus, SecondUnitKeepsTargetOrder) {
  const auto s = accepted(replace_ius(cat_pair(), Indices{1}));
  EXPECT_EQ(s.tokens, (Tokens{"the", "cat", "es", "va", "asseure"}));
  EXPECT_EQ(s.tags, (std::vector<Tag>{Tag::L1, Tag::L1, Tag::L2, Tag::L2, Tag::L2}));
}

TEST(ReplaceIus, CopiedProperNounEqualsSource) {
  const auto pair = testing::make_pair("nasa", "NASA launched", "NASA va llançar", "0-0 1-1 1-2", {1, 1});
  const auto r = replace_ius(pair, Indices{0});
  ASSERT_TRUE(std::holds_alternative<Rejected>(r));
  EXPECT_EQ(std::get<Rejected>(r).reason, RejectReason::EqualsSource);
}

TEST(ReplaceIus, UnalignedUnitLeavesPlaceholdersAndNoL2) {
  const auto pair = testing::make_pair("u", "oh well we left", "ens en vam anar", "2-0 3-1 3-2 3-3", {2, 2});
  const auto r = replace_ius(pair, Indices{0});
  ASSERT_TRUE(std::holds_alternative<Rejected>(r));
  EXPECT_EQ(std::get<Rejected>(r).reason, RejectReason::NoL2);

  const auto other = accepted(replace_ius(pair, Indices{1}));
  EXPECT_EQ(other.tokens, (Tokens{"oh", "well", "ens", "en", "vam", "anar"}));
}

TEST(ReplaceIus, PlaceholderSitsAtTheUnalignedToken) {
  // "x" is unaligned; b and c both point into the target, c twice.
  const auto pair = testing::make_pair("p", "x b c y", "C1 B C2 Y", "2-0 2-2 1-1 3-3", {3, 1});
  const auto s = accepted(replace_ius(pair, Indices{0}));
  EXPECT_EQ(s.tokens, (Tokens{"", "C1", "B", "C2", "y"}));
  EXPECT_EQ(s.tags, (std::vector<Tag>{Tag::Empty, Tag::L2, Tag::L2, Tag::L2, Tag::L1}));
}

TEST(ReplaceIus, TargetSharedAcrossUnitsIsEmittedPerUnit) {
  const auto pair = testing::make_pair("p", "a b c", "T U", "0-0 2-0 1-1", {1, 1, 1});
  const auto s = accepted(replace_ius(pair, Indices{0, 2}));
  EXPECT_EQ(s.tokens, (Tokens{"T", "b", "T"}));
}

TEST(ReplaceIus, BadIndicesAreContractViolations) {
  EXPECT_THROW(replace_ius(cat_pair(), Indices{2}), ContractViolation);
  EXPECT_THROW(replace_ius(cat_pair(), Indices{}), ContractViolation);
  EXPECT_THROW(replace_ius(cat_pair(), Indices{0, 1}), ContractViolation);
  EXPECT_THROW(replace_ius(cat_pair(), Indices{0, 0}), ContractViolation);
}

// Smaller sibling of the acceptance sweep: random pairs against the
// straight-line oracle.
TEST(ReplaceIus, AgreesWithOracleOnRandomPairs) {
  std::mt19937_64 engine(424242);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n_en = 2 + engine() % 7;
    const std::size_t n_xx = 1 + engine() % 8;
    const std::size_t n_ius = 2 + engine() % std::min<std::size_t>(3, n_en - 1);
    Indices cuts;
    for (std::size_t i = 1; i < n_en; ++i) cuts.push_back(i);
    std::shuffle(cuts.begin(), cuts.end(), engine);
    cuts.resize(n_ius - 1);
    std::sort(cuts.begin(), cuts.end());
    Indices lengths;
    std::size_t prev = 0;
    for (auto c : cuts) {
      lengths.push_back(c - prev);
      prev = c;
    }
    lengths.push_back(n_en - prev);

    Tokens en, xx;
    for (std::size_t i = 0; i < n_en; ++i) en.push_back("e" + std::to_string(engine() % 4));
    for (std::size_t j = 0; j < n_xx; ++j) xx.push_back(engine() % 4 == 0 ? en[engine() % n_en] : "x" + std::to_string(j));
    std::vector<std::pair<std::size_t, std::size_t>> links;
    std::string pharaoh;
    for (std::size_t i = 0; i < n_en; ++i)
      for (std::size_t j = 0; j < n_xx; ++j)
        if (engine() % 3 == 0) {
          links.emplace_back(i, j);
          pharaoh += std::to_string(i) + "-" + std::to_string(j) + " ";
        }

    const auto pair = testing::make_pair("t", testing::join_tokens(en), testing::join_tokens(xx), pharaoh, lengths);
    Rng rng(trial);
    const auto r = 1 + engine() % (n_ius - 1);
    const auto chosen = select_iu_indices(n_ius, r, rng);
    const auto got = replace_ius(pair, chosen);
    const auto want = testing::brute_replace(en, xx, links, lengths, chosen);
    switch (want.kind) {
      case testing::BruteOutcome::Kind::Accepted: {
        ASSERT_TRUE(std::holds_alternative<CodeSwitchedSentence>(got)) << trial;
        const auto& s = std::get<CodeSwitchedSentence>(got);
        EXPECT_EQ(s.tokens, want.tokens) << trial;
        EXPECT_EQ(s.tags, want.tags) << trial;
        break;
      }
      case testing::BruteOutcome::Kind::NoL2:
        ASSERT_TRUE(std::holds_alternative<Rejected>(got)) << trial;
        EXPECT_EQ(std::get<Rejected>(got).reason, RejectReason::NoL2);
        break;
      case testing::BruteOutcome::Kind::EqualsSource:
        ASSERT_TRUE(std::holds_alternative<Rejected>(got)) << trial;
        EXPECT_EQ(std::get<Rejected>(got).reason, RejectReason::EqualsSource);
        break;
    }
  }
}

TEST(SynthesizeCorpus, SingleUnitPairYieldsNothing) {
  const std::vector<ParallelPair> pairs = {testing::make_pair("one", "hello world", "hola món", "0-0 1-1", {2})};
  const auto result = synthesize_corpus(pairs, 1);
  EXPECT_TRUE(result.sentences.empty());
  EXPECT_EQ(result.summary.attempts, 0u);
  EXPECT_EQ(result.summary.pairs, 1u);
}

TEST(SynthesizeCorpus, ThreeUnitPairYieldsAtMostTwo) {
  const std::vector<ParallelPair> pairs = {
      testing::make_pair("three", "a b c d e f", "A B C D E F", "0-0 1-1 2-2 3-3 4-4 5-5", {2, 2, 2})};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto result = synthesize_corpus(pairs, seed);
    EXPECT_EQ(result.summary.attempts, 2u);
    ASSERT_EQ(result.sentences.size(), 2u);
    EXPECT_EQ(result.sentences[0].id, "three-r1");
    EXPECT_EQ(result.sentences[1].id, "three-r2");
    EXPECT_EQ(result.sentences[1].replaced_ius, (Indices{0, 2}));
  }
}

class FixtureSynthesis : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const auto files = testing::make_fixture("et", 800, 3);
    pairs_ = new std::vector<ParallelPair>(assemble_pairs(files.parallel, files.alignments, files.transcripts, "et").pairs);
  }
  static void TearDownTestSuite() {
    delete pairs_;
    pairs_ = nullptr;
  }
  static std::vector<ParallelPair>* pairs_;
};
std::vector<ParallelPair>* FixtureSynthesis::pairs_ = nullptr;

TEST_F(FixtureSynthesis, IndependentOfJobCount) {
  const auto base = synthesize_corpus(*pairs_, 77, 1);
  for (unsigned jobs : {2u, 3u, 8u, 64u}) {
    const auto other = synthesize_corpus(*pairs_, 77, jobs);
    EXPECT_EQ(other.sentences, base.sentences) << jobs;
    EXPECT_EQ(other.summary, base.summary) << jobs;
  }
}

TEST_F(FixtureSynthesis, IndependentOfPairOrder) {
  const auto base = synthesize_corpus(*pairs_, 12, 1);
  auto shuffled = *pairs_;
  std::mt19937_64 engine(8);
  std::shuffle(shuffled.begin(), shuffled.end(), engine);
  const auto other = synthesize_corpus(shuffled, 12, 1);
  std::map<std::string, CodeSwitchedSentence> a, b;
  for (const auto& s : base.sentences) a[s.id] = s;
  for (const auto& s : other.sentences) b[s.id] = s;
  EXPECT_EQ(a, b);
}

TEST_F(FixtureSynthesis, SeedChangesOutput) {
  EXPECT_NE(synthesize_corpus(*pairs_, 1).sentences, synthesize_corpus(*pairs_, 2).sentences);
}

TEST_F(FixtureSynthesis, AcceptedSentencesSatisfyInvariants) {
  const auto result = synthesize_corpus(*pairs_, 31);
  std::map<std::string, const ParallelPair*> by_id;
  for (const auto& p : *pairs_) by_id[p.id] = &p;
  const auto& s = result.summary;
  EXPECT_EQ(s.accepted + s.rejected_no_l2 + s.rejected_equals_source, s.attempts);
  EXPECT_EQ(s.accepted, result.sentences.size());

  for (const auto& sentence : result.sentences) {
    const auto dash = sentence.id.rfind("-r");
    const auto& pair = *by_id.at(sentence.id.substr(0, dash));
    EXPECT_EQ(sentence.id.substr(dash + 2), std::to_string(sentence.r()));
    const auto violations = invariant_violations(sentence, pair.en.text, pair.segmentation.size());
    EXPECT_TRUE(violations.empty()) << sentence.id << ": " << violations.front();

    // English tokens keep their source order.
    const auto l1 = sentence.tokens_tagged(Tag::L1);
    auto it = pair.en.tokens.begin();
    for (const auto& t : l1) {
      it = std::find(it, pair.en.tokens.end(), t);
      ASSERT_NE(it, pair.en.tokens.end()) << sentence.id;
      ++it;
    }
  }
}

}  // namespace
}  // namespace covoswitch
