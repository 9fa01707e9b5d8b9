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

#include "covoswitch/csw_metrics.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "covoswitch/errors.hpp"

namespace covoswitch {
namespace {

std::vector<Tag> tags_from(std::string_view pattern) {
  std::vector<Tag> out;
  for (char c : pattern) out.push_back(c == '1' ? Tag::L1 : c == '2' ? Tag::L2 : Tag::Empty);
  return out;
}

std::vector<Tag> counts(std::size_t l1, std::size_t l2) {
  std::vector<Tag> out(l1, Tag::L1);
  out.insert(out.end(), l2, Tag::L2);
  return out;
}

CodeSwitchedSentence sentence(std::string_view pattern) {
  CodeSwitchedSentence s;
  s.id = "s";
  s.lang = "de";
  s.tags = tags_from(pattern);
  for (auto t : s.tags) s.tokens.push_back(t == Tag::Empty ? "" : "w");
  s.replaced_ius = {0};
  return s;
}

TEST(Cmi, Examples) {
  EXPECT_DOUBLE_EQ(cmi(counts(5, 5)), 50.0);
  EXPECT_DOUBLE_EQ(cmi(counts(6, 4)), 40.0);
  EXPECT_DOUBLE_EQ(cmi(counts(10, 0)), 0.0);
}

TEST(Cmi, UndefinedWithoutTokens) {
  EXPECT_THROW(cmi(tags_from("")), UndefinedInput);
  EXPECT_THROW(cmi(tags_from("--")), UndefinedInput);
}

TEST(Spf, Examples) {
  EXPECT_DOUBLE_EQ(spf(tags_from("1212")), 1.0);
  EXPECT_NEAR(spf(tags_from("1122")), 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(spf(tags_from("111")), 0.0);
}

TEST(Spf, PlaceholdersRemovedBeforeAdjacency) {
  EXPECT_DOUBLE_EQ(spf(tags_from("1-1")), 0.0);
  EXPECT_DOUBLE_EQ(spf(tags_from("1--2")), 1.0);
  EXPECT_EQ(switch_points(tags_from("-1-2-2-1-")), 2u);
}

TEST(Spf, UndefinedBelowTwoTokens) {
  EXPECT_THROW(spf(tags_from("1")), UndefinedInput);
  EXPECT_THROW(spf(tags_from("-1-")), UndefinedInput);
}

TEST(LanguageCounts, ExcludePlaceholders) {
  const auto c = count_languages(tags_from("1-22-1-"));
  EXPECT_EQ(c.eta, 4u);
  EXPECT_EQ(c.eta1, 2u);
  EXPECT_EQ(c.eta2, 2u);
}

class MetricProperties : public ::testing::Test {
 protected:
  std::vector<Tag> random_tags(std::size_t n) {
    std::vector<Tag> out;
    while (out.size() < n) {
      const auto v = engine_() % 5;
      out.push_back(v < 2 ? Tag::L1 : v < 4 ? Tag::L2 : Tag::Empty);
    }
    return out;
  }
  std::mt19937_64 engine_{20240817};
};

TEST_F(MetricProperties, Invariances) {
  for (int trial = 0; trial < 2000; ++trial) {
    auto tags = random_tags(2 + engine_() % 14);
    const auto c = count_languages(tags);
    if (c.eta < 2) continue;

    const double base_cmi = cmi(tags);
    const double base_spf = spf(tags);
    ASSERT_GE(base_cmi, 0.0);
    ASSERT_LE(base_cmi, 50.0);
    ASSERT_GE(base_spf, 0.0);
    ASSERT_LE(base_spf, 1.0);
    EXPECT_EQ(base_cmi == 50.0, c.eta1 == c.eta2);

    auto swapped = tags;
    for (auto& t : swapped) t = t == Tag::L1 ? Tag::L2 : t == Tag::L2 ? Tag::L1 : t;
    EXPECT_DOUBLE_EQ(cmi(swapped), base_cmi);

    auto reversed = tags;
    std::reverse(reversed.begin(), reversed.end());
    EXPECT_DOUBLE_EQ(spf(reversed), base_spf);

    auto padded = tags;
    padded.insert(padded.begin() + static_cast<std::ptrdiff_t>(engine_() % (padded.size() + 1)), Tag::Empty);
    EXPECT_DOUBLE_EQ(cmi(padded), base_cmi);
    EXPECT_DOUBLE_EQ(spf(padded), base_spf);

    std::vector<Tag> counted;
    std::copy_if(tags.begin(), tags.end(), std::back_inserter(counted), [](Tag t) { return t != Tag::Empty; });
    const bool constant = std::adjacent_find(counted.begin(), counted.end(), std::not_equal_to<>()) == counted.end();
    EXPECT_EQ(base_spf == 0.0, constant);
  }
}

TEST(CorpusStats, EqualLengthsMacroEqualsMicro) {
  // CMI 40 and 20 over five tokens each.
  const std::vector<CodeSwitchedSentence> corpus = {sentence("11122"), sentence("11112")};
  const auto r = corpus_stats(corpus);
  EXPECT_EQ(r.macro.count, 2u);
  EXPECT_DOUBLE_EQ(r.macro.cmi, 30.0);
  EXPECT_NEAR(r.micro.cmi, 30.0, 1e-12);
  EXPECT_NEAR(r.macro.spf, 0.25, 1e-12);
  EXPECT_NEAR(r.micro.spf, 0.25, 1e-12);
  EXPECT_NEAR(r.macro.pct_l1, 70.0, 1e-12);
  EXPECT_NEAR(r.macro.pct_l2, 30.0, 1e-12);
}

TEST(CorpusStats, UnequalLengthsDiffer) {
  // Sentence CMIs 50 and 0; pooled counts 1+9 vs 1+1.
  const std::vector<CodeSwitchedSentence> corpus = {sentence("12"), sentence("111111111-")};
  const auto r = corpus_stats(corpus);
  EXPECT_DOUBLE_EQ(r.macro.cmi, 25.0);
  EXPECT_NEAR(r.micro.cmi, 100.0 * (1.0 - 10.0 / 11.0), 1e-12);
  EXPECT_DOUBLE_EQ(r.macro.spf, 0.5);
  EXPECT_NEAR(r.micro.spf, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(r.micro.pct_l1 + r.micro.pct_l2, 100.0, 1e-9);
}

TEST(CorpusStats, EmptyCorpusIsUndefined) {
  EXPECT_THROW(corpus_stats(std::vector<CodeSwitchedSentence>{}), UndefinedInput);
}

TEST(CorpusStats, ByLanguageAndTsv) {
  auto a = sentence("1122");
  a.lang = "sv";
  auto b = sentence("12");
  b.lang = "ar";
  auto c = sentence("112");
  c.lang = "sv";
  const std::vector<CodeSwitchedSentence> corpus = {a, b, c};
  const auto by = stats_by_language(corpus);
  ASSERT_EQ(by.size(), 2u);
  EXPECT_EQ(by[0].lang, "ar");
  EXPECT_EQ(by[1].lang, "sv");
  EXPECT_EQ(by[1].stats.macro.count, 2u);
  EXPECT_EQ(render_stats_tsv(by),
            "Mode\tISO\tCount\t%L1\t%L2\tCMI\tSPF\n"
            "macro\tar\t1\t50.00\t50.00\t50.00\t1.00\n"
            "macro\tsv\t2\t57.14\t42.86\t41.67\t0.42\n"
            "micro\tar\t1\t50.00\t50.00\t50.00\t1.00\n"
            "micro\tsv\t2\t57.14\t42.86\t42.86\t0.40\n");
}

}  // namespace
}  // namespace covoswitch
