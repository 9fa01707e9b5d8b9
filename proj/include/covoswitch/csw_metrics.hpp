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
#include <span>
#include <string>
#include <vector>

#include "covoswitch/code_switched.hpp"

namespace covoswitch {

/// Token counts with placeholders excluded. eta == eta1 + eta2.
struct LanguageCounts {
  std::size_t eta = 0;
  std::size_t eta1 = 0;
  std::size_t eta2 = 0;
};

LanguageCounts count_languages(std::span<const Tag> tags);

/// Code Mixing Index, 100 * (1 - max(eta1, eta2) / eta), in [0, 50].
/// Throws UndefinedInput when no token is countable.
double cmi(std::span<const Tag> tags);
double cmi(const CodeSwitchedSentence& s);

/// Switch Point Fraction over adjacent counted tokens, in [0, 1].
/// Throws UndefinedInput when fewer than two tokens are countable.
double spf(std::span<const Tag> tags);
double spf(const CodeSwitchedSentence& s);

/// Number of adjacent counted-token pairs whose tags differ.
std::size_t switch_points(std::span<const Tag> tags);

enum class Aggregation { Macro, Micro };

struct CorpusStats {
  std::size_t count = 0;
  double pct_l1 = 0;
  double pct_l2 = 0;
  double cmi = 0;
  double spf = 0;
};

struct CorpusStatsReport {
  CorpusStats macro;  // unweighted mean of per-sentence CMI/SPF
  CorpusStats micro;  // formulas on pooled counts

  const CorpusStats& get(Aggregation mode) const { return mode == Aggregation::Macro ? macro : micro; }
};

/// Throws UndefinedInput on an empty corpus.
CorpusStatsReport corpus_stats(std::span<const CodeSwitchedSentence> sentences);

struct LanguageStats {
  std::string lang;
  CorpusStatsReport stats;
};

/// corpus_stats per embedded language, alphabetical by code.
std::vector<LanguageStats> stats_by_language(std::span<const CodeSwitchedSentence> sentences);

/// Table-shaped TSV: Mode, ISO, Count, %L1, %L2, CMI, SPF; macro rows first.
std::string render_stats_tsv(std::span<const LanguageStats> stats);

}  // namespace covoswitch
