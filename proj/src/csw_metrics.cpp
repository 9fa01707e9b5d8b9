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
#include <map>

#include <fmt/format.h>

#include "covoswitch/errors.hpp"

namespace covoswitch {

LanguageCounts count_languages(std::span<const Tag> tags) {
  LanguageCounts counts;
  for (Tag t : tags) {
    if (t == Tag::L1) ++counts.eta1;
    if (t == Tag::L2) ++counts.eta2;
  }
  counts.eta = counts.eta1 + counts.eta2;
  return counts;
}

double cmi(std::span<const Tag> tags) {
  const auto c = count_languages(tags);
  if (c.eta == 0) throw UndefinedInput("CMI needs at least one countable token");
  return 100.0 * (1.0 - static_cast<double>(std::max(c.eta1, c.eta2)) / static_cast<double>(c.eta));
}

double cmi(const CodeSwitchedSentence& s) { return cmi(s.tags); }

std::size_t switch_points(std::span<const Tag> tags) {
  std::size_t switches = 0;
  bool have_prev = false;
  Tag prev = Tag::Empty;
  for (Tag t : tags) {
    if (t == Tag::Empty) continue;
    if (have_prev && t != prev) ++switches;
    prev = t;
    have_prev = true;
  }
  return switches;
}

double spf(std::span<const Tag> tags) {
  const auto c = count_languages(tags);
  if (c.eta < 2) throw UndefinedInput("SPF needs at least two countable tokens");
  return static_cast<double>(switch_points(tags)) / static_cast<double>(c.eta - 1);
}

double spf(const CodeSwitchedSentence& s) { return spf(s.tags); }

CorpusStatsReport corpus_stats(std::span<const CodeSwitchedSentence> sentences) {
  if (sentences.empty()) throw UndefinedInput("corpus statistics of an empty corpus");

  std::size_t eta = 0, eta1 = 0, eta2 = 0, switches = 0, gaps = 0;
  double cmi_sum = 0, spf_sum = 0;
  for (const auto& s : sentences) {
    const auto c = count_languages(s.tags);
    eta += c.eta;
    eta1 += c.eta1;
    eta2 += c.eta2;
    switches += switch_points(s.tags);
    gaps += c.eta == 0 ? 0 : c.eta - 1;
    cmi_sum += cmi(s);
    spf_sum += spf(s);
  }

  CorpusStatsReport report;
  const double n = static_cast<double>(sentences.size());
  const double pct_l1 = 100.0 * static_cast<double>(eta1) / static_cast<double>(eta);
  const double pct_l2 = 100.0 * static_cast<double>(eta2) / static_cast<double>(eta);
  report.macro = {sentences.size(), pct_l1, pct_l2, cmi_sum / n, spf_sum / n};
  report.micro = {sentences.size(), pct_l1, pct_l2,
                  100.0 * (1.0 - static_cast<double>(std::max(eta1, eta2)) / static_cast<double>(eta)),
                  static_cast<double>(switches) / static_cast<double>(gaps)};
  return report;
}

std::vector<LanguageStats> stats_by_language(std::span<const CodeSwitchedSentence> sentences) {
  std::map<std::string, std::vector<CodeSwitchedSentence>> groups;
  for (const auto& s : sentences) groups[s.lang].push_back(s);
  std::vector<LanguageStats> out;
  for (const auto& [lang, group] : groups) out.push_back({lang, corpus_stats(group)});
  return out;
}

std::string render_stats_tsv(std::span<const LanguageStats> stats) {
  std::string out = "Mode\tISO\tCount\t%L1\t%L2\tCMI\tSPF\n";
  for (auto mode : {Aggregation::Macro, Aggregation::Micro}) {
    for (const auto& ls : stats) {
      const auto& s = ls.stats.get(mode);
      out += fmt::format("{}\t{}\t{}\t{:.2f}\t{:.2f}\t{:.2f}\t{:.2f}\n",
                         mode == Aggregation::Macro ? "macro" : "micro", ls.lang, s.count,
                         s.pct_l1, s.pct_l2, s.cmi, s.spf);
    }
  }
  return out;
}

}  // namespace covoswitch
