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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covoswitch/code_switched.hpp"

namespace covoswitch {

using TokenList = std::vector<std::string>;

// ---------------------------------------------------------------------------
// BLEU

enum class Tokenization { Whitespace, Char, Pretokenized };

Tokenization parse_tokenization(std::string_view name);
std::string_view to_string(Tokenization t);

/// Whitespace and Pretokenized split on whitespace (the latter expects text
/// already segmented upstream); Char yields one token per non-space code point.
TokenList tokenize(std::string_view text, Tokenization mode);

struct BleuStats {
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  std::size_t matches[4] = {0, 0, 0, 0};
  std::size_t totals[4] = {0, 0, 0, 0};

  BleuStats& operator+=(const BleuStats& other);
};

/// Clipped n-gram statistics of one segment. Throws UndefinedInput on an
/// empty reference.
BleuStats bleu_segment_stats(const TokenList& hyp, const TokenList& ref);

/// 4-gram BLEU from pooled statistics: uniform weights, exponential brevity
/// penalty, no smoothing. 0 when any order has no match.
double bleu_from_stats(const BleuStats& stats);

/// Corpus BLEU in [0, 100]. Throws ContractViolation on a length mismatch or
/// empty input.
double bleu(std::span<const TokenList> hypotheses, std::span<const TokenList> references);

// ---------------------------------------------------------------------------
// chrF++

inline constexpr int kChrfCharOrder = 6;
inline constexpr int kChrfWordOrder = 2;
inline constexpr double kChrfBeta = 2.0;

/// [hyp, ref, match] counts for each character order then each word order.
struct ChrfStats {
  std::vector<std::size_t> counts = std::vector<std::size_t>(3 * (kChrfCharOrder + kChrfWordOrder), 0);
  ChrfStats& operator+=(const ChrfStats& other);
};

ChrfStats chrf_segment_stats(std::string_view hyp, std::string_view ref);

/// Precision and recall are averaged over the orders where both sides have
/// n-grams, then combined into an F-beta score.
double chrf_from_stats(const ChrfStats& stats);

/// Corpus chrF++ in [0, 100] from pooled statistics.
double chrf_pp(std::span<const std::string> hypotheses, std::span<const std::string> references);

// ---------------------------------------------------------------------------
// Code-switching diagnostics

/// A token sequence with provenance, the input side of copy and
/// replacement rates.
struct TaggedSegment {
  TokenList tokens;
  std::vector<Tag> tags;

  static TaggedSegment from(const CodeSwitchedSentence& s);
  /// Every whitespace token of `text` tagged `tag`.
  static TaggedSegment monolingual(std::string_view text, Tag tag);
};

/// Share (percent) of target-language input tokens found again in the output,
/// multiset-clipped, tokens compared after lowercasing and punctuation
/// removal. Segments without target tokens are skipped; throws
/// UndefinedInput if all are.
double copy_rate(std::span<const TaggedSegment> inputs, std::span<const std::string> outputs, Tag target);
double copy_rate(std::span<const CodeSwitchedSentence> inputs, std::span<const std::string> outputs,
                 Tag target);

/// Share (percent) of non-target input tokens (neither `target` nor Empty)
/// that no longer appear in the output, same matching as copy_rate. Throws
/// UndefinedInput when there are no non-target tokens at all.
double replacement_rate(std::span<const TaggedSegment> inputs, std::span<const std::string> outputs,
                        Tag target);

/// Normalized output tokens found in neither source.
std::set<std::string> hallucination_tokens(std::string_view output, std::string_view en_source,
                                           std::string_view xx_source);

/// Spearman rank correlation with average ranks for ties. Throws
/// ContractViolation on mismatched or too-short input, UndefinedInput when
/// either side is constant.
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

/// 1-based ranks, ties receive the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// ---------------------------------------------------------------------------
// Scored systems and deltas

enum class Setting { CswToEn, CswToX, XToEn, EnToX };
enum class Metric { Bleu, ChrfPP, Comet, CopyRate, ReplacementRate };
enum class BaselineKind { Monolingual, RawCswInput };

std::string_view to_string(Setting s);
std::string_view to_string(Metric m);
std::string_view to_string(BaselineKind k);
Setting parse_setting(std::string_view name);
bool is_code_switched(Setting s);
/// CswToEn -> XToEn, CswToX -> EnToX.
Setting monolingual_counterpart(Setting csw);
/// Language tag of the setting's output side.
Tag target_tag(Setting s);

struct ScoredSystem {
  Setting setting = Setting::CswToEn;
  std::string lang;
  std::string model;
  double bleu = 0;
  double chrfpp = 0;
  std::optional<double> comet;
  std::optional<double> copy_rate;
  std::optional<double> replacement_rate;

  std::optional<double> get(Metric m) const;
};

struct DeltaEntry {
  std::string lang;
  std::string model;
  Setting setting = Setting::CswToEn;
  Metric metric = Metric::Bleu;
  BaselineKind kind = BaselineKind::Monolingual;
  double value = 0;

  /// Value rounded to one decimal for presentation.
  double rounded() const;
};

/// csw - baseline for each metric in `metrics`. Throws ContractViolation
/// when languages differ or a metric is missing on either side.
std::vector<DeltaEntry> score_deltas(const ScoredSystem& csw, const ScoredSystem& baseline,
                                     BaselineKind kind, std::span<const Metric> metrics);

/// Rounds half away from zero to one decimal; "-0.0" collapses to 0.
double round1(double v);

}  // namespace covoswitch
