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

#include "covoswitch/mt_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

#include "covoswitch/errors.hpp"
#include "covoswitch/text.hpp"

namespace covoswitch {

namespace {

void require_parallel(std::size_t hyps, std::size_t refs) {
  if (hyps != refs)
    throw ContractViolation(fmt::format("{} hypotheses for {} references", hyps, refs));
  if (hyps == 0) throw ContractViolation("no segments to score");
}

using Counter = std::unordered_map<std::string, std::size_t>;

// Whitespace as understood by str.split() in the reference scorer: Unicode
// White_Space plus the ASCII information separators.
bool is_split_space(char32_t c) { return text::is_whitespace(c) || (c >= 0x1c && c <= 0x1f); }

std::vector<std::u32string> split_words(std::u32string_view s) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : s) {
    if (is_split_space(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

// ---------------------------------------------------------------------------
// BLEU

Tokenization parse_tokenization(std::string_view name) {
  if (name == "whitespace") return Tokenization::Whitespace;
  if (name == "char") return Tokenization::Char;
  if (name == "pretokenized") return Tokenization::Pretokenized;
  throw ContractViolation(fmt::format("unknown tokenization '{}'", name));
}

std::string_view to_string(Tokenization t) {
  switch (t) {
    case Tokenization::Whitespace: return "whitespace";
    case Tokenization::Char: return "char";
    case Tokenization::Pretokenized: return "pretokenized";
  }
  return "whitespace";
}

TokenList tokenize(std::string_view s, Tokenization mode) {
  TokenList out;
  if (mode != Tokenization::Char) {
    for (const auto& w : split_words(text::decode_utf8(s))) out.push_back(text::encode_utf8(w));
    return out;
  }
  for (char32_t c : text::decode_utf8(s))
    if (!is_split_space(c)) out.push_back(text::encode_utf8(std::u32string(1, c)));
  return out;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  for (int n = 0; n < 4; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  return *this;
}

namespace {

std::array<Counter, 4> word_ngrams(const TokenList& tokens) {
  std::array<Counter, 4> out;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t j = i + 1; j < i + n; ++j) {
        key += '\x1f';
        key += tokens[j];
      }
      ++out[n - 1][key];
    }
  }
  return out;
}

}  // namespace

BleuStats bleu_segment_stats(const TokenList& hyp, const TokenList& ref) {
  if (ref.empty()) throw UndefinedInput("empty reference segment");
  BleuStats stats;
  stats.hyp_len = hyp.size();
  stats.ref_len = ref.size();
  const auto hyp_ngrams = word_ngrams(hyp);
  const auto ref_ngrams = word_ngrams(ref);
  for (int n = 0; n < 4; ++n) {
    for (const auto& [gram, count] : hyp_ngrams[n]) {
      stats.totals[n] += count;
      if (auto it = ref_ngrams[n].find(gram); it != ref_ngrams[n].end())
        stats.matches[n] += std::min(count, it->second);
    }
  }
  return stats;
}

double bleu_from_stats(const BleuStats& s) {
  double log_sum = 0;
  for (int n = 0; n < 4; ++n) {
    if (s.matches[n] == 0 || s.totals[n] == 0) return 0.0;
    log_sum += std::log(100.0 * static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]));
  }
  double bp = 1.0;
  if (s.hyp_len < s.ref_len)
    bp = std::exp(1.0 - static_cast<double>(s.ref_len) / static_cast<double>(s.hyp_len));
  return bp * std::exp(log_sum / 4.0);
}

double bleu(std::span<const TokenList> hypotheses, std::span<const TokenList> references) {
  require_parallel(hypotheses.size(), references.size());
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) total += bleu_segment_stats(hypotheses[i], references[i]);
  return bleu_from_stats(total);
}

// ---------------------------------------------------------------------------
// chrF++

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

namespace {

bool is_ascii_punct(char32_t c) {
  return c < 0x80 && std::string_view("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~").find(static_cast<char>(c)) !=
                         std::string_view::npos;
}

// Splits leading or trailing ASCII punctuation off multi-character words,
// at most one character per word, matching the reference chrF++ tokenizer.
std::vector<std::u32string> chrf_words(std::u32string_view s) {
  std::vector<std::u32string> out;
  for (auto& w : split_words(s)) {
    if (w.size() == 1) {
      out.push_back(std::move(w));
    } else if (is_ascii_punct(w.back())) {
      out.push_back(w.substr(0, w.size() - 1));
      out.push_back(w.substr(w.size() - 1));
    } else if (is_ascii_punct(w.front())) {
      out.push_back(w.substr(0, 1));
      out.push_back(w.substr(1));
    } else {
      out.push_back(std::move(w));
    }
  }
  return out;
}

using U32Counter = std::map<std::u32string, std::size_t>;

std::vector<U32Counter> chrf_ngrams(std::u32string_view s) {
  std::vector<U32Counter> out(kChrfCharOrder + kChrfWordOrder);
  std::u32string chars;
  for (char32_t c : s)
    if (!is_split_space(c)) chars.push_back(c);
  for (int n = 1; n <= kChrfCharOrder; ++n)
    for (std::size_t i = 0; i + n <= chars.size(); ++i) ++out[n - 1][chars.substr(i, n)];

  const auto words = chrf_words(s);
  for (int n = 1; n <= kChrfWordOrder; ++n) {
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::u32string key = words[i];
      for (std::size_t j = i + 1; j < i + n; ++j) {
        key += U' ';
        key += words[j];
      }
      ++out[kChrfCharOrder + n - 1][key];
    }
  }
  return out;
}

}  // namespace

ChrfStats chrf_segment_stats(std::string_view hyp, std::string_view ref) {
  const auto hyp_grams = chrf_ngrams(text::decode_utf8(hyp));
  const auto ref_grams = chrf_ngrams(text::decode_utf8(ref));
  ChrfStats stats;
  for (std::size_t k = 0; k < hyp_grams.size(); ++k) {
    std::size_t hyp_count = 0, ref_count = 0, match = 0;
    for (const auto& [gram, count] : hyp_grams[k]) {
      hyp_count += count;
      if (auto it = ref_grams[k].find(gram); it != ref_grams[k].end()) match += std::min(count, it->second);
    }
    for (const auto& [gram, count] : ref_grams[k]) ref_count += count;
    // A hypothesis order only counts when the reference has n-grams of it.
    stats.counts[3 * k] = ref_grams[k].empty() ? 0 : hyp_count;
    stats.counts[3 * k + 1] = ref_count;
    stats.counts[3 * k + 2] = match;
  }
  return stats;
}

double chrf_from_stats(const ChrfStats& stats) {
  const double factor = kChrfBeta * kChrfBeta;
  double avg_prec = 0, avg_rec = 0;
  int effective = 0;
  for (int k = 0; k < kChrfCharOrder + kChrfWordOrder; ++k) {
    const auto hyp = stats.counts[3 * k];
    const auto ref = stats.counts[3 * k + 1];
    const auto match = stats.counts[3 * k + 2];
    if (hyp > 0 && ref > 0) {
      avg_prec += static_cast<double>(match) / static_cast<double>(hyp);
      avg_rec += static_cast<double>(match) / static_cast<double>(ref);
      ++effective;
    }
  }
  if (effective == 0) return 0.0;
  avg_prec /= effective;
  avg_rec /= effective;
  if (avg_prec + avg_rec == 0) return 0.0;
  return 100.0 * (1 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec);
}

double chrf_pp(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  require_parallel(hypotheses.size(), references.size());
  ChrfStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) total += chrf_segment_stats(hypotheses[i], references[i]);
  return chrf_from_stats(total);
}

// ---------------------------------------------------------------------------
// Copy and replacement rates

TaggedSegment TaggedSegment::from(const CodeSwitchedSentence& s) { return {s.tokens, s.tags}; }

TaggedSegment TaggedSegment::monolingual(std::string_view s, Tag tag) {
  TaggedSegment seg;
  seg.tokens = text::split_whitespace(s);
  seg.tags.assign(seg.tokens.size(), tag);
  return seg;
}

namespace {

template <typename Pred>
Counter normalized_counts(const TaggedSegment& seg, Pred keep) {
  Counter out;
  for (std::size_t i = 0; i < seg.tokens.size() && i < seg.tags.size(); ++i) {
    if (!keep(seg.tags[i])) continue;
    auto norm = text::normalize_token(seg.tokens[i]);
    if (!norm.empty()) ++out[norm];
  }
  return out;
}

Counter normalized_counts(std::string_view output) {
  Counter out;
  for (auto& t : text::normalized_tokens(output)) ++out[t];
  return out;
}

}  // namespace

double copy_rate(std::span<const TaggedSegment> inputs, std::span<const std::string> outputs, Tag target) {
  if (inputs.size() != outputs.size())
    throw ContractViolation(fmt::format("{} inputs for {} outputs", inputs.size(), outputs.size()));
  std::size_t copied = 0, total = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto in = normalized_counts(inputs[i], [&](Tag t) { return t == target; });
    if (in.empty()) continue;
    const auto out = normalized_counts(outputs[i]);
    for (const auto& [token, count] : in) {
      total += count;
      if (auto it = out.find(token); it != out.end()) copied += std::min(count, it->second);
    }
  }
  if (total == 0) throw UndefinedInput("copy rate: no input segment has target-language tokens");
  return 100.0 * static_cast<double>(copied) / static_cast<double>(total);
}

double copy_rate(std::span<const CodeSwitchedSentence> inputs, std::span<const std::string> outputs,
                 Tag target) {
  std::vector<TaggedSegment> segs;
  segs.reserve(inputs.size());
  for (const auto& s : inputs) segs.push_back(TaggedSegment::from(s));
  return copy_rate(segs, outputs, target);
}

double replacement_rate(std::span<const TaggedSegment> inputs, std::span<const std::string> outputs,
                        Tag target) {
  if (inputs.size() != outputs.size())
    throw ContractViolation(fmt::format("{} inputs for {} outputs", inputs.size(), outputs.size()));
  std::size_t replaced = 0, total = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto in = normalized_counts(inputs[i], [&](Tag t) { return t != target && t != Tag::Empty; });
    if (in.empty()) continue;
    const auto out = normalized_counts(outputs[i]);
    for (const auto& [token, count] : in) {
      total += count;
      const auto it = out.find(token);
      const std::size_t kept = it == out.end() ? 0 : it->second;
      replaced += count > kept ? count - kept : 0;
    }
  }
  if (total == 0) throw UndefinedInput("replacement rate: no non-target input tokens");
  return 100.0 * static_cast<double>(replaced) / static_cast<double>(total);
}

std::set<std::string> hallucination_tokens(std::string_view output, std::string_view en_source,
                                           std::string_view xx_source) {
  std::set<std::string> known;
  for (auto& t : text::normalized_tokens(en_source)) known.insert(std::move(t));
  for (auto& t : text::normalized_tokens(xx_source)) known.insert(std::move(t));
  std::set<std::string> out;
  for (auto& t : text::normalized_tokens(output))
    if (!known.contains(t)) out.insert(std::move(t));
  return out;
}

// ---------------------------------------------------------------------------
// Spearman

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (auto k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw ContractViolation(fmt::format("{} x values for {} y values", xs.size(), ys.size()));
  if (xs.size() < 2) throw ContractViolation("Spearman correlation needs at least two points");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) throw UndefinedInput("Spearman correlation of a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Settings, metrics, deltas

std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::CswToEn: return "csw2en";
    case Setting::CswToX: return "csw2x";
    case Setting::XToEn: return "x2en";
    case Setting::EnToX: return "en2x";
  }
  return "csw2en";
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Bleu: return "bleu";
    case Metric::ChrfPP: return "chrfpp";
    case Metric::Comet: return "comet";
    case Metric::CopyRate: return "copy_rate";
    case Metric::ReplacementRate: return "replacement_rate";
  }
  return "bleu";
}

std::string_view to_string(BaselineKind k) {
  return k == BaselineKind::Monolingual ? "monolingual" : "raw_csw_input";
}

Setting parse_setting(std::string_view name) {
  for (auto s : {Setting::CswToEn, Setting::CswToX, Setting::XToEn, Setting::EnToX})
    if (to_string(s) == name) return s;
  throw ContractViolation(fmt::format("unknown setting '{}'", name));
}

bool is_code_switched(Setting s) { return s == Setting::CswToEn || s == Setting::CswToX; }

Setting monolingual_counterpart(Setting csw) {
  if (csw == Setting::CswToEn) return Setting::XToEn;
  if (csw == Setting::CswToX) return Setting::EnToX;
  throw ContractViolation("monolingual settings have no monolingual counterpart");
}

Tag target_tag(Setting s) {
  return s == Setting::CswToEn || s == Setting::XToEn ? Tag::L1 : Tag::L2;
}

std::optional<double> ScoredSystem::get(Metric m) const {
  switch (m) {
    case Metric::Bleu: return bleu;
    case Metric::ChrfPP: return chrfpp;
    case Metric::Comet: return comet;
    case Metric::CopyRate: return copy_rate;
    case Metric::ReplacementRate: return replacement_rate;
  }
  return std::nullopt;
}

double round1(double v) {
  const double r = std::round(v * 10.0) / 10.0;
  return r == 0.0 ? 0.0 : r;
}

double DeltaEntry::rounded() const { return round1(value); }

std::vector<DeltaEntry> score_deltas(const ScoredSystem& csw, const ScoredSystem& baseline,
                                     BaselineKind kind, std::span<const Metric> metrics) {
  if (csw.lang != baseline.lang)
    throw ContractViolation(fmt::format("delta between languages {} and {}", csw.lang, baseline.lang));
  std::vector<DeltaEntry> out;
  for (auto m : metrics) {
    const auto a = csw.get(m);
    const auto b = baseline.get(m);
    if (!a || !b)
      throw ContractViolation(fmt::format("metric {} missing on the {} side", to_string(m),
                                          a ? "baseline" : "code-switched"));
    out.push_back({csw.lang, csw.model, csw.setting, m, kind, *a - *b});
  }
  return out;
}

}  // namespace covoswitch
