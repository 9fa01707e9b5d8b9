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

#include "covoswitch/corpus_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "covoswitch/csw_metrics.hpp"
#include "covoswitch/errors.hpp"
#include "covoswitch/text.hpp"

namespace covoswitch {

namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

bool is_language_code(std::string_view s) {
  if (s.size() < 2 || s.size() > 3 || s == "en") return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Core types

Utterance Utterance::from_text(std::string id, std::string text) {
  auto tokens = text::split_whitespace(text);
  if (tokens.empty()) throw ContractViolation("utterance '" + id + "' has no tokens");
  return {std::move(id), std::move(text), std::move(tokens)};
}

IntonationSegmentation IntonationSegmentation::from_spans(std::vector<Span> spans,
                                                          std::size_t token_count) {
  if (spans.empty()) throw ContractViolation("segmentation needs at least one span");
  std::size_t expected_begin = 0;
  for (const auto& s : spans) {
    if (s.begin != expected_begin)
      throw ContractViolation(fmt::format("span [{},{}) does not start at {}", s.begin, s.end,
                                          expected_begin));
    if (s.end <= s.begin)
      throw ContractViolation(fmt::format("span [{},{}) is empty", s.begin, s.end));
    expected_begin = s.end;
  }
  if (expected_begin != token_count)
    throw ContractViolation(
        fmt::format("segmentation covers {} tokens, expected {}", expected_begin, token_count));
  IntonationSegmentation seg;
  seg.spans_ = std::move(spans);
  return seg;
}

IntonationSegmentation IntonationSegmentation::from_lengths(std::span<const std::size_t> lengths) {
  std::vector<Span> spans;
  std::size_t at = 0;
  for (auto len : lengths) {
    spans.push_back({at, at + len});
    at += len;
  }
  return from_spans(std::move(spans), at);
}

WordAlignment::WordAlignment(std::vector<AlignmentLink> links) : links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

bool WordAlignment::contains(AlignmentLink link) const {
  return std::binary_search(links_.begin(), links_.end(), link);
}

std::vector<std::size_t> WordAlignment::targets_of(std::size_t src) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(links_.begin(), links_.end(), AlignmentLink{src, 0});
  for (; it != links_.end() && it->src == src; ++it) out.push_back(it->tgt);
  return out;
}

std::string WordAlignment::to_pharaoh() const {
  std::string out;
  for (const auto& l : links_) {
    if (!out.empty()) out += ' ';
    out += fmt::format("{}-{}", l.src, l.tgt);
  }
  return out;
}

void ParallelPair::check() const {
  if (segmentation.token_count() != en.tokens.size())
    throw ContractViolation(fmt::format("pair {}: segmentation covers {} tokens, English has {}",
                                        id, segmentation.token_count(), en.tokens.size()));
  for (const auto& l : alignment.links()) {
    if (l.src >= en.tokens.size() || l.tgt >= xx.tokens.size())
      throw ContractViolation(fmt::format("pair {}: link {}-{} out of range", id, l.src, l.tgt));
  }
}

// ---------------------------------------------------------------------------
// Line handling

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) throw ParseError(1, "UTF-8 byte order mark is not allowed");
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    auto pos = text.find('\n', begin);
    if (pos == std::string_view::npos) pos = text.size();
    lines.push_back(text.substr(begin, pos - begin));
    begin = pos + 1;
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!text::is_valid_utf8(lines[i])) throw ParseError(i + 1, "invalid UTF-8");
  return lines;
}

// ---------------------------------------------------------------------------
// Parallel TSV

ParallelCorpus parse_parallel_tsv(std::string_view text) {
  ParallelCorpus corpus;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = lines[i];
    if (i == 0 && line == kParallelHeader) continue;
    if (text::trim(line).empty()) continue;
    const auto fields = text::split_exact(line, '\t');
    if (fields.size() != 3)
      throw ParseError(i + 1, fmt::format("expected 3 tab-separated fields, found {}", fields.size()));
    const auto ordinal = corpus.data_lines++;
    ParallelRecord record{i + 1, ordinal, std::string(text::trim(fields[0])),
                          std::string(text::trim(fields[1])), std::string(text::trim(fields[2]))};
    if (record.en.empty() || record.xx.empty()) {
      corpus.errors.push_back({i + 1, record.en.empty() ? "empty English text" : "empty non-English text"});
      continue;
    }
    corpus.records.push_back(std::move(record));
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Pharaoh

WordAlignment parse_pharaoh(std::string_view line, std::size_t src_len, std::size_t tgt_len) {
  std::vector<AlignmentLink> links;
  for (const auto& pair : text::split_whitespace(line)) {
    const auto dash = pair.find('-');
    const auto src = dash == std::string::npos ? std::nullopt : parse_index(std::string_view(pair).substr(0, dash));
    const auto tgt = dash == std::string::npos ? std::nullopt : parse_index(std::string_view(pair).substr(dash + 1));
    if (!src || !tgt) throw ParseError(0, fmt::format("malformed alignment pair '{}'", pair));
    if (*src >= src_len || *tgt >= tgt_len)
      throw ParseError(0, fmt::format("alignment pair ({},{}) out of bounds for lengths ({},{})", *src,
                                      *tgt, src_len, tgt_len));
    links.push_back({*src, *tgt});
  }
  return WordAlignment(std::move(links));
}

// ---------------------------------------------------------------------------
// IU transcripts

IuTranscript parse_iu_transcript(std::string_view line) {
  const auto raw = text::split_whitespace(line);
  if (raw.empty()) throw ParseError(0, "transcript has no tokens");
  IuTranscript out;
  std::vector<std::size_t> lengths;
  std::size_t current = 0;
  for (const auto& token : raw) {
    if (token == kIuMarker) {
      if (current == 0) throw ParseError(0, "empty intonation unit");
      lengths.push_back(current);
      current = 0;
      continue;
    }
    out.tokens.push_back(token);
    ++current;
  }
  if (current == 0) throw ParseError(0, "empty intonation unit");
  lengths.push_back(current);
  out.segmentation = IntonationSegmentation::from_lengths(lengths);
  return out;
}

TranscriptDecision validate_transcript(std::span<const std::string> transcript_tokens,
                                       std::string_view reference_text) {
  std::vector<std::string> tokens(transcript_tokens.begin(), transcript_tokens.end());
  return text::normalize_text(text::join(tokens, " ")) == text::normalize_text(reference_text)
             ? TranscriptDecision::Accept
             : TranscriptDecision::Reject;
}

IntonationSegmentation project_segmentation(const IuTranscript& transcript,
                                            std::span<const std::string> reference_tokens) {
  if (validate_transcript(transcript.tokens, text::join({reference_tokens.begin(), reference_tokens.end()}, " ")) !=
      TranscriptDecision::Accept)
    throw ContractViolation("transcript does not match the reference");

  // Words (non-empty normalized tokens) preceding each transcript boundary.
  std::vector<std::size_t> words_before;
  std::size_t words = 0;
  std::size_t span_index = 0;
  const auto spans = transcript.segmentation.spans();
  for (std::size_t i = 0; i < transcript.tokens.size(); ++i) {
    if (span_index + 1 < spans.size() && spans[span_index + 1].begin == i) {
      words_before.push_back(words);
      ++span_index;
    }
    if (!text::normalize_token(transcript.tokens[i]).empty()) ++words;
  }
  const std::size_t total_words = words;

  // Reference index of every normalized word.
  std::vector<std::size_t> word_position;
  for (std::size_t i = 0; i < reference_tokens.size(); ++i)
    if (!text::normalize_token(reference_tokens[i]).empty()) word_position.push_back(i);

  std::vector<std::size_t> cuts;
  for (auto w : words_before) {
    if (w == 0 || w >= total_words) continue;
    const auto cut = word_position[w];
    if (cuts.empty() || cuts.back() != cut) cuts.push_back(cut);
  }

  std::vector<Span> out;
  std::size_t begin = 0;
  for (auto cut : cuts) {
    out.push_back({begin, cut});
    begin = cut;
  }
  out.push_back({begin, reference_tokens.size()});
  return IntonationSegmentation::from_spans(std::move(out), reference_tokens.size());
}

// ---------------------------------------------------------------------------
// Assembly

AssembledCorpus assemble_pairs(std::string_view parallel_tsv, std::string_view alignments,
                               std::string_view transcripts, std::string_view lang) {
  if (!is_language_code(lang))
    throw ContractViolation(fmt::format("'{}' is not a non-English language code", lang));

  auto corpus = parse_parallel_tsv(parallel_tsv);
  const auto align_lines = split_lines(alignments);
  const auto iu_lines = split_lines(transcripts);
  if (align_lines.size() != corpus.data_lines)
    throw ParseError(0, fmt::format("alignment file has {} lines for {} parallel records",
                                    align_lines.size(), corpus.data_lines));
  if (iu_lines.size() != corpus.data_lines)
    throw ParseError(0, fmt::format("transcript file has {} lines for {} parallel records",
                                    iu_lines.size(), corpus.data_lines));

  AssembledCorpus out;
  out.errors = std::move(corpus.errors);
  out.stats.records = corpus.data_lines;
  out.stats.record_errors = out.errors.size();

  for (auto& record : corpus.records) {
    auto en = Utterance::from_text(record.id, std::move(record.en));
    auto xx = Utterance::from_text(record.id, std::move(record.xx));

    const auto line_no = record.ordinal + 1;
    WordAlignment alignment;
    try {
      alignment = parse_pharaoh(align_lines[record.ordinal], en.tokens.size(), xx.tokens.size());
    } catch (const ParseError& e) {
      throw ParseError(line_no, fmt::format("alignment for '{}': {}", record.id, e.what()));
    }

    const auto iu_line = iu_lines[record.ordinal];
    if (text::trim(iu_line).empty()) {
      ++out.stats.transcripts_rejected;
      continue;
    }
    IuTranscript transcript;
    try {
      transcript = parse_iu_transcript(iu_line);
    } catch (const ParseError& e) {
      throw ParseError(line_no, fmt::format("transcript for '{}': {}", record.id, e.what()));
    }
    if (validate_transcript(transcript.tokens, en.text) == TranscriptDecision::Reject) {
      ++out.stats.transcripts_rejected;
      continue;
    }

    auto segmentation = project_segmentation(transcript, en.tokens);
    if (segmentation.size() == 1) ++out.stats.single_iu;
    ParallelPair pair{record.id, std::move(en), std::move(xx), std::string(lang),
                      std::move(alignment), std::move(segmentation)};
    pair.check();
    out.pairs.push_back(std::move(pair));
  }
  out.stats.pairs = out.pairs.size();
  return out;
}

// ---------------------------------------------------------------------------
// Dataset TSV

namespace {

void require_clean_field(std::string_view value, std::string_view what) {
  if (value.find_first_of("\t\n\r") != std::string_view::npos)
    throw ContractViolation(fmt::format("{} contains a tab or newline", what));
}

std::string serialize_record(const CodeSwitchedSentence& s) {
  require_clean_field(s.id, "id");
  if (s.id.empty()) throw ContractViolation("record without id");
  if (!is_language_code(s.lang))
    throw ContractViolation(fmt::format("record {}: bad language code '{}'", s.id, s.lang));
  if (auto v = invariant_violations(s); !v.empty())
    throw ContractViolation(fmt::format("record {}: {}", s.id, v.front()));

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const auto& token = s.tokens[i];
    if (token.find_first_of(" \t\n\r") != std::string::npos)
      throw ContractViolation(fmt::format("record {}: token {} contains whitespace", s.id, i));
    labels.emplace_back(tag_label(s.tags[i], s.lang));
  }
  std::vector<std::string> ius;
  for (auto iu : s.replaced_ius) ius.push_back(std::to_string(iu));

  return fmt::format("{}\t{}\t{}\t{}\t{}\t{:.4f}\t{:.4f}\n", s.id, s.lang, text::join(s.tokens, " "),
                     text::join(labels, ","), text::join(ius, ","), cmi(s), spf(s));
}

CodeSwitchedSentence parse_record(const std::vector<std::string>& fields, std::size_t line) {
  auto fail = [line](const std::string& msg) { return ParseError(line, msg); };

  CodeSwitchedSentence s;
  s.id = fields[0];
  s.lang = fields[1];
  if (s.id.empty()) throw fail("empty id");
  if (!is_language_code(s.lang)) throw fail(fmt::format("bad language code '{}'", s.lang));

  s.tokens = text::split_exact(fields[2], ' ');
  for (const auto& label : text::split_exact(fields[3], ',')) {
    if (label == "en") s.tags.push_back(Tag::L1);
    else if (label == "-") s.tags.push_back(Tag::Empty);
    else if (label == s.lang) s.tags.push_back(Tag::L2);
    else throw fail(fmt::format("unknown tag '{}'", label));
  }
  if (s.tags.size() != s.tokens.size())
    throw fail(fmt::format("{} tags for {} tokens", s.tags.size(), s.tokens.size()));

  if (!fields[4].empty()) {
    for (const auto& iu : text::split_exact(fields[4], ',')) {
      const auto index = parse_index(iu);
      if (!index) throw fail(fmt::format("bad IU index '{}'", iu));
      s.replaced_ius.push_back(*index);
    }
  }
  if (auto v = invariant_violations(s); !v.empty()) throw fail(v.front());

  const auto stored_cmi = parse_double(fields[5]);
  const auto stored_spf = parse_double(fields[6]);
  if (!stored_cmi) throw fail(fmt::format("bad cmi '{}'", fields[5]));
  if (!stored_spf) throw fail(fmt::format("bad spf '{}'", fields[6]));
  if (std::abs(*stored_cmi - cmi(s)) > 1e-4)
    throw fail(fmt::format("cmi {} disagrees with tags ({:.4f})", fields[5], cmi(s)));
  if (std::abs(*stored_spf - spf(s)) > 1e-4)
    throw fail(fmt::format("spf {} disagrees with tags ({:.4f})", fields[6], spf(s)));
  return s;
}

template <typename OnFieldCount>
Dataset parse_dataset_impl(std::string_view text, OnFieldCount on_field_count) {
  Dataset out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i == 0 && lines[i] == kDatasetHeader) continue;
    if (text::trim(lines[i]).empty()) continue;
    const auto fields = text::split_exact(lines[i], '\t');
    if (fields.size() != 7) {
      on_field_count(out, i + 1, fields.size());
      continue;
    }
    try {
      out.records.push_back(parse_record(fields, i + 1));
    } catch (const ParseError& e) {
      out.errors.push_back({i + 1, e.message()});
    }
  }
  return out;
}

}  // namespace

std::string serialize_dataset(std::span<const CodeSwitchedSentence> records) {
  std::string out(kDatasetHeader);
  out += '\n';
  for (const auto& s : records) out += serialize_record(s);
  return out;
}

Dataset parse_dataset(std::string_view text) {
  return parse_dataset_impl(text, [](Dataset&, std::size_t line, std::size_t n) {
    throw ParseError(line, fmt::format("expected 7 tab-separated fields, found {}", n));
  });
}

std::vector<RecordError> validate_dataset(std::string_view text) {
  try {
    split_lines(text);
  } catch (const ParseError& e) {
    return {{e.line(), e.message()}};
  }
  auto dataset = parse_dataset_impl(text, [](Dataset& d, std::size_t line, std::size_t n) {
    d.errors.push_back({line, fmt::format("expected 7 tab-separated fields, found {}", n)});
  });
  std::sort(dataset.errors.begin(), dataset.errors.end(),
            [](const RecordError& a, const RecordError& b) { return a.line < b.line; });
  return dataset.errors;
}

}  // namespace covoswitch
