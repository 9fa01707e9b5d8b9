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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covoswitch/code_switched.hpp"

namespace covoswitch {

struct Utterance {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;

  /// Throws ContractViolation when `text` has no tokens.
  static Utterance from_text(std::string id, std::string text);
};

/// Half-open token range [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

/// Ordered, contiguous, exhaustive partition of a token sequence into IUs.
class IntonationSegmentation {
 public:
  /// Throws ContractViolation unless `spans` tile [0, token_count) with
  /// non-empty, contiguous ranges.
  static IntonationSegmentation from_spans(std::vector<Span> spans, std::size_t token_count);
  /// Builds spans from IU lengths.
  static IntonationSegmentation from_lengths(std::span<const std::size_t> lengths);

  std::span<const Span> spans() const noexcept { return spans_; }
  std::size_t size() const noexcept { return spans_.size(); }
  const Span& operator[](std::size_t i) const { return spans_.at(i); }
  std::size_t token_count() const noexcept { return spans_.empty() ? 0 : spans_.back().end; }

  friend bool operator==(const IntonationSegmentation&, const IntonationSegmentation&) = default;

 private:
  std::vector<Span> spans_;
};

struct AlignmentLink {
  std::size_t src = 0;
  std::size_t tgt = 0;
  friend auto operator<=>(const AlignmentLink&, const AlignmentLink&) = default;
};

/// Set of (English index, non-English index) links, kept sorted.
class WordAlignment {
 public:
  WordAlignment() = default;
  explicit WordAlignment(std::vector<AlignmentLink> links);

  std::span<const AlignmentLink> links() const noexcept { return links_; }
  std::size_t size() const noexcept { return links_.size(); }
  bool empty() const noexcept { return links_.empty(); }
  bool contains(AlignmentLink link) const;
  /// Target indices linked to `src`, ascending.
  std::vector<std::size_t> targets_of(std::size_t src) const;

  std::string to_pharaoh() const;

  friend bool operator==(const WordAlignment&, const WordAlignment&) = default;

 private:
  std::vector<AlignmentLink> links_;
};

struct ParallelPair {
  std::string id;
  Utterance en;
  Utterance xx;
  std::string lang;
  WordAlignment alignment;
  IntonationSegmentation segmentation;

  /// Throws ContractViolation when alignment or segmentation do not fit the
  /// two utterances.
  void check() const;
};

// ---------------------------------------------------------------------------
// Parallel TSV

struct ParallelRecord {
  std::size_t line = 0;     // 1-based line in the file
  std::size_t ordinal = 0;  // 0-based index among data lines (header excluded)
  std::string id;
  std::string en;
  std::string xx;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct ParallelCorpus {
  std::vector<ParallelRecord> records;
  std::vector<RecordError> errors;
  /// Data lines seen, including those skipped for record-level errors.
  std::size_t data_lines = 0;
};

inline constexpr std::string_view kParallelHeader = "id\ten\txx";

/// Throws ParseError on a line with a field count other than three.
ParallelCorpus parse_parallel_tsv(std::string_view text);

// ---------------------------------------------------------------------------
// Alignments and IU transcripts

/// Parses a Pharaoh line ("0-1 1-0 ..."). Throws ParseError on malformed
/// pairs or indices outside [0, src_len) x [0, tgt_len).
WordAlignment parse_pharaoh(std::string_view line, std::size_t src_len, std::size_t tgt_len);

inline constexpr std::string_view kIuMarker = "|";

struct IuTranscript {
  std::vector<std::string> tokens;
  IntonationSegmentation segmentation;
};

/// Throws ParseError on an empty line or an empty IU (leading, trailing or
/// doubled marker).
IuTranscript parse_iu_transcript(std::string_view line);

enum class TranscriptDecision { Accept, Reject };

/// Accept iff both sides are equal after lowercasing, punctuation removal
/// and whitespace collapsing.
TranscriptDecision validate_transcript(std::span<const std::string> transcript_tokens,
                                       std::string_view reference_text);

/// Maps IU boundaries found on an accepted transcript onto the reference
/// tokenization. Boundaries are matched through the normalized word
/// sequence; punctuation-only reference tokens stay with the preceding IU.
/// Throws ContractViolation if the transcript does not validate.
IntonationSegmentation project_segmentation(const IuTranscript& transcript,
                                            std::span<const std::string> reference_tokens);

// ---------------------------------------------------------------------------
// Pair assembly

struct AssemblyStats {
  std::size_t records = 0;
  std::size_t record_errors = 0;
  std::size_t transcripts_rejected = 0;
  std::size_t pairs = 0;
  std::size_t single_iu = 0;
};

struct AssembledCorpus {
  std::vector<ParallelPair> pairs;
  std::vector<RecordError> errors;
  AssemblyStats stats;
};

/// Joins the three line-parallel inputs into validated pairs. Alignment and
/// transcript files carry one line per parallel data line. Transcripts that
/// fail validate_transcript are dropped and counted. Structural problems
/// (line count mismatch, malformed alignment or transcript) throw ParseError
/// naming the offending file line.
AssembledCorpus assemble_pairs(std::string_view parallel_tsv, std::string_view alignments,
                               std::string_view transcripts, std::string_view lang);

// ---------------------------------------------------------------------------
// Dataset TSV

inline constexpr std::string_view kDatasetHeader =
    "id\tlang\tcsw_text\ttags\treplaced_ius\tcmi\tspf";

/// Throws ContractViolation on records that break invariants or contain tabs
/// or newlines.
std::string serialize_dataset(std::span<const CodeSwitchedSentence> records);

struct Dataset {
  std::vector<CodeSwitchedSentence> records;
  std::vector<RecordError> errors;
};

/// Throws ParseError on a field count other than seven; content problems are
/// collected per record and the record skipped.
Dataset parse_dataset(std::string_view text);

/// Every problem in the file, line-numbered. Empty means valid.
std::vector<RecordError> validate_dataset(std::string_view text);

/// Splits file content into lines (LF). A final newline does not produce an
/// empty trailing line. Throws ParseError on a UTF-8 BOM or invalid UTF-8.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace covoswitch
