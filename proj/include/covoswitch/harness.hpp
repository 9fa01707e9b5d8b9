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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covoswitch/mt_eval.hpp"

namespace covoswitch {

/// Evaluation layout, read from a flat `key = value` file:
///
///   languages    = ar, de
///   models       = m2m, nllb
///   settings     = csw2en, csw2x, x2en, en2x      (default: all four)
///   tokenization = whitespace | char | pretokenized  (BLEU only)
///   dataset.<lang> = synthesized dataset TSV
///   en.<lang>      = English sentences, one per dataset row
///   xx.<lang>      = non-English sentences, one per dataset row
///   hyp.<lang>.<setting>.<model> = system output, one per dataset row
///   comet.<lang>.<setting>.<model|raw> = optional externally computed COMET
///
/// Relative paths resolve against the config file's directory. With
/// `pretokenized`, BLEU reads `<file>.tok` next to every hypothesis and
/// reference file, and `<dataset>.csw.tok` for the raw code-switched input.
struct EvalConfig {
  std::vector<std::string> languages;
  std::vector<std::string> models;
  std::vector<Setting> settings{Setting::CswToEn, Setting::CswToX, Setting::XToEn, Setting::EnToX};
  Tokenization tokenization = Tokenization::Whitespace;

  std::map<std::string, std::filesystem::path> datasets;
  std::map<std::string, std::filesystem::path> en_sources;
  std::map<std::string, std::filesystem::path> xx_sources;
  /// Keyed by cell_key(lang, setting, model).
  std::map<std::string, std::filesystem::path> hypotheses;
  /// Keyed by cell_key(lang, setting, model); model "raw" for raw inputs.
  std::map<std::string, double> comet;

  /// Throws ParseError on malformed lines or unknown keys.
  static EvalConfig parse(std::string_view text, const std::filesystem::path& base_dir);
  static EvalConfig load(const std::filesystem::path& path);

  /// Every language is supported and every file the run needs exists.
  /// Throws ContractViolation or IoError naming the first offending cell.
  void validate() const;
};

std::string cell_key(std::string_view lang, Setting setting, std::string_view model);

inline constexpr std::string_view kRawModel = "raw";

struct ScoreReport {
  std::vector<std::string> languages;
  std::vector<std::string> models;
  std::vector<Setting> settings;
  /// One per (lang, setting, model).
  std::vector<ScoredSystem> systems;
  /// Code-switched input scored directly, model kRawModel, csw settings only.
  std::vector<ScoredSystem> raw_inputs;
  std::vector<DeltaEntry> deltas;
  /// Spearman correlation between replacement rate and BLEU delta over raw
  /// inputs across all code-switched cells, when defined.
  std::optional<double> replacement_bleu_rho;

  const ScoredSystem* find(std::string_view lang, Setting setting, std::string_view model) const;
  std::optional<double> delta(std::string_view lang, std::string_view model, Setting setting, Metric metric,
                              BaselineKind kind) const;
};

/// Scores every configured cell, the raw-input baselines, and the deltas
/// against both baselines. Throws on unreadable files or segment-count
/// mismatches, naming the cell.
ScoreReport run_evaluation(const EvalConfig& config);

// ---------------------------------------------------------------------------
// Rendering

enum class ReportFormat { Tsv, Markdown };

ReportFormat parse_report_format(std::string_view name);

enum class Mark { None, Best, Worst, BestAndWorst };

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::string> rows;  // ISO codes, alphabetical
  /// cells[row][column]; nullopt renders as an em dash.
  std::vector<std::vector<std::optional<double>>> cells;
  bool signed_values = false;

  /// Per-column extremes over the one-decimal values; ties share the mark.
  std::vector<std::vector<Mark>> marks() const;
};

std::vector<ReportTable> build_tables(const ScoreReport& report);

std::string render_table(const ReportTable& table, ReportFormat format);

std::string render_report(const ScoreReport& report, ReportFormat format);

/// Formats to one decimal, with a leading '+' on positive signed values.
std::string format_value(double v, bool signed_value);

struct ReportCell {
  std::string table;
  std::string row;
  std::string column;
  std::optional<double> value;
  Mark mark = Mark::None;
};

/// Reads back the TSV produced by render_report.
std::vector<ReportCell> parse_report_tsv(std::string_view text);

}  // namespace covoswitch
