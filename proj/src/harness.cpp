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

#include "covoswitch/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "covoswitch/corpus_io.hpp"
#include "covoswitch/errors.hpp"
#include "covoswitch/file_io.hpp"
#include "covoswitch/languages.hpp"
#include "covoswitch/text.hpp"

namespace covoswitch {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  for (const auto& part : text::split_exact(value, ',')) {
    const auto item = text::trim(part);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(value)};
  return p.is_absolute() ? p : base / p;
}

fs::path tok_path(const fs::path& p) {
  auto out = p;
  out += ".tok";
  return out;
}

fs::path csw_tok_path(const fs::path& dataset) {
  auto out = dataset;
  out += ".csw.tok";
  return out;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(line, fmt::format("not a number: '{}'", s));
  return v;
}

constexpr Setting kAllSettings[] = {Setting::CswToEn, Setting::CswToX, Setting::XToEn, Setting::EnToX};

}  // namespace

std::string cell_key(std::string_view lang, Setting setting, std::string_view model) {
  return fmt::format("{}.{}.{}", lang, to_string(setting), model);
}

EvalConfig EvalConfig::parse(std::string_view content, const fs::path& base_dir) {
  EvalConfig cfg;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (auto raw : split_lines(content)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string key{text::trim(line.substr(0, eq))};
    const auto value = text::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (!seen.insert(key).second) throw ParseError(line_no, fmt::format("duplicate key '{}'", key));

    const auto parts = text::split_exact(key, '.');
    try {
      if (key == "languages") {
        cfg.languages = split_list(value);
      } else if (key == "models") {
        cfg.models = split_list(value);
        for (const auto& m : cfg.models)
          if (m == kRawModel || m.find('.') != std::string::npos)
            throw ParseError(line_no, fmt::format("invalid model name '{}'", m));
      } else if (key == "settings") {
        cfg.settings.clear();
        for (const auto& s : split_list(value)) cfg.settings.push_back(parse_setting(s));
      } else if (key == "tokenization") {
        cfg.tokenization = parse_tokenization(value);
      } else if (parts.size() == 2 && parts[0] == "dataset") {
        cfg.datasets[parts[1]] = resolve(base_dir, value);
      } else if (parts.size() == 2 && parts[0] == "en") {
        cfg.en_sources[parts[1]] = resolve(base_dir, value);
      } else if (parts.size() == 2 && parts[0] == "xx") {
        cfg.xx_sources[parts[1]] = resolve(base_dir, value);
      } else if (parts.size() == 4 && parts[0] == "hyp") {
        cfg.hypotheses[cell_key(parts[1], parse_setting(parts[2]), parts[3])] = resolve(base_dir, value);
      } else if (parts.size() == 4 && parts[0] == "comet") {
        cfg.comet[cell_key(parts[1], parse_setting(parts[2]), parts[3])] = parse_double(value, line_no);
      } else {
        throw ParseError(line_no, fmt::format("unknown key '{}'", key));
      }
    } catch (const ContractViolation& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return cfg;
}

EvalConfig EvalConfig::load(const fs::path& path) {
  return parse(read_file(path), path.parent_path());
}

void EvalConfig::validate() const {
  if (languages.empty()) throw ContractViolation("config lists no languages");
  if (models.empty()) throw ContractViolation("config lists no models");
  if (settings.empty()) throw ContractViolation("config lists no settings");
  const auto require = [](const fs::path& p, std::string_view what) {
    if (!fs::is_regular_file(p)) throw IoError(fmt::format("{}: missing file '{}'", what, p.string()));
  };
  const auto lookup = [](const auto& map, const std::string& key, std::string_view what) -> const fs::path& {
    const auto it = map.find(key);
    if (it == map.end()) throw ContractViolation(fmt::format("no {} configured", what));
    return it->second;
  };
  const bool tok = tokenization == Tokenization::Pretokenized;
  for (const auto& lang : languages) {
    if (!is_supported_language(lang)) throw ContractViolation(fmt::format("unsupported language '{}'", lang));
    for (const auto& [map, name] : {std::pair{&datasets, "dataset"}, {&en_sources, "en"}, {&xx_sources, "xx"}}) {
      const auto what = fmt::format("{}.{}", name, lang);
      const auto& p = lookup(*map, lang, what);
      require(p, what);
      if (tok && map != &datasets) require(tok_path(p), what);
    }
    const bool any_csw = std::any_of(settings.begin(), settings.end(), is_code_switched);
    if (tok && any_csw) require(csw_tok_path(datasets.at(lang)), fmt::format("dataset.{}", lang));
    for (auto s : settings) {
      for (const auto& model : models) {
        const auto key = cell_key(lang, s, model);
        const auto& p = lookup(hypotheses, key, fmt::format("hyp.{}", key));
        require(p, key);
        if (tok) require(tok_path(p), key);
      }
    }
  }
}

const ScoredSystem* ScoreReport::find(std::string_view lang, Setting setting, std::string_view model) const {
  const auto& pool = model == kRawModel ? raw_inputs : systems;
  for (const auto& s : pool)
    if (s.lang == lang && s.setting == setting && s.model == model) return &s;
  return nullptr;
}

std::optional<double> ScoreReport::delta(std::string_view lang, std::string_view model, Setting setting,
                                         Metric metric, BaselineKind kind) const {
  for (const auto& d : deltas)
    if (d.lang == lang && d.model == model && d.setting == setting && d.metric == metric && d.kind == kind)
      return d.value;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scoring

namespace {

struct LanguageData {
  std::vector<CodeSwitchedSentence> dataset;
  std::vector<std::string> csw_text;
  std::vector<std::string> en;
  std::vector<std::string> xx;
  // Pretokenized references, empty otherwise.
  std::vector<std::string> en_tok;
  std::vector<std::string> xx_tok;
  std::vector<std::string> csw_tok;
};

std::vector<std::string> read_aligned(const fs::path& p, std::size_t expected, std::string_view cell) {
  std::vector<std::string> lines;
  try {
    lines = read_lines(p);
  } catch (const std::exception& e) {
    throw IoError(fmt::format("{}: {}", cell, e.what()));
  }
  if (lines.size() != expected)
    throw ContractViolation(
        fmt::format("{}: '{}' has {} segments, expected {}", cell, p.string(), lines.size(), expected));
  return lines;
}

LanguageData load_language(const EvalConfig& cfg, const std::string& lang) {
  LanguageData d;
  const auto& dataset_path = cfg.datasets.at(lang);
  Dataset ds;
  try {
    ds = parse_dataset(read_file(dataset_path));
  } catch (const std::exception& e) {
    throw IoError(fmt::format("dataset.{}: {}", lang, e.what()));
  }
  if (!ds.errors.empty())
    throw ContractViolation(fmt::format("dataset.{}: line {}: {}", lang, ds.errors.front().line,
                                        ds.errors.front().message));
  if (ds.records.empty()) throw ContractViolation(fmt::format("dataset.{}: no records", lang));
  d.dataset = std::move(ds.records);
  for (const auto& s : d.dataset) d.csw_text.push_back(s.rendered_text());
  const auto n = d.dataset.size();
  d.en = read_aligned(cfg.en_sources.at(lang), n, fmt::format("en.{}", lang));
  d.xx = read_aligned(cfg.xx_sources.at(lang), n, fmt::format("xx.{}", lang));
  if (cfg.tokenization == Tokenization::Pretokenized) {
    d.en_tok = read_aligned(tok_path(cfg.en_sources.at(lang)), n, fmt::format("en.{}", lang));
    d.xx_tok = read_aligned(tok_path(cfg.xx_sources.at(lang)), n, fmt::format("xx.{}", lang));
    if (std::any_of(cfg.settings.begin(), cfg.settings.end(), is_code_switched))
      d.csw_tok = read_aligned(csw_tok_path(dataset_path), n, fmt::format("dataset.{}", lang));
  }
  return d;
}

std::vector<TaggedSegment> inputs_for(const LanguageData& d, Setting s) {
  std::vector<TaggedSegment> out;
  switch (s) {
    case Setting::CswToEn:
    case Setting::CswToX:
      for (const auto& r : d.dataset) out.push_back(TaggedSegment::from(r));
      break;
    case Setting::XToEn:
      for (const auto& x : d.xx) out.push_back(TaggedSegment::monolingual(x, Tag::L2));
      break;
    case Setting::EnToX:
      for (const auto& e : d.en) out.push_back(TaggedSegment::monolingual(e, Tag::L1));
      break;
  }
  return out;
}

bool english_reference(Setting s) { return s == Setting::CswToEn || s == Setting::XToEn; }

ScoredSystem score_cell(const EvalConfig& cfg, const LanguageData& d, const std::string& lang, Setting setting,
                        const std::string& model, const std::vector<std::string>& hyp,
                        const std::vector<std::string>* hyp_tok) {
  const auto& ref = english_reference(setting) ? d.en : d.xx;
  ScoredSystem out;
  out.setting = setting;
  out.lang = lang;
  out.model = model;

  std::vector<TokenList> hyp_tokens, ref_tokens;
  hyp_tokens.reserve(hyp.size());
  ref_tokens.reserve(ref.size());
  if (cfg.tokenization == Tokenization::Pretokenized) {
    const auto& ref_tok = english_reference(setting) ? d.en_tok : d.xx_tok;
    for (const auto& h : *hyp_tok) hyp_tokens.push_back(text::split_whitespace(h));
    for (const auto& r : ref_tok) ref_tokens.push_back(text::split_whitespace(r));
  } else {
    for (const auto& h : hyp) hyp_tokens.push_back(tokenize(h, cfg.tokenization));
    for (const auto& r : ref) ref_tokens.push_back(tokenize(r, cfg.tokenization));
  }
  const auto cell = cell_key(lang, setting, model);
  try {
    out.bleu = bleu(hyp_tokens, ref_tokens);
  } catch (const UndefinedInput& e) {
    throw UndefinedInput(fmt::format("{}: {}", cell, e.what()));
  }
  out.chrfpp = chrf_pp(hyp, ref);

  const auto inputs = inputs_for(d, setting);
  const auto target = target_tag(setting);
  if (is_code_switched(setting)) {
    try {
      out.copy_rate = copy_rate(inputs, hyp, target);
    } catch (const UndefinedInput&) {
    }
  }
  try {
    out.replacement_rate = replacement_rate(inputs, hyp, target);
  } catch (const UndefinedInput&) {
  }
  if (const auto it = cfg.comet.find(cell); it != cfg.comet.end()) out.comet = it->second;
  return out;
}

std::vector<Metric> present_metrics(const ScoredSystem& a, const ScoredSystem& b, std::vector<Metric> base,
                                    std::initializer_list<Metric> optional) {
  for (auto m : optional)
    if (a.get(m) && b.get(m)) base.push_back(m);
  return base;
}

}  // namespace

ScoreReport run_evaluation(const EvalConfig& config) {
  config.validate();
  ScoreReport report;
  report.languages = config.languages;
  std::sort(report.languages.begin(), report.languages.end());
  report.models = config.models;
  for (auto s : kAllSettings)
    if (std::find(config.settings.begin(), config.settings.end(), s) != config.settings.end())
      report.settings.push_back(s);

  for (const auto& lang : report.languages) {
    const auto data = load_language(config, lang);
    for (auto setting : report.settings) {
      if (is_code_switched(setting)) {
        const auto* tok = config.tokenization == Tokenization::Pretokenized ? &data.csw_tok : nullptr;
        report.raw_inputs.push_back(
            score_cell(config, data, lang, setting, std::string(kRawModel), data.csw_text, tok));
      }
      for (const auto& model : report.models) {
        const auto key = cell_key(lang, setting, model);
        const auto& path = config.hypotheses.at(key);
        const auto hyp = read_aligned(path, data.dataset.size(), key);
        std::vector<std::string> hyp_tok;
        if (config.tokenization == Tokenization::Pretokenized)
          hyp_tok = read_aligned(tok_path(path), data.dataset.size(), key);
        report.systems.push_back(score_cell(config, data, lang, setting, model, hyp, &hyp_tok));
      }
    }
  }

  std::vector<double> rates, raw_bleu_deltas;
  for (const auto& lang : report.languages) {
    for (const auto& model : report.models) {
      for (auto setting : report.settings) {
        if (!is_code_switched(setting)) continue;
        const auto* csw = report.find(lang, setting, model);
        if (const auto* mono = report.find(lang, monolingual_counterpart(setting), model)) {
          const auto metrics = present_metrics(*csw, *mono, {Metric::Bleu, Metric::ChrfPP},
                                               {Metric::Comet, Metric::ReplacementRate});
          for (auto& d : score_deltas(*csw, *mono, BaselineKind::Monolingual, metrics))
            report.deltas.push_back(std::move(d));
        }
        const auto* raw = report.find(lang, setting, kRawModel);
        const auto metrics = present_metrics(*csw, *raw, {Metric::Bleu, Metric::ChrfPP}, {Metric::Comet});
        for (auto& d : score_deltas(*csw, *raw, BaselineKind::RawCswInput, metrics))
          report.deltas.push_back(std::move(d));
        if (csw->replacement_rate) {
          rates.push_back(*csw->replacement_rate);
          raw_bleu_deltas.push_back(csw->bleu - raw->bleu);
        }
      }
    }
  }
  if (rates.size() >= 2) {
    try {
      report.replacement_bleu_rho = spearman_rho(rates, raw_bleu_deltas);
    } catch (const UndefinedInput&) {
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

ReportFormat parse_report_format(std::string_view name) {
  if (name == "tsv") return ReportFormat::Tsv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw ContractViolation(fmt::format("unknown report format '{}'", name));
}

std::vector<std::vector<Mark>> ReportTable::marks() const {
  std::vector<std::vector<Mark>> out(rows.size(), std::vector<Mark>(columns.size(), Mark::None));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::optional<double> best, worst;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!cells[r][c]) continue;
      const double v = round1(*cells[r][c]);
      if (!best || v > *best) best = v;
      if (!worst || v < *worst) worst = v;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!cells[r][c]) continue;
      const double v = round1(*cells[r][c]);
      const bool b = v == *best, w = v == *worst;
      out[r][c] = b && w ? Mark::BestAndWorst : b ? Mark::Best : w ? Mark::Worst : Mark::None;
    }
  }
  return out;
}

namespace {

constexpr std::string_view kMissing = "—";

std::string_view mark_name(Mark m) {
  switch (m) {
    case Mark::None: return "-";
    case Mark::Best: return "best";
    case Mark::Worst: return "worst";
    case Mark::BestAndWorst: return "best,worst";
  }
  return "-";
}

Mark parse_mark(std::string_view s, std::size_t line) {
  for (auto m : {Mark::None, Mark::Best, Mark::Worst, Mark::BestAndWorst})
    if (mark_name(m) == s) return m;
  throw ParseError(line, fmt::format("unknown mark '{}'", s));
}

std::string column_name(Setting s, std::string_view model) { return fmt::format("{}/{}", to_string(s), model); }

ReportTable make_table(const ScoreReport& report, std::string name, std::span<const Setting> settings,
                       bool signed_values, auto value_of) {
  ReportTable t;
  t.name = std::move(name);
  t.rows = report.languages;
  t.signed_values = signed_values;
  for (auto s : settings)
    for (const auto& m : report.models) t.columns.push_back(column_name(s, m));
  for (const auto& lang : t.rows) {
    auto& row = t.cells.emplace_back();
    for (auto s : settings)
      for (const auto& m : report.models) row.push_back(value_of(lang, s, m));
  }
  return t;
}

std::string markdown_cell(const std::optional<double>& v, Mark m, bool signed_values) {
  if (!v) return std::string(kMissing);
  const auto s = format_value(*v, signed_values);
  switch (m) {
    case Mark::None: return s;
    case Mark::Best: return fmt::format("**{}**", s);
    case Mark::Worst: return fmt::format("_{}_", s);
    case Mark::BestAndWorst: return fmt::format("**_{}_**", s);
  }
  return s;
}

}  // namespace

std::string format_value(double v, bool signed_value) {
  const double r = round1(v);
  if (signed_value && r > 0) return fmt::format("+{:.1f}", r);
  return fmt::format("{:.1f}", r);
}

std::vector<ReportTable> build_tables(const ScoreReport& report) {
  std::vector<Setting> csw;
  for (auto s : report.settings)
    if (is_code_switched(s)) csw.push_back(s);

  std::vector<ReportTable> tables;
  for (auto metric : {Metric::Bleu, Metric::ChrfPP, Metric::Comet}) {
    tables.push_back(make_table(report, fmt::format("scores.{}", to_string(metric)), report.settings, false,
                                [&](const std::string& lang, Setting s, const std::string& m) {
                                  const auto* sys = report.find(lang, s, m);
                                  return sys ? sys->get(metric) : std::nullopt;
                                }));
  }
  for (auto metric : {Metric::CopyRate, Metric::ReplacementRate}) {
    const std::span<const Setting> settings =
        metric == Metric::CopyRate ? std::span<const Setting>(csw) : std::span<const Setting>(report.settings);
    tables.push_back(make_table(report, std::string(to_string(metric)), settings, false,
                                [&](const std::string& lang, Setting s, const std::string& m) {
                                  const auto* sys = report.find(lang, s, m);
                                  return sys ? sys->get(metric) : std::nullopt;
                                }));
  }
  for (auto kind : {BaselineKind::Monolingual, BaselineKind::RawCswInput}) {
    for (auto metric : {Metric::Bleu, Metric::ChrfPP, Metric::Comet, Metric::ReplacementRate}) {
      if (kind == BaselineKind::RawCswInput && metric == Metric::ReplacementRate) continue;
      tables.push_back(make_table(report, fmt::format("delta.{}.{}", to_string(metric), to_string(kind)), csw, true,
                                  [&](const std::string& lang, Setting s, const std::string& m) {
                                    return report.delta(lang, m, s, metric, kind);
                                  }));
    }
  }
  return tables;
}

std::string render_table(const ReportTable& table, ReportFormat format) {
  const auto marks = table.marks();
  std::string out;
  if (format == ReportFormat::Tsv) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const auto& v = table.cells[r][c];
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", table.name, table.rows[r], table.columns[c],
                           v ? fmt::format("{}", *v) : std::string("NA"),
                           v ? format_value(*v, table.signed_values) : std::string(kMissing),
                           v ? mark_name(marks[r][c]) : mark_name(Mark::None));
      }
    }
    return out;
  }
  out += fmt::format("### {}\n\n| ISO |", table.name);
  for (const auto& c : table.columns) out += fmt::format(" {} |", c);
  out += "\n|:---|";
  for (std::size_t c = 0; c < table.columns.size(); ++c) out += "---:|";
  out += "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += fmt::format("| {} |", table.rows[r]);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out += fmt::format(" {} |", markdown_cell(table.cells[r][c], marks[r][c], table.signed_values));
    out += "\n";
  }
  return out;
}

std::string render_report(const ScoreReport& report, ReportFormat format) {
  if (report.languages.empty()) throw ContractViolation("cannot render an empty report");
  const auto tables = build_tables(report);
  std::string out;
  const std::string rho_column = "replacement_rate~delta.bleu.raw_csw_input";
  if (format == ReportFormat::Tsv) {
    out += "table\tlang\tcolumn\tvalue\tdisplay\tmark\n";
    for (const auto& t : tables) out += render_table(t, format);
    const auto& rho = report.replacement_bleu_rho;
    out += fmt::format("spearman\tall\t{}\t{}\t{}\t-\n", rho_column, rho ? fmt::format("{}", *rho) : "NA",
                       rho ? fmt::format("{:.3f}", *rho) : std::string(kMissing));
    return out;
  }
  out += "# Evaluation report\n";
  for (const auto& t : tables) {
    out += "\n";
    out += render_table(t, format);
  }
  out += fmt::format("\n### spearman\n\n{}: {}\n", rho_column,
                     report.replacement_bleu_rho ? fmt::format("{:.3f}", *report.replacement_bleu_rho)
                                                 : std::string(kMissing));
  return out;
}

std::vector<ReportCell> parse_report_tsv(std::string_view content) {
  std::vector<ReportCell> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(content)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = text::split_exact(line, '\t');
    if (f.size() != 6) throw ParseError(line_no, fmt::format("expected 6 fields, found {}", f.size()));
    if (line_no == 1 && f[0] == "table") continue;
    ReportCell cell{f[0], f[1], f[2], std::nullopt, parse_mark(f[5], line_no)};
    if (f[3] != "NA") cell.value = parse_double(f[3], line_no);
    out.push_back(std::move(cell));
  }
  return out;
}

}  // namespace covoswitch
