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

#include "covoswitch/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "covoswitch/corpus_io.hpp"
#include "covoswitch/csw_metrics.hpp"
#include "covoswitch/errors.hpp"
#include "covoswitch/file_io.hpp"
#include "covoswitch/harness.hpp"
#include "covoswitch/mt_eval.hpp"
#include "covoswitch/synthesis.hpp"

namespace covoswitch::cli {

namespace fs = std::filesystem;

namespace {

struct SynthesizeArgs {
  std::string parallel, align, iu, out, summary;
  std::string lang = "xx";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct ValidateArgs {
  std::string dataset, parallel, align, iu;
  std::string lang = "xx";
};

struct ScoreArgs {
  std::string hyp, ref, metric, csw_dataset, target, tokenization = "whitespace";
};

struct ReportArgs {
  std::string config, out, format = "tsv";
};

void print_errors(std::ostream& err, std::string_view file, std::span<const RecordError> errors) {
  for (const auto& e : errors) fmt::print(err, "{}:{}: {}\n", file, e.line, e.message);
}

int run_synthesize(const SynthesizeArgs& a, std::ostream& out, std::ostream& err) {
  const auto assembled = assemble_pairs(read_file(a.parallel), read_file(a.align), read_file(a.iu), a.lang);
  print_errors(err, a.parallel, assembled.errors);
  const auto result = synthesize_corpus(assembled.pairs, a.seed, a.jobs);
  const auto& s = result.summary;
  nlohmann::ordered_json summary = {
      {"lang", a.lang},
      {"seed", a.seed},
      {"records", assembled.stats.records},
      {"record_errors", assembled.stats.record_errors},
      {"transcripts_rejected", assembled.stats.transcripts_rejected},
      {"pairs", s.pairs},
      {"single_iu_pairs", assembled.stats.single_iu},
      {"attempts", s.attempts},
      {"accepted", s.accepted},
      {"rejected_no_l2", s.rejected_no_l2},
      {"rejected_equals_source", s.rejected_equals_source},
  };
  const auto dataset = serialize_dataset(result.sentences);
  const auto summary_path = a.summary.empty() ? a.out + ".summary.jsonl" : a.summary;
  write_file_atomic(a.out, dataset);
  write_file_atomic(summary_path, summary.dump() + "\n");
  fmt::print(out, "{} sentences from {} pairs written to {}\n", s.accepted, s.pairs, a.out);
  return kSuccess;
}

int run_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  bool ok = true;
  if (!a.dataset.empty()) {
    const auto errors = validate_dataset(read_file(a.dataset));
    print_errors(err, a.dataset, errors);
    ok = errors.empty();
    if (ok) fmt::print(out, "{}: ok\n", a.dataset);
  }
  if (!a.parallel.empty()) {
    const auto parallel = read_file(a.parallel);
    const auto align = read_file(a.align);
    const auto iu = read_file(a.iu);
    try {
      const auto assembled = assemble_pairs(parallel, align, iu, a.lang);
      print_errors(err, a.parallel, assembled.errors);
      ok = ok && assembled.errors.empty();
      fmt::print(out, "{} records, {} pairs, {} transcripts rejected, {} record errors\n",
                 assembled.stats.records, assembled.stats.pairs, assembled.stats.transcripts_rejected,
                 assembled.stats.record_errors);
    } catch (const ParseError& e) {
      fmt::print(err, "error: {}\n", e.what());
      ok = false;
    } catch (const ContractViolation& e) {
      fmt::print(err, "error: {}\n", e.what());
      ok = false;
    }
  }
  return ok ? kSuccess : kValidationFailure;
}

int run_stats(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto dataset = parse_dataset(read_file(path));
  if (!dataset.errors.empty()) {
    print_errors(err, path, dataset.errors);
    return kValidationFailure;
  }
  const auto stats = stats_by_language(dataset.records);
  out << render_stats_tsv(stats);
  return kSuccess;
}

std::vector<std::string> lines_of(const std::string& path) { return read_lines(path); }

int run_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  const auto hyp = lines_of(a.hyp);
  double value = 0;
  if (a.metric == "bleu" || a.metric == "chrfpp") {
    if (a.ref.empty()) {
      fmt::print(err, "error: --ref is required for {}\n", a.metric);
      return kUsageError;
    }
    const auto ref = lines_of(a.ref);
    if (hyp.size() != ref.size())
      throw ContractViolation(fmt::format("{} hypotheses for {} references", hyp.size(), ref.size()));
    if (a.metric == "bleu") {
      const auto mode = parse_tokenization(a.tokenization);
      std::vector<TokenList> h, r;
      for (const auto& l : hyp) h.push_back(tokenize(l, mode));
      for (const auto& l : ref) r.push_back(tokenize(l, mode));
      value = bleu(h, r);
    } else {
      value = chrf_pp(hyp, ref);
    }
  } else {
    if (a.csw_dataset.empty() || a.target.empty()) {
      fmt::print(err, "error: --csw-dataset and --target are required for {}\n", a.metric);
      return kUsageError;
    }
    const auto target = a.target == "l1" ? Tag::L1 : Tag::L2;
    const auto dataset = parse_dataset(read_file(a.csw_dataset));
    if (!dataset.errors.empty()) {
      print_errors(err, a.csw_dataset, dataset.errors);
      return kValidationFailure;
    }
    std::vector<TaggedSegment> inputs;
    for (const auto& s : dataset.records) inputs.push_back(TaggedSegment::from(s));
    value = a.metric == "copy" ? copy_rate(inputs, hyp, target) : replacement_rate(inputs, hyp, target);
  }
  fmt::print(out, "{}\t{:.4f}\n", a.metric, value);
  return kSuccess;
}

int run_report(const ReportArgs& a, std::ostream& out) {
  const auto format = parse_report_format(a.format);
  const auto config = EvalConfig::load(a.config);
  const auto report = run_evaluation(config);
  const auto text = render_report(report, format);
  fs::create_directories(a.out);
  const auto path = fs::path(a.out) / (format == ReportFormat::Tsv ? "report.tsv" : "report.md");
  write_file_atomic(path, text);
  fmt::print(out, "{}\n", path.string());
  return kSuccess;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Code-switched corpus synthesis and translation evaluation", "covoswitch"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  SynthesizeArgs syn;
  auto* synthesize = app.add_subcommand("synthesize", "Build a code-switched dataset from aligned parallel text");
  synthesize->add_option("--parallel", syn.parallel, "Parallel TSV (id, en, xx)")->required()->check(CLI::ExistingFile);
  synthesize->add_option("--align", syn.align, "Pharaoh alignments, one line per parallel record")
      ->required()
      ->check(CLI::ExistingFile);
  synthesize->add_option("--iu", syn.iu, "IU transcripts, one line per parallel record")
      ->required()
      ->check(CLI::ExistingFile);
  synthesize->add_option("--seed", syn.seed, "Random seed")->required();
  synthesize->add_option("--out", syn.out, "Output dataset TSV")->required();
  synthesize->add_option("--lang", syn.lang, "ISO code of the non-English language")->capture_default_str();
  synthesize->add_option("--jobs", syn.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  synthesize->add_option("--summary", syn.summary, "Summary JSON line (default: <out>.summary.jsonl)");

  std::string stats_dataset;
  auto* stats = app.add_subcommand("stats", "Corpus code-switching statistics per language");
  stats->add_option("--dataset", stats_dataset, "Dataset TSV")->required()->check(CLI::ExistingFile);

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Score one system output file");
  score->add_option("--hyp", sc.hyp, "Hypotheses, one per line")->required()->check(CLI::ExistingFile);
  score->add_option("--ref", sc.ref, "References, one per line")->check(CLI::ExistingFile);
  score->add_option("--metric", sc.metric, "Metric")
      ->required()
      ->check(CLI::IsMember({"bleu", "chrfpp", "copy", "replace"}));
  score->add_option("--csw-dataset", sc.csw_dataset, "Code-switched inputs (copy, replace)")
      ->check(CLI::ExistingFile);
  score->add_option("--target", sc.target, "Target language side (copy, replace)")
      ->check(CLI::IsMember({"l1", "l2"}));
  score->add_option("--tokenization", sc.tokenization, "BLEU tokenization")
      ->capture_default_str()
      ->check(CLI::IsMember({"whitespace", "char", "pretokenized"}));

  ReportArgs rep;
  auto* report = app.add_subcommand("report", "Run the configured evaluation and render the report");
  report->add_option("--config", rep.config, "Evaluation config (key = value)")->required()->check(CLI::ExistingFile);
  report->add_option("--out", rep.out, "Output directory")->required();
  report->add_option("--format", rep.format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "markdown"}));

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check input files or a dataset without writing anything");
  auto* v_dataset = validate->add_option("--dataset", val.dataset, "Dataset TSV")->check(CLI::ExistingFile);
  auto* v_parallel = validate->add_option("--parallel", val.parallel, "Parallel TSV")->check(CLI::ExistingFile);
  auto* v_align = validate->add_option("--align", val.align, "Pharaoh alignments")->check(CLI::ExistingFile);
  auto* v_iu = validate->add_option("--iu", val.iu, "IU transcripts")->check(CLI::ExistingFile);
  validate->add_option("--lang", val.lang, "ISO code of the non-English language")->capture_default_str();
  v_parallel->needs(v_align)->needs(v_iu);
  v_align->needs(v_parallel);
  v_iu->needs(v_parallel);
  validate->require_option(1, 4);
  (void)v_dataset;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kSuccess;
    }
    app.exit(e, out, err);
    const CLI::App* active = &app;
    for (auto* sub : app.get_subcommands()) active = sub;
    err << active->help();
    return kUsageError;
  }

  try {
    if (*synthesize) return run_synthesize(syn, out, err);
    if (*stats) return run_stats(stats_dataset, out, err);
    if (*score) return run_score(sc, out, err);
    if (*report) return run_report(rep, out);
    if (*validate) return run_validate(val, out, err);
  } catch (const ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kIoError;
  } catch (const ContractViolation& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidationFailure;
  } catch (const UndefinedInput& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace covoswitch::cli
