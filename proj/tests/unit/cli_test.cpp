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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "covoswitch/corpus_io.hpp"
#include "covoswitch/file_io.hpp"
#include "fixture_corpus.hpp"
#include "json.hpp"

namespace covoswitch {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.status = cli::dispatch(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           fmt::format("covoswitch_cli_{}", ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const auto f = testing::make_fixture("ca", 150, 11);
    write_file_atomic(path("par.tsv"), f.parallel);
    write_file_atomic(path("align.txt"), f.alignments);
    write_file_atomic(path("iu.txt"), f.transcripts);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome synthesize(const std::string& out, const std::string& jobs = "1") {
    return run({"synthesize", "--parallel", path("par.tsv"), "--align", path("align.txt"), "--iu", path("iu.txt"),
                "--seed", "5", "--lang", "ca", "--jobs", jobs, "--out", path(out)});
  }

  fs::path dir_;
};

TEST_F(CliTest, SynthesizeIsReproducible) {
  ASSERT_EQ(synthesize("a.tsv").status, cli::kSuccess);
  ASSERT_EQ(synthesize("b.tsv", "4").status, cli::kSuccess);
  const auto a = read_file(path("a.tsv"));
  EXPECT_EQ(a, read_file(path("b.tsv")));
  EXPECT_TRUE(validate_dataset(a).empty());
  EXPECT_EQ(a.substr(0, kDatasetHeader.size()), kDatasetHeader);

  const auto summary = nlohmann::json::parse(read_file(path("a.tsv.summary.jsonl")));
  EXPECT_EQ(summary.at("lang"), "ca");
  EXPECT_EQ(summary.at("seed"), 5);
  EXPECT_EQ(summary.at("records"), 150);
  EXPECT_EQ(summary.at("attempts").get<int>(),
            summary.at("accepted").get<int>() + summary.at("rejected_no_l2").get<int>() +
                summary.at("rejected_equals_source").get<int>());
  EXPECT_EQ(read_file(path("a.tsv.summary.jsonl")), read_file(path("b.tsv.summary.jsonl")));
}

TEST_F(CliTest, ValidateReportsLineNumbers) {
  ASSERT_EQ(synthesize("d.tsv").status, cli::kSuccess);
  auto lines = read_lines(path("d.tsv"));
  ASSERT_GT(lines.size(), 4u);
  lines[2] = "broken\tline";
  lines[4].replace(lines[4].rfind('\t'), std::string::npos, "\t9.9999");
  std::string corrupt;
  for (const auto& l : lines) corrupt += l + "\n";
  write_file_atomic(path("bad.tsv"), corrupt);

  EXPECT_EQ(run({"validate", "--dataset", path("d.tsv")}).status, cli::kSuccess);
  const auto o = run({"validate", "--dataset", path("bad.tsv")});
  EXPECT_EQ(o.status, cli::kValidationFailure);
  EXPECT_NE(o.err.find("bad.tsv:3: expected 7 tab-separated fields"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("bad.tsv:5:"), std::string::npos) << o.err;

  const auto inputs = run({"validate", "--parallel", path("par.tsv"), "--align", path("align.txt"), "--iu",
                           path("iu.txt"), "--lang", "ca"});
  EXPECT_EQ(inputs.status, cli::kSuccess) << inputs.err;
  EXPECT_NE(inputs.out.find("150 records"), std::string::npos);
}

TEST_F(CliTest, ValidateRejectsMismatchedInputs) {
  auto align = read_lines(path("align.txt"));
  align.pop_back();
  std::string text;
  for (const auto& l : align) text += l + "\n";
  write_file_atomic(path("short.txt"), text);
  const auto o = run({"validate", "--parallel", path("par.tsv"), "--align", path("short.txt"), "--iu",
                      path("iu.txt")});
  EXPECT_EQ(o.status, cli::kValidationFailure);
  EXPECT_EQ(run({"synthesize", "--parallel", path("par.tsv"), "--align", path("short.txt"), "--iu", path("iu.txt"),
                 "--seed", "1", "--out", path("x.tsv")})
                .status,
            cli::kIoError);
  EXPECT_FALSE(fs::exists(path("x.tsv")));
}

TEST_F(CliTest, StatsAndScore) {
  ASSERT_EQ(synthesize("d.tsv").status, cli::kSuccess);
  const auto stats = run({"stats", "--dataset", path("d.tsv")});
  ASSERT_EQ(stats.status, cli::kSuccess);
  EXPECT_EQ(stats.out.substr(0, stats.out.find('\n')), "Mode\tISO\tCount\t%L1\t%L2\tCMI\tSPF");
  EXPECT_NE(stats.out.find("macro\tca\t"), std::string::npos);
  EXPECT_NE(stats.out.find("micro\tca\t"), std::string::npos);

  write_file_atomic(path("ref.txt"), "the cat sat on the mat\nbore da pawb a chroeso\n");
  write_file_atomic(path("one.txt"), "the cat\n");
  EXPECT_EQ(run({"score", "--hyp", path("ref.txt"), "--ref", path("ref.txt"), "--metric", "bleu"}).out,
            "bleu\t100.0000\n");
  EXPECT_EQ(run({"score", "--hyp", path("ref.txt"), "--ref", path("ref.txt"), "--metric", "chrfpp"}).out,
            "chrfpp\t100.0000\n");
  EXPECT_EQ(run({"score", "--hyp", path("one.txt"), "--ref", path("ref.txt"), "--metric", "bleu"}).status,
            cli::kValidationFailure);
  EXPECT_EQ(run({"score", "--hyp", path("ref.txt"), "--metric", "bleu"}).status, cli::kUsageError);

  const auto dataset = parse_dataset(read_file(path("d.tsv")));
  std::string copy;
  for (const auto& s : dataset.records) copy += s.rendered_text() + "\n";
  write_file_atomic(path("copy.txt"), copy);
  EXPECT_EQ(run({"score", "--hyp", path("copy.txt"), "--metric", "copy", "--csw-dataset", path("d.tsv"), "--target",
                 "l2"})
                .out,
            "copy\t100.0000\n");
  EXPECT_EQ(run({"score", "--hyp", path("copy.txt"), "--metric", "replace", "--csw-dataset", path("d.tsv"),
                 "--target", "l1"})
                .out,
            "replace\t0.0000\n");
  EXPECT_EQ(run({"score", "--hyp", path("copy.txt"), "--metric", "copy"}).status, cli::kUsageError);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).status, cli::kUsageError);
  EXPECT_EQ(run({"frobnicate"}).status, cli::kUsageError);
  EXPECT_EQ(run({"score", "--hyp", path("par.tsv"), "--metric", "meteor"}).status, cli::kUsageError);
  EXPECT_EQ(run({"validate"}).status, cli::kUsageError);
  EXPECT_EQ(run({"validate", "--parallel", path("par.tsv")}).status, cli::kUsageError);
  const auto missing = run({"stats", "--dataset", path("nope.tsv")});
  EXPECT_EQ(missing.status, cli::kUsageError);
  EXPECT_NE(missing.err.find("--dataset"), std::string::npos);
  EXPECT_EQ(run({"synthesize", "--parallel", path("par.tsv")}).status, cli::kUsageError);
}

TEST_F(CliTest, HelpOnEverySubcommand) {
  const auto top = run({"--help"});
  EXPECT_EQ(top.status, cli::kSuccess);
  for (const std::string sub : {"synthesize", "stats", "score", "report", "validate"}) {
    EXPECT_NE(top.out.find(sub), std::string::npos);
    const auto o = run({sub, "--help"});
    EXPECT_EQ(o.status, cli::kSuccess) << sub;
    EXPECT_NE(o.out.find("--"), std::string::npos) << sub;
  }
}

TEST_F(CliTest, ReportWritesNothingOnFailure) {
  ASSERT_EQ(synthesize("ca.tsv").status, cli::kSuccess);
  const auto records = parse_dataset(read_file(path("ca.tsv"))).records;
  std::string en, xx;
  for (std::size_t i = 0; i < records.size(); ++i) {
    en += fmt::format("english sentence number {}\n", i);
    xx += fmt::format("frase catalana numero {}\n", i);
  }
  write_file_atomic(path("en.txt"), en);
  write_file_atomic(path("xx.txt"), xx);
  std::string cfg = "languages = ca\nmodels = sys\ndataset.ca = ca.tsv\nen.ca = en.txt\nxx.ca = xx.txt\n";
  for (const std::string s : {"csw2en", "x2en"}) cfg += fmt::format("hyp.ca.{}.sys = en.txt\n", s);
  for (const std::string s : {"csw2x", "en2x"}) cfg += fmt::format("hyp.ca.{}.sys = xx.txt\n", s);
  write_file_atomic(path("eval.cfg"), cfg);

  const auto ok = run({"report", "--config", path("eval.cfg"), "--out", path("out"), "--format", "markdown"});
  ASSERT_EQ(ok.status, cli::kSuccess) << ok.err;
  const auto md = read_file(path("out/report.md"));
  EXPECT_NE(md.find("### scores.bleu"), std::string::npos);
  EXPECT_NE(md.find("| ca | **_100.0_** |"), std::string::npos) << md;
  EXPECT_EQ(run({"report", "--config", path("eval.cfg"), "--out", path("out")}).status, cli::kSuccess);
  EXPECT_TRUE(fs::exists(path("out/report.tsv")));

  write_file_atomic(path("en.txt"), "too short\n");
  const auto bad = run({"report", "--config", path("eval.cfg"), "--out", path("out2")});
  EXPECT_EQ(bad.status, cli::kValidationFailure);
  EXPECT_FALSE(fs::exists(path("out2")));
  fs::remove(path("xx.txt"));
  EXPECT_EQ(run({"report", "--config", path("eval.cfg"), "--out", path("out2")}).status, cli::kIoError);
  EXPECT_FALSE(fs::exists(path("out2")));
}

int exit_code_of(const std::string& command) {
  const int raw = std::system((command + " >/dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = COVOSWITCH_BINARY;
  EXPECT_EQ(exit_code_of(bin + " --help"), 0);
  EXPECT_EQ(exit_code_of(bin + " stats"), 2);
  write_file_atomic(path("garbage.tsv"), "a\tb\n");
  EXPECT_EQ(exit_code_of(bin + " stats --dataset " + path("garbage.tsv")), 3);
  EXPECT_EQ(exit_code_of(bin + " validate --dataset " + path("garbage.tsv")), 1);
}

}  // namespace
}  // namespace covoswitch
