/*
 * Copyright (C) 2026 The Happiness Classifier Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace happiness::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "happiness");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("happiness_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // A small synthetic cohort, 40 posts per user.
  std::string make_cohort(const std::string& sub) {
    const auto r = run_cli({"synth", "--n-hh", "30", "--n-lh", "26", "--posts-per-user", "40",
                            "--seed", "5", "--out", path(sub)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return (dir_ / sub / "cohort.jsonl").string();
  }

  fs::path dir_;
};

TEST_F(CliTest, FixtureExtractHasAllColumns) {
  const std::string records = std::string(HAPPINESS_TEST_DATA) + "/fixture_records.jsonl";
  const auto r = run_cli({"extract", "--records", records, "--min-posts", "0", "--out", path("x")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("x 111 columns"), std::string::npos) << r.out;
  const std::string csv = slurp(dir_ / "x" / "features.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.begin() + csv.find('\n'), ','), 112);
  EXPECT_TRUE(fs::exists(dir_ / "x" / "codebook.json"));
}

TEST_F(CliTest, MissingLexiconIsAnInputError) {
  const std::string records = std::string(HAPPINESS_TEST_DATA) + "/fixture_records.jsonl";
  const auto r = run_cli({"extract", "--records", records, "--lexicon", path("missing.dic"),
                          "--out", path("x")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("missing.dic"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, kExitInput);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInput);
  EXPECT_EQ(run_cli({"analyze", "--alpha", "2"}).code, kExitInput);
  EXPECT_EQ(run_cli({"ingest"}).code, kExitInput);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, BadRecordReportsLine) {
  std::ofstream(path("bad.jsonl")) << "{\"user_id\": 3}\n";
  const auto r = run_cli({"ingest", "--records", path("bad.jsonl"), "--out", path("o")});
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, SingleClassMatrixCannotBeAnalyzed) {
  std::ofstream(path("one.csv")) << "user_id,L.work,label\na,1,HH\nb,2,HH\n";
  const auto r = run_cli({"analyze", "--matrix", path("one.csv"), "--out", path("o")});
  EXPECT_EQ(r.code, kExitInput) << r.err;
}

TEST_F(CliTest, PipelineRerunIsByteIdentical) {
  const std::string records = make_cohort("c");
  const std::vector<std::string> args{"pipeline", "--records", records, "--min-posts", "40",
                                      "--k", "5"};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", path("a")});
  second.insert(second.end(), {"--out", path("b")});
  const auto ra = run_cli(first);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  const auto rb = run_cli(second);
  ASSERT_EQ(rb.code, kExitOk) << rb.err;
  EXPECT_EQ(ra.out, rb.out);

  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    const fs::path other = dir_ / "b" / entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
    ++files;
  }
  EXPECT_EQ(files, 10u);
  const std::string table = slurp(dir_ / "a" / "ablation.txt");
  for (const char* row : {"L ", "B ", "L+B ", "L+B+D "}) {
    EXPECT_NE(table.find(row), std::string::npos) << row;
  }

  const auto dot = run_cli({"export-tree", "--tree", path("a/tree.json"), "--format", "dot"});
  ASSERT_EQ(dot.code, kExitOk) << dot.err;
  EXPECT_EQ(dot.out, slurp(dir_ / "a" / "tree.dot"));
  EXPECT_EQ(run_cli({"export-tree", "--tree", path("a/tree.json"), "--format", "svg"}).code,
            kExitInput);
}

TEST_F(CliTest, StagesMatchPipeline) {
  const std::string records = make_cohort("c");
  ASSERT_EQ(run_cli({"pipeline", "--records", records, "--min-posts", "40", "--k", "5", "--out",
                     path("p")})
                .code,
            kExitOk);
  ASSERT_EQ(run_cli({"extract", "--records", records, "--min-posts", "40", "--out", path("s")}).code,
            kExitOk);
  ASSERT_EQ(run_cli({"analyze", "--out", path("s")}).code, kExitOk);
  ASSERT_EQ(run_cli({"train", "--out", path("s")}).code, kExitOk);
  ASSERT_EQ(run_cli({"evaluate", "--k", "5", "--out", path("s")}).code, kExitOk);
  for (const char* f : {"features.csv", "selection.csv", "tree.json", "ablation.csv"}) {
    EXPECT_EQ(slurp(dir_ / "p" / f), slurp(dir_ / "s" / f)) << f;
  }
}

}  // namespace
}  // namespace happiness::cli
