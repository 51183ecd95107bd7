// Copyright 2026 The cfaug Authors.
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cfaug/error.h"
#include "cfaug_tools/commands.h"
#include "support.h"

namespace cfaug::cli {
namespace {

using cfaug::testing::slurp;
using cfaug::testing::spit;
using cfaug::testing::TempDir;

int guarded_code(const std::function<int()>& body) {
  std::ostringstream out, err;
  return guarded({out, err}, body);
}

TEST(ExitCodes, LibraryErrorsMapToCodes) {
  EXPECT_EQ(guarded_code([] { return kExitOk; }), 0);
  EXPECT_EQ(guarded_code([]() -> int { throw IoError("x"); }), 2);
  EXPECT_EQ(guarded_code([]() -> int { throw ParseError("f", 1, "x"); }), 2);
  EXPECT_EQ(guarded_code([]() -> int { throw SchemaError("x"); }), 2);
  EXPECT_EQ(guarded_code([]() -> int { throw ValidationError("x"); }), 2);
  EXPECT_EQ(guarded_code([]() -> int { throw AugmentationError("x"); }), 3);
  EXPECT_EQ(guarded_code([]() -> int { throw DivergenceError("x"); }), 4);
  EXPECT_EQ(guarded_code([]() -> int { throw ConfigError("x"); }), 1);
}

TEST(ExitCodes, MessageGoesToStderr) {
  std::ostringstream out, err;
  guarded({out, err}, []() -> int { throw ParseError("in.tsv", 4, "bad token"); });
  EXPECT_TRUE(out.str().empty());
  EXPECT_NE(err.str().find("in.tsv:4"), std::string::npos);
}

// Runs the installed tool and returns its exit status.
int run(const std::string& args, const TempDir& dir) {
  const std::string cmd = std::string(CFAUG_BINARY) + " " + args + " > " +
                          (dir / "stdout.txt").string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(run("make-fixture --seed 3 --divisor 40 --out-dir " + dir.path().string(), dir), 0);
  }
  std::string p(const std::string& name) const { return (dir / name).string(); }
  TempDir dir;
};

TEST_F(Pipeline, EndToEnd) {
  const std::string data = " --train " + p("train.tsv") + " --schema " + p("schema.ini");
  ASSERT_EQ(run("stats " + p("train.tsv") + " --format json", dir), 0);
  const auto stats = nlohmann::json::parse(slurp(dir / "stdout.txt"));
  EXPECT_GT(stats["n_tokens"].get<int>(), 0);

  ASSERT_EQ(run("split " + p("train.tsv") + " --schema " + p("schema.ini") + " --output " +
                    p("sentences.tsv"),
                dir),
            0);
  EXPECT_TRUE(std::filesystem::exists(dir / "sentences.tsv"));

  ASSERT_EQ(run("build-lexicons" + data + " --out-dir " + p("lex"), dir), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "lex" / "entities.tsv"));

  ASSERT_EQ(run("augment" + data + " --method ER --entities " + p("lex/entities.tsv") +
                    " --target CLA --n 5 --seed 9 --output " + p("aug.tsv"),
                dir),
            0);
  const auto manifest = slurp(dir / "aug.tsv.manifest.jsonl");
  EXPECT_EQ(std::count(manifest.begin(), manifest.end(), '\n'), 5);
  const auto corpus = slurp(dir / "aug.tsv");

  // Same seed, different thread count: identical bytes.
  ASSERT_EQ(run("augment" + data + " --method ER --entities " + p("lex/entities.tsv") +
                    " --target CLA --n 5 --seed 9 --threads 3 --output " + p("aug2.tsv"),
                dir),
            0);
  EXPECT_EQ(slurp(dir / "aug2.tsv"), corpus);

  ASSERT_EQ(run("train-clf" + data + " --augmented " + p("aug.tsv") +
                    " --epochs 2 --seed 1 --model-out " + p("clf.model"),
                dir),
            0);
  ASSERT_EQ(run("train-crf" + data + " --epochs 2 --seed 1 --model-out " + p("crf.model"), dir),
            0);
  ASSERT_EQ(run("eval --model " + p("clf.model") + " --data " + p("dev.tsv") + " --schema " +
                    p("schema.ini") + " --output " + p("report_clf.json"),
                dir),
            0);
  ASSERT_EQ(run("eval --model " + p("crf.model") + " --data " + p("dev.tsv") + " --schema " +
                    p("schema.ini") + " --output " + p("report_crf.json"),
                dir),
            0);
  ASSERT_EQ(run("compare " + p("report_clf.json") + " " + p("report_crf.json") +
                    " --format json",
                dir),
            0);
  const auto cmp = nlohmann::json::parse(slurp(dir / "stdout.txt"));
  EXPECT_EQ(cmp["rows"].size(), 2u);
}

TEST_F(Pipeline, RunExperimentWritesOutputs) {
  ASSERT_EQ(run("run-experiment --config " + p("experiment.ini") + " --output-dir " + p("out"),
                dir),
            0)
      << slurp(dir / "stderr.txt");
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "comparison.txt"));
}

TEST_F(Pipeline, ErrorExitCodes) {
  const std::string data = " --train " + p("train.tsv") + " --schema " + p("schema.ini");
  // Usage and configuration problems.
  EXPECT_EQ(run("no-such-command", dir), 1);
  EXPECT_EQ(run("augment" + data + " --method AEDA --target CLA", dir), 1);  // no seed
  // Missing or malformed input.
  EXPECT_EQ(run("stats " + p("missing.tsv"), dir), 2);
  spit(dir / "broken.tsv", "a\tO\nb\n");
  EXPECT_EQ(run("stats " + p("broken.tsv"), dir), 2);
  EXPECT_NE(slurp(dir / "stderr.txt").find("broken.tsv:2"), std::string::npos);
  spit(dir / "bad_label.tsv", "a\tZZZ\n");
  EXPECT_EQ(run("stats " + p("bad_label.tsv") + " --schema " + p("schema.ini"), dir), 2);
  // Nothing could be augmented: no verbs at all.
  spit(dir / "noverbs.tsv", "banana\tCLA\n.\tCLA\n\napple\tO\n");
  EXPECT_EQ(run("augment --train " + p("noverbs.tsv") + " --schema " + p("schema.ini") +
                    " --method VR_Random --target CLA --n 2 --seed 1 --output " + p("x.tsv"),
                dir),
            3);
  // Diverging training.
  EXPECT_EQ(run("train-crf" + data + " --epochs 2 --seed 1 --learning-rate 1e308 --model-out " +
                    p("bad.model"),
                dir),
            4);
}

}  // namespace
}  // namespace cfaug::cli
