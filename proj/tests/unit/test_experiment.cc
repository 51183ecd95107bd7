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

#include <json.hpp>

#include "cfaug/error.h"
#include "cfaug/experiment.h"
#include "cfaug/fixture.h"
#include "cfaug/io.h"
#include "support.h"

namespace cfaug {
namespace {

using testing::TempDir;

const Fixture& small_fixture() {
  static const Fixture f = make_fixture(FixtureConfig::scaled(40, 3));
  return f;
}

TEST(Fixture, ParsersAgreeWithGeneratorCounts) {
  const auto& f = small_fixture();
  for (const auto* pair : {&f.train, &f.dev}) {
    const auto& ds = *pair;
    const auto& expected = pair == &f.train ? f.train_stats : f.dev_stats;
    ds.validate();
    const auto stats = dataset_stats(ds);
    EXPECT_EQ(stats.n_texts, expected.n_texts);
    EXPECT_EQ(stats.n_tokens, expected.n_tokens);
    EXPECT_EQ(stats.n_unique_words, expected.n_unique_words);
    EXPECT_EQ(stats.max_length, expected.max_length);
    EXPECT_EQ(stats.label_dist, expected.label_dist);
    const auto sentences = split_dataset(ds, AbbreviationList::bundled());
    EXPECT_EQ(sentences.size(), expected.n_sentences);
    const auto purity = purity_stats(sentences);
    EXPECT_EQ(purity.n_uniform, expected.n_uniform);
    std::map<std::string, std::size_t> by_label;
    for (const auto& s : sentences) ++by_label[s.sentence_label];
    EXPECT_EQ(by_label, expected.sentence_labels);
  }
}

TEST(Fixture, SizesFollowConfig) {
  const auto config = FixtureConfig::scaled(40, 3);
  const auto& f = small_fixture();
  EXPECT_EQ(f.train_stats.sentence_labels, config.train_sizes);
  EXPECT_EQ(f.schema.outside_label(), "O");
  EXPECT_TRUE(f.schema.is_category(kFixtureMinority));
  EXPECT_GT(f.schema.train_freq("O"), f.schema.train_freq("CLA"));
}

TEST(Fixture, DeterministicPerSeed) {
  const auto a = make_fixture(FixtureConfig::scaled(40, 3));
  const auto b = make_fixture(FixtureConfig::scaled(40, 4));
  EXPECT_EQ(serialize_token_label_file(a.train.documents),
            serialize_token_label_file(small_fixture().train.documents));
  EXPECT_NE(serialize_token_label_file(a.train.documents),
            serialize_token_label_file(b.train.documents));
  const auto j = nlohmann::json::parse(a.bookkeeping_json());
  EXPECT_TRUE(j.is_object());
}

TEST(Fixture, MajorityOutsideBaseline) {
  std::vector<std::string> gold;
  for (const auto& d : small_fixture().dev.documents) {
    gold.insert(gold.end(), d.token_labels.begin(), d.token_labels.end());
  }
  const std::vector<std::string> pred(gold.size(), "O");
  const auto r = score(gold, pred, small_fixture().schema);
  EXPECT_DOUBLE_EQ(r.per_class.at("O").recall, 100.0);
  for (const auto& c : small_fixture().schema.categories()) {
    EXPECT_EQ(r.per_class.at(c).recall, 0.0);
  }
}

TEST(Fixture, ConfigValidation) {
  auto config = FixtureConfig::scaled(40, 1);
  config.impurity_rate = 1.5;
  EXPECT_THROW(config.validate(), ConfigError);
  config = FixtureConfig::scaled(40, 1);
  config.max_doc_sentences = 0;
  EXPECT_THROW(config.validate(), ConfigError);
}

TEST(Resources, OfflineContradiction) {
  EXPECT_EQ(offline_contradiction(contradiction_prompt("Fiber helps IBS.", 2)),
            "It is simply not true that fiber helps IBS.");
  EXPECT_EQ(offline_contradiction(contradiction_prompt("IBS is rare.", 1)),
            "It is simply not true that IBS is rare.");
}

TEST(Resources, VerbPoolFirstSeenOrder) {
  const std::vector<LabeledSentence> s = {make_sentence("a", 0, "It causes pain and helps", "O"),
                                          make_sentence("b", 0, "caused by it", "O")};
  EXPECT_EQ(collect_verb_pool(s, VerbLexicon::bundled()),
            (std::vector<std::string>{"cause", "help"}));
}

TEST(Resources, OnlineNeedsEndpoint) {
  LlmSettings llm;
  llm.offline = false;
  EXPECT_THROW(ResourceBundle({}, {}, llm), ConfigError);
}

TEST(ModelConfigIni, ReadsKeysAndRejectsUnknownKind) {
  const auto ini = IniConfig::parse(
      "[model]\nkind = crf\nepochs = 3\nlearning_rate = 0.2\nl2 = 0.01\n", "m");
  const auto m = ModelConfig::from_ini(ini, "model");
  EXPECT_EQ(m.kind, ModelKind::kCrf);
  EXPECT_EQ(m.crf.epochs, 3u);
  EXPECT_DOUBLE_EQ(m.crf.learning_rate, 0.2);
  EXPECT_DOUBLE_EQ(m.crf.l2, 0.01);
  EXPECT_THROW(ModelConfig::from_ini(IniConfig::parse("[model]\nkind = svm\n", "m"), "model"),
               ConfigError);
}

struct Workspace {
  TempDir dir;
  Workspace() {
    const auto& f = small_fixture();
    write_file_atomic(dir / "train.tsv", serialize_token_label_file(f.train.documents));
    write_file_atomic(dir / "dev.tsv", serialize_token_label_file(f.dev.documents));
    write_file_atomic(dir / "schema.ini", f.schema.serialize());
  }
  ExperimentConfig config(const std::string& extra) const {
    const auto ini = IniConfig::parse(
        "[data]\ntrain = train.tsv\ndev = dev.tsv\nschema = schema.ini\n" + extra, "exp");
    return ExperimentConfig::from_ini(ini, dir.path());
  }
};

TEST(ExperimentConfigIni, ResolvesPathsAndValidates) {
  Workspace ws;
  const auto c = ws.config("[augment]\nmethods = none, AEDA\n[run]\nseed = 3\n");
  EXPECT_EQ(c.train, ws.dir / "train.tsv");
  EXPECT_EQ(c.output_dir, ws.dir / "results");
  EXPECT_EQ(c.methods, (std::vector<std::string>{"none", "AEDA"}));
  c.validate();
  EXPECT_THROW(ws.config("[augment]\nmethods = none\n"), ConfigError);  // no seed
  EXPECT_THROW(ws.config("[augment]\nmethods = Bogus\n[run]\nseed = 1\n").validate(),
               ConfigError);
  EXPECT_THROW(ws.config("[augment]\nmethods = AEDA, AEDA\n[run]\nseed = 1\n").validate(),
               ConfigError);
  EXPECT_THROW(
      ws.config("[augment]\nmethods = BAT\n[model]\nkind = crf\n[run]\nseed = 1\n").validate(),
      ConfigError);
  auto missing = c;
  missing.dev = ws.dir / "nope.tsv";
  EXPECT_THROW(missing.validate(), IoError);
}

TEST(Experiment, RunsEveryMethodDeterministically) {
  Workspace ws;
  auto c = ws.config(
      "[augment]\nmethods = none, AEDA, VR_Random, VR_Antonym, ER, LLM, BAT\n"
      "n_samples = 10\n[model]\nepochs = 3\ndim = 8\n[run]\nseed = 5\n");
  c.validate();
  const auto first = run_experiment(c);
  ASSERT_EQ(first.reports.size(), 7u);
  EXPECT_EQ(first.augmented.at("AEDA"), 10u);
  EXPECT_EQ(first.augmented.at("none"), 0u);
  EXPECT_EQ(first.comparison.methods.size(), 7u);
  const auto again = run_experiment(c);
  for (const auto& [m, r] : first.reports) EXPECT_EQ(report_json(r), report_json(again.reports.at(m)));

  write_experiment_outputs(first, c.output_dir);
  for (const auto* name : {"comparison.json", "comparison.txt", "report_AEDA.json",
                           "report_none.txt"}) {
    EXPECT_TRUE(std::filesystem::exists(c.output_dir / name)) << name;
  }
  EXPECT_EQ(parse_report_json(read_file(c.output_dir / "report_BAT.json"), "r"),
            first.reports.at("BAT"));
}

TEST(Experiment, AdversarialKeysOnlyAffectBat) {
  Workspace ws;
  const std::string tail = "n_samples = 10\n[model]\nepochs = 3\ndim = 8\n";
  auto plain = ws.config("[augment]\nmethods = none, AEDA, BAT\n" + tail + "[run]\nseed = 5\n");
  auto adv = ws.config("[augment]\nmethods = none, AEDA, BAT\n" + tail +
                       "epsilon = 0.2\nadv_weight = 0.7\n[run]\nseed = 5\n");
  const auto a = run_experiment(plain);
  const auto b = run_experiment(adv);
  EXPECT_EQ(report_json(a.reports.at("none")), report_json(b.reports.at("none")));
  EXPECT_EQ(report_json(a.reports.at("AEDA")), report_json(b.reports.at("AEDA")));
  EXPECT_NE(report_json(a.reports.at("BAT")), report_json(b.reports.at("BAT")));
}

TEST(Experiment, CrfModelPath) {
  Workspace ws;
  auto c = ws.config("[augment]\nmethods = none\n[model]\nkind = crf\nepochs = 2\n[run]\nseed = 1\n");
  const auto result = run_experiment(c);
  const auto& r = result.reports.at("none");
  EXPECT_EQ(r.n_tokens, dataset_stats(small_fixture().dev).n_tokens);
  EXPECT_GT(r.macro_f1, 0.0);
}

}  // namespace
}  // namespace cfaug
