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

#include <cmath>

#include "cfaug/error.h"
#include "cfaug/rng.h"
#include "cfaug/textclf.h"

namespace cfaug::textclf {
namespace {

TextClassifier random_model(std::uint64_t seed) {
  const std::vector<std::string> vocab = {"good", "bad", "fine", "awful", "meh"};
  auto table = EmbeddingTable::random(vocab, 4, seed, 0.5);
  TextClassifier model({"neg", "neu", "pos"}, std::move(table));
  Rng rng(seed + 1);
  for (double& w : model.classifier().weights()) w = rng.gaussian(0, 0.7);
  for (double& b : model.classifier().bias()) b = rng.gaussian(0, 0.3);
  return model;
}

void check_gradient(const TextClassifier& model, const ClfExample& ex, const AdvConfig& adv) {
  const auto analytic = model.gradient(ex, adv);
  auto params = model.parameters();
  ASSERT_EQ(analytic.size(), params.size());
  TextClassifier probe = model;
  const double h = 1e-6;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    probe.set_parameters(params);
    const double up = probe.loss(ex, adv);
    params[i] = saved - h;
    probe.set_parameters(params);
    const double down = probe.loss(ex, adv);
    params[i] = saved;
    EXPECT_NEAR(analytic[i], (up - down) / (2 * h), 1e-6) << "param " << i;
  }
}

TEST(TextClf, CleanGradientMatchesFiniteDifferences) {
  const auto model = random_model(3);
  check_gradient(model, {{"good", "fine", "good", "unseen"}, 2}, {});
}

TEST(TextClf, AdversarialGradientMatchesFiniteDifferences) {
  const auto model = random_model(5);
  check_gradient(model, {{"bad", "meh"}, 0}, {0.05, 0.5});
  check_gradient(model, {{"awful"}, 1}, {0.2, 1.0});
}

TEST(TextClf, AdversarialLossReducesToCleanLoss) {
  const auto model = random_model(8);
  const ClfExample ex{{"good", "bad"}, 1};
  const double clean = model.loss(ex, {});
  EXPECT_EQ(model.loss(ex, {0.0, 0.7}), clean);
  EXPECT_EQ(model.loss(ex, {0.3, 0.0}), clean);
  EXPECT_GT(model.loss(ex, {0.3, 1.0}), clean);
}

TEST(Fgsm, StepProperties) {
  const std::vector<double> x = {1.0, -2.0, 0.5, 3.0};
  const std::vector<double> g = {0.2, -7.0, 0.0, 1e-12};
  const auto y = fgsm_perturb(x, g, 0.1);
  EXPECT_DOUBLE_EQ(y[0], 1.1);
  EXPECT_DOUBLE_EQ(y[1], -2.1);
  EXPECT_DOUBLE_EQ(y[2], 0.5);
  EXPECT_DOUBLE_EQ(y[3], 3.1);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LE(std::abs(y[i] - x[i]), 0.1 + 1e-15);
}

TEST(Fgsm, StepIncreasesLossToFirstOrder) {
  const auto model = random_model(11);
  const std::vector<std::string> tokens = {"good", "meh"};
  const auto x = embed_sentence(tokens, model.table());
  const auto lg = cross_entropy(model.classifier(), x, 2);
  const auto y = fgsm_perturb(x, lg.d_input, 1e-3);
  EXPECT_GT(cross_entropy(model.classifier(), y, 2).loss, lg.loss);
}

TEST(Softmax, StableAndNormalized) {
  const std::vector<double> logits = {1000.0, 1001.0, -1000.0};
  const auto p = softmax(logits);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
  EXPECT_NEAR(p[1] / p[0], std::exp(1.0), 1e-9);
  EXPECT_EQ(p[2], 0.0);
}

TEST(Embedding, MeanOfRowsAndOov) {
  EmbeddingTable table(2);
  const auto a = table.add("a");
  const auto b = table.add("b");
  table.row(a)[0] = 1.0;
  table.row(b)[1] = 4.0;
  table.row(0)[0] = 10.0;
  const std::vector<std::string> tokens = {"a", "b", "zzz"};
  const auto x = embed_sentence(tokens, table);
  EXPECT_DOUBLE_EQ(x[0], 11.0 / 3.0);
  EXPECT_DOUBLE_EQ(x[1], 4.0 / 3.0);
  EXPECT_EQ(table.row_of("zzz"), 0u);
  EXPECT_EQ(table.token(0), kOovToken);
  EXPECT_EQ(embed_sentence({}, table), (std::vector<double>{0.0, 0.0}));
  const auto back = EmbeddingTable::parse(table.serialize(), "e");
  EXPECT_EQ(back.serialize(), table.serialize());
}

TEST(Embedding, ParseRejectsRaggedRows) {
  EXPECT_THROW(EmbeddingTable::parse("a 1 2\nb 1\n", "e"), ParseError);
}

std::vector<ClfExample> separable_set() {
  std::vector<ClfExample> out;
  Rng rng(2);
  const std::vector<std::string> pos = {"great", "love", "excellent"};
  const std::vector<std::string> neg = {"terrible", "hate", "awful"};
  const std::vector<std::string> filler = {"the", "movie", "was", "it"};
  for (std::size_t i = 0; i < 80; ++i) {
    const bool positive = i % 2 == 0;
    std::vector<std::string> tokens;
    for (int j = 0; j < 3; ++j) tokens.push_back(filler[rng.below(filler.size())]);
    tokens.push_back((positive ? pos : neg)[rng.below(3)]);
    out.push_back({tokens, positive ? 1u : 0u});
  }
  return out;
}

TEST(Training, SeparableToySetIsLearned) {
  const auto data = separable_set();
  ClfTrainConfig config;
  config.dim = 8;
  for (const AdvConfig adv : {AdvConfig{}, AdvConfig{0.05, 0.5}}) {
    std::vector<double> losses;
    const auto model = train_classifier(data, {"neg", "pos"}, config, adv, nullptr,
                                        [&](std::size_t, double l) { losses.push_back(l); });
    ASSERT_EQ(losses.size(), config.epochs);
    EXPECT_LT(losses.back(), losses.front());
    std::size_t correct = 0;
    for (const auto& ex : data) correct += model.predict(ex.tokens) == ex.label;
    EXPECT_EQ(correct, data.size());
    const std::vector<std::string> unseen = {"i", "love", "it"};
    EXPECT_EQ(model.predict(unseen), 1u);
  }
}

TEST(Training, DeterministicAndSerializable) {
  const auto data = separable_set();
  ClfTrainConfig config;
  config.dim = 4;
  config.epochs = 3;
  const auto a = train_classifier(data, {"neg", "pos"}, config);
  const auto b = train_classifier(data, {"neg", "pos"}, config);
  EXPECT_EQ(a.serialize(), b.serialize());
  const auto c = TextClassifier::parse(a.serialize(), "m");
  EXPECT_EQ(c.serialize(), a.serialize());
  for (const auto& ex : data) EXPECT_EQ(c.probabilities(ex.tokens), a.probabilities(ex.tokens));
}

TEST(Training, FrozenEmbeddingsStayPut) {
  const auto data = separable_set();
  ClfTrainConfig config;
  config.dim = 4;
  config.epochs = 2;
  config.train_embeddings = false;
  std::vector<std::string> words;
  for (const auto& ex : data) words.insert(words.end(), ex.tokens.begin(), ex.tokens.end());
  const auto initial = EmbeddingTable::random(words, 4, 9);
  const auto model = train_classifier(data, {"neg", "pos"}, config, {}, &initial);
  EXPECT_EQ(model.table().serialize(), initial.serialize());
}

TEST(Training, Errors) {
  auto data = separable_set();
  for (auto& ex : data) ex.label = 0;
  EXPECT_THROW(train_classifier(data, {"neg", "pos"}, ClfTrainConfig{}), ConfigError);
  EXPECT_THROW((AdvConfig{-0.1, 0.5}.validate()), ConfigError);
  EXPECT_THROW((AdvConfig{0.1, 1.5}.validate()), ConfigError);
  ClfTrainConfig bad;
  bad.dim = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  ClfTrainConfig wild;
  wild.learning_rate = 1e300;
  wild.init_stddev = 1e150;
  wild.dim = 4;
  EXPECT_THROW(train_classifier(separable_set(), {"neg", "pos"}, wild), DivergenceError);
}

}  // namespace
}  // namespace cfaug::textclf
