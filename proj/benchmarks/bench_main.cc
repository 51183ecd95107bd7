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

#include <benchmark/benchmark.h>

#include "cfaug/augment.h"
#include "cfaug/crf.h"
#include "cfaug/eval.h"
#include "cfaug/experiment.h"
#include "cfaug/fixture.h"
#include "cfaug/textclf.h"

namespace {

using namespace cfaug;

struct Corpus {
  Fixture fixture;
  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> dev;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out{make_fixture(FixtureConfig::scaled(10, kBundledFixtureSeed)), {}, {}};
    out.train = split_dataset(out.fixture.train, AbbreviationList::bundled());
    out.dev = split_dataset(out.fixture.dev, AbbreviationList::bundled());
    return out;
  }();
  return c;
}

void BM_TokenizeAndSplit(benchmark::State& state) {
  const auto& docs = corpus().fixture.train.documents;
  const auto abbreviations = AbbreviationList::bundled();
  std::size_t tokens = 0;
  for (auto _ : state) {
    for (const auto& d : docs) {
      auto t = tokenize(d.text);
      tokens += t.size();
      benchmark::DoNotOptimize(t);
    }
    benchmark::DoNotOptimize(split_dataset(corpus().fixture.train, abbreviations));
  }
  state.counters["tokens/s"] =
      benchmark::Counter(static_cast<double>(tokens), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_TokenizeAndSplit);

void BM_DetectVerb(benchmark::State& state) {
  const auto lexicon = VerbLexicon::bundled();
  const std::vector<std::string> words = {"caused", "have", "banana", "writes", "is", "running"};
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(detect_verb(w, lexicon));
  }
}
BENCHMARK(BM_DetectVerb);

crf::CrfModel random_crf(std::size_t labels, std::size_t attributes, Rng& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels; ++i) names.push_back("L" + std::to_string(i));
  crf::CrfModel model(names);
  for (std::size_t a = 0; a < attributes; ++a) model.add_attribute("a" + std::to_string(a));
  for (double& w : model.weights()) w = rng.gaussian(0, 1);
  return model;
}

crf::Instance random_instance(std::size_t length, std::size_t attributes, Rng& rng) {
  crf::Instance inst;
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<std::size_t> attrs;
    for (int k = 0; k < 14; ++k) attrs.push_back(rng.below(attributes));
    inst.attributes.push_back(attrs);
  }
  return inst;
}

void BM_CrfForwardBackward(benchmark::State& state) {
  Rng rng(1);
  const auto model = random_crf(5, 5000, rng);
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 5000, rng);
  std::vector<std::size_t> gold(inst.size(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(crf::nll_and_gradient(model, inst, gold));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrfForwardBackward)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);

void BM_CrfViterbi(benchmark::State& state) {
  Rng rng(2);
  const auto model = random_crf(5, 5000, rng);
  const auto inst = random_instance(static_cast<std::size_t>(state.range(0)), 5000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(crf::viterbi(model, inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrfViterbi)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);

void BM_CrfTrainEpoch(benchmark::State& state) {
  crf::TrainConfig config;
  config.epochs = 1;
  for (auto _ : state) {
    crf::CrfTagger tagger(corpus().fixture.schema.labels());
    benchmark::DoNotOptimize(tagger.fit(corpus().train, config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus().train.size()));
}
BENCHMARK(BM_CrfTrainEpoch)->Unit(benchmark::kMillisecond);

void BM_TextClfTrainEpoch(benchmark::State& state) {
  const auto& schema = corpus().fixture.schema;
  std::vector<textclf::ClfExample> examples;
  for (const auto& s : corpus().train) {
    textclf::ClfExample ex;
    for (const auto& t : s.tokens) ex.tokens.push_back(t.text);
    ex.label = schema.require_index(s.sentence_label);
    examples.push_back(std::move(ex));
  }
  textclf::ClfTrainConfig config;
  config.epochs = 1;
  const textclf::AdvConfig adv{state.range(0) != 0 ? 0.05 : 0.0, state.range(0) != 0 ? 0.5 : 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(train_classifier(examples, schema.labels(), config, adv));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(examples.size()));
}
BENCHMARK(BM_TextClfTrainEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Augment(benchmark::State& state) {
  const auto method = static_cast<AugmentMethod>(state.range(0));
  ResourceBundle resources({}, corpus().train, {});
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 400;
  config.method = method;
  config.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(augment_minority(corpus().train, config, resources.view()));
  }
  state.SetLabel(std::string(method_name(method)));
  state.SetItemsProcessed(state.iterations() * 400);
}
BENCHMARK(BM_Augment)
    ->ArgsProduct({{static_cast<int>(AugmentMethod::kAeda), static_cast<int>(AugmentMethod::kVrRandom),
                    static_cast<int>(AugmentMethod::kEr), static_cast<int>(AugmentMethod::kLlm)},
                   {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_Score(benchmark::State& state) {
  std::vector<std::string> gold, pred;
  for (const auto& d : corpus().fixture.dev.documents) {
    gold.insert(gold.end(), d.token_labels.begin(), d.token_labels.end());
  }
  pred = gold;
  Rng rng(3);
  for (auto& p : pred) {
    if (rng.below(5) == 0) p = "O";
  }
  for (auto _ : state) benchmark::DoNotOptimize(score(gold, pred, corpus().fixture.schema));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gold.size()));
}
BENCHMARK(BM_Score);

}  // namespace

BENCHMARK_MAIN();
