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

#include <atomic>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "cfaug/augment.h"
#include "cfaug/error.h"
#include "support.h"

namespace cfaug {
namespace {

using testing::claim_sentence;
using testing::ScriptedChoices;

const VerbLexicon& lexicon() {
  static const VerbLexicon lex = VerbLexicon::bundled();
  return lex;
}

const AntonymLexicon& antonyms() {
  static const AntonymLexicon ant = AntonymLexicon::bundled();
  return ant;
}

std::vector<std::string> words(const LabeledSentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.text);
  return out;
}

void expect_consistent(const LabeledSentence& s) {
  ASSERT_EQ(s.tokens.size(), s.token_labels.size());
  std::size_t prev_end = 0;
  for (const auto& t : s.tokens) {
    ASSERT_LE(prev_end, t.char_start);
    ASSERT_LE(t.char_end, s.text.size());
    EXPECT_EQ(s.text.substr(t.char_start, t.char_end - t.char_start), t.text);
    prev_end = t.char_end;
  }
}

// Golden edits of one claim sentence, one per operator.

TEST(Golden, Aeda) {
  ScriptedChoices choices{0, 7, 4};
  const auto out = aeda(claim_sentence(), choices);
  EXPECT_TRUE(choices.exhausted());
  EXPECT_EQ(choices.requested(), (std::vector<std::uint64_t>{3, 10, 6}));
  EXPECT_EQ(out.sentence.text, "80% of people diagnosed with IBS ! have Sibo.");
  EXPECT_EQ(out.insertions, (std::vector<std::size_t>{7}));
  EXPECT_EQ(out.sentence.token_labels, std::vector<std::string>(11, "CLA"));
  expect_consistent(out.sentence);
}

TEST(Golden, VerbReplaceRandom) {
  const std::vector<std::string> pool = {"cause", "have"};
  ScriptedChoices choices{1, 0};
  const auto out = verb_replace(claim_sentence(), lexicon(), pool, antonyms(),
                                VerbMode::kRandom, choices);
  ASSERT_TRUE(out.has_value());
  // Eligible verbs: "diagnosed" and "have"; "have" only has "cause".
  EXPECT_EQ(choices.requested(), (std::vector<std::uint64_t>{2, 1}));
  EXPECT_EQ(render_tokens(out->sentence.tokens), "80 % of people diagnosed with IBS cause Sibo .");
  EXPECT_EQ(out->tense, Tense::kBase);
  EXPECT_EQ(out->original_tokens, (std::vector<std::string>{"have"}));
  expect_consistent(out->sentence);
}

TEST(Golden, VerbReplaceRandomKeepsTense) {
  const std::vector<std::string> pool = {"cause"};
  ScriptedChoices choices{0, 0};
  const auto out = verb_replace(claim_sentence(), lexicon(), pool, antonyms(),
                                VerbMode::kRandom, choices);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->sentence.text, "80% of people caused with IBS have Sibo.");
  EXPECT_EQ(out->tense, Tense::kPast);
}

TEST(Golden, VerbReplaceAntonym) {
  ScriptedChoices choices{0, 0};
  const auto out = verb_replace(claim_sentence(), lexicon(), {}, antonyms(),
                                VerbMode::kAntonym, choices);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(choices.requested(), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(render_tokens(out->sentence.tokens),
            "80 % of people diagnosed with IBS abstain Sibo .");
}

TEST(Golden, EntityReplace) {
  const auto dict = EntityDictionary::parse(
      "PERCENT\t80 %\nPERCENT\t100 percent\nPROPER\tIBS\nPROPER\tSibo\n", "d");
  ScriptedChoices choices{0, 0};
  const auto out = entity_replace(claim_sentence(), PatternEntityAnnotator{}, dict, choices);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(choices.requested(), (std::vector<std::uint64_t>{3, 1}));
  EXPECT_EQ(out->sentence.text, "100 percent of people diagnosed with IBS have Sibo.");
  EXPECT_EQ(out->replaced, (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(out->replacement_tokens, (std::vector<std::string>{"100", "percent"}));
  expect_consistent(out->sentence);
}

TEST(Golden, Llm) {
  const std::string reply =
      "Only a small fraction of those diagnosed with IBS actually have Small Intestinal "
      "Bacterial Overgrowth (SIBO).";
  MockLlmClient client(reply);
  const auto out = llm_augment(claim_sentence(), client, 1);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->sentence.text, reply);
  EXPECT_EQ(out->sentence.sentence_label, "CLA");
  EXPECT_EQ(client.prompts()[0], contradiction_prompt(testing::kClaimText, 1));
  for (const auto& l : out->sentence.token_labels) EXPECT_EQ(l, "CLA");
}

TEST(Failures, ReportedReasons) {
  AugmentFailure why{};
  ScriptedChoices none{};
  const auto plain = make_sentence("d", 0, "the banana .", "CLA");
  EXPECT_FALSE(verb_replace(plain, lexicon(), std::vector<std::string>{"cause"}, antonyms(),
                            VerbMode::kRandom, none, &why));
  EXPECT_EQ(why, AugmentFailure::kNoVerb);
  const auto no_antonym = make_sentence("d", 0, "they diagnosed it", "CLA");
  EXPECT_FALSE(verb_replace(no_antonym, lexicon(), {}, antonyms(), VerbMode::kAntonym, none, &why));
  EXPECT_EQ(why, AugmentFailure::kNoAntonym);
  const auto dict = EntityDictionary::parse("PROPER\tIBS\n", "d");
  EXPECT_FALSE(entity_replace(plain, PatternEntityAnnotator{}, dict, none, &why));
  EXPECT_EQ(why, AugmentFailure::kNoEntity);
  const auto only_ibs = make_sentence("d", 0, "I have IBS", "CLA");
  EXPECT_FALSE(entity_replace(only_ibs, PatternEntityAnnotator{}, dict, none, &why));
  EXPECT_EQ(why, AugmentFailure::kNoAlternative);
  EXPECT_THROW(entity_replace(claim_sentence(), PatternEntityAnnotator{}, dict, none),
               ConfigError);
  MockLlmClient empty(" ");
  EXPECT_FALSE(llm_augment(plain, empty, 1, {}, &why));
  EXPECT_EQ(why, AugmentFailure::kEmptyCompletion);
  MockLlmClient down("x");
  down.fail_next(10);
  EXPECT_FALSE(llm_augment(plain, down, 1, RetryPolicy{2, {}}, &why));
  EXPECT_EQ(why, AugmentFailure::kTransport);
}

TEST(AedaProperty, SourceTokensSurviveInOrder) {
  Rng rng(11);
  for (std::size_t trial = 0; trial < 300; ++trial) {
    const auto s = testing::random_sentence(rng, "CLA", trial);
    const auto out = aeda(s, rng);
    const std::size_t n = s.tokens.size();
    const std::size_t k = out.insertions.size();
    ASSERT_GE(k, 1u);
    ASSERT_LE(k, std::max<std::size_t>(1, n / 3));
    ASSERT_EQ(out.sentence.tokens.size(), n + k);
    std::vector<std::string> kept;
    for (std::size_t i = 0, j = 0; i < out.sentence.tokens.size(); ++i) {
      if (j < k && out.insertions[j] == i) {
        const auto& mark = out.sentence.tokens[i].text;
        EXPECT_NE(std::find(kAedaMarks.begin(), kAedaMarks.end(), mark), kAedaMarks.end());
        ++j;
      } else {
        kept.push_back(out.sentence.tokens[i].text);
      }
    }
    EXPECT_EQ(kept, words(s));
    expect_consistent(out.sentence);
  }
}

TEST(VerbProperty, OneTokenChangedTenseKept) {
  Rng rng(12);
  const std::vector<std::string> pool = {"cause", "help", "stop", "reduce", "write", "run", "eat"};
  std::size_t produced = 0;
  for (std::size_t trial = 0; trial < 400; ++trial) {
    const auto s = testing::random_sentence(rng, "CLA", trial);
    const auto out =
        verb_replace(s, lexicon(), pool, antonyms(), VerbMode::kRandom, rng);
    if (!out) continue;
    ++produced;
    ASSERT_EQ(out->sentence.tokens.size(), s.tokens.size());
    std::size_t changed = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (out->sentence.tokens[i].text == s.tokens[i].text) continue;
      ++changed;
      const auto before = detect_verb(s.tokens[i].text, lexicon());
      const auto after = detect_verb(out->sentence.tokens[i].text, lexicon());
      ASSERT_TRUE(before && after);
      EXPECT_EQ(before->tense, after->tense);
      EXPECT_NE(before->base, after->base);
    }
    EXPECT_EQ(changed, 1u);
    expect_consistent(out->sentence);
  }
  EXPECT_GT(produced, 100u);
}

TEST(EntityProperty, ReplacementComesFromSameCategory) {
  Rng rng(13);
  std::vector<LabeledSentence> corpus;
  for (std::size_t i = 0; i < 50; ++i) corpus.push_back(testing::random_sentence(rng, "CLA", i));
  const PatternEntityAnnotator annotator;
  const auto dict = EntityDictionary::build(corpus, annotator);
  for (const auto& s : corpus) {
    const auto out = entity_replace(s, annotator, dict, rng);
    if (!out) continue;
    ASSERT_TRUE(out->replaced.has_value());
    bool found = false;
    for (const auto& span : annotator.annotate(s)) {
      if (span.token_start != out->replaced->first) continue;
      for (const auto& e : dict.entities(span.category)) found |= e == out->replacement_tokens;
      EXPECT_NE(out->replacement_tokens, out->original_tokens);
    }
    EXPECT_TRUE(found);
    expect_consistent(out->sentence);
  }
}

std::vector<LabeledSentence> mixed_corpus(std::size_t n) {
  Rng rng(21);
  std::vector<LabeledSentence> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(testing::random_sentence(rng, i % 3 == 0 ? "CLA" : "O", i));
  }
  return out;
}

AugmentResources verb_resources() {
  AugmentResources r;
  r.lexicon = &lexicon();
  r.antonyms = &antonyms();
  r.verb_pool = {"cause", "help", "stop", "reduce", "write"};
  return r;
}

TEST(Scheduler, DeterministicAcrossThreadCounts) {
  const auto corpus = mixed_corpus(90);
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 40;
  config.per_sentence = 2;
  config.method = AugmentMethod::kVrRandom;
  config.master_seed = 99;
  const auto resources = verb_resources();
  config.threads = 1;
  const auto one = augment_minority(corpus, config, resources);
  config.threads = 4;
  const auto four = augment_minority(corpus, config, resources);
  EXPECT_EQ(serialize_manifest(one.samples), serialize_manifest(four.samples));
  EXPECT_EQ(serialize_augmented_corpus(one.samples), serialize_augmented_corpus(four.samples));
  EXPECT_EQ(one.samples.size(), 80u);
  config.master_seed = 100;
  EXPECT_NE(serialize_manifest(augment_minority(corpus, config, resources).samples),
            serialize_manifest(one.samples));
}

TEST(Scheduler, SeedsAreReproducibleFromManifest) {
  const auto corpus = mixed_corpus(60);
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 10;
  config.method = AugmentMethod::kAeda;
  config.master_seed = 5;
  const auto report = augment_minority(corpus, config, {});
  for (const auto& sample : report.samples) {
    EXPECT_EQ(sample.seed, derive_seed(5, sample.source, sample.attempt));
    const auto& src = *std::find_if(corpus.begin(), corpus.end(), [&](const auto& s) {
      return s.doc_id == sample.source.doc_id && s.sent_index == sample.source.sent_index;
    });
    const auto again = run_operator(src, AugmentMethod::kAeda, {}, sample.seed, 1);
    ASSERT_TRUE(again.has_value());
    EXPECT_EQ(again->sentence, sample.sentence);
  }
}

TEST(Scheduler, MoreSamplesThanSourcesWrapsPasses) {
  const auto corpus = mixed_corpus(30);  // 10 CLA sentences
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 25;
  config.method = AugmentMethod::kAeda;
  config.master_seed = 1;
  const auto report = augment_minority(corpus, config, {});
  ASSERT_EQ(report.samples.size(), 25u);
  std::set<std::string> ids;
  for (const auto& s : report.samples) ids.insert(augmented_doc_id(s));
  EXPECT_EQ(ids.size(), 25u);
}

TEST(Scheduler, SkipsBarrenSourcesAndReportsHistogram) {
  std::vector<LabeledSentence> corpus = {
      make_sentence("a", 0, "banana banana .", "CLA"),
      make_sentence("b", 0, "they caused it .", "CLA"),
  };
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 1;
  config.method = AugmentMethod::kVrRandom;
  const auto report = augment_minority(corpus, config, verb_resources());
  ASSERT_EQ(report.samples.size(), 1u);
  EXPECT_EQ(report.samples[0].source.doc_id, "b");

  corpus.pop_back();
  try {
    augment_minority(corpus, config, verb_resources());
    FAIL() << "expected AugmentationError";
  } catch (const AugmentationError& e) {
    EXPECT_NE(std::string(e.what()).find("no eligible verb"), std::string::npos) << e.what();
  }
}

TEST(Scheduler, ConfigErrors) {
  const auto corpus = mixed_corpus(9);
  AugmentConfig config;
  config.target_class = "QUE";
  EXPECT_THROW(augment_minority(corpus, config, verb_resources()), AugmentationError);
  config.target_class = "CLA";
  config.method = AugmentMethod::kBat;
  EXPECT_THROW(augment_minority(corpus, config, verb_resources()), ConfigError);
  config.method = AugmentMethod::kEr;
  EXPECT_THROW(augment_minority(corpus, config, {}), ConfigError);
}

// Counts the peak number of overlapping complete() calls.
class SlowClient final : public LlmClient {
 public:
  std::string complete(const std::string&) override {
    const int now = ++active_;
    int seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    --active_;
    return "Not so.";
  }
  int peak() const { return peak_.load(); }

 private:
  std::atomic<int> active_{0};
  std::atomic<int> peak_{0};
};

TEST(Scheduler, LlmVariantsAndInFlightCap) {
  const auto corpus = mixed_corpus(60);
  SlowClient client;
  AugmentResources resources;
  resources.llm = &client;
  AugmentConfig config;
  config.target_class = "CLA";
  config.n_samples = 12;
  config.method = AugmentMethod::kLlm;
  config.threads = 6;
  config.llm_in_flight = 2;
  const auto report = augment_minority(corpus, config, resources);
  ASSERT_EQ(report.samples.size(), 12u);
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(report.samples[i].prompt_variant, i < 6 ? 1 : 2);
  }
  EXPECT_LE(client.peak(), 2);
}

TEST(Manifest, OneJsonObjectPerSample) {
  ScriptedChoices choices{0, 0};
  const auto dict = EntityDictionary::parse("PERCENT\t100 percent\nPROPER\tX\n", "d");
  auto sample = *entity_replace(claim_sentence(), PatternEntityAnnotator{}, dict, choices);
  sample.seed = 17;
  const std::vector<AugmentedSample> samples = {sample};
  const auto line = serialize_manifest(samples);
  const auto json = nlohmann::json::parse(line);
  EXPECT_EQ(json["method"], "ER");
  EXPECT_EQ(json["seed"], 17);
  EXPECT_EQ(json["source_id"]["doc_id"], "7");
  EXPECT_EQ(json["replacement"], (std::vector<std::string>{"100", "percent"}));
  EXPECT_EQ(json["doc_id"], augmented_doc_id(sample));
}

TEST(Resampling, OversampleAndUndersample) {
  const auto corpus = mixed_corpus(30);
  Rng rng(3);
  const auto over = oversample(corpus, "CLA", 25, rng);
  EXPECT_EQ(over.size(), 30u + 15u);
  std::size_t cla = 0;
  for (const auto& s : over) cla += s.sentence_label == "CLA";
  EXPECT_EQ(cla, 25u);
  EXPECT_THROW(oversample(corpus, "CLA", 5, rng), ConfigError);
  const auto under = undersample(corpus, "O", 4, rng);
  EXPECT_EQ(under.size(), 10u + 4u);
  EXPECT_THROW(undersample(corpus, "O", 100, rng), ConfigError);
}

TEST(Names, RoundTrip) {
  for (auto m : {AugmentMethod::kAeda, AugmentMethod::kVrRandom, AugmentMethod::kVrAntonym,
                 AugmentMethod::kEr, AugmentMethod::kLlm, AugmentMethod::kBat}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_FALSE(parse_method("bogus").has_value());
}

}  // namespace
}  // namespace cfaug
