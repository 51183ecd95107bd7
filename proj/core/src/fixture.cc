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

#include "cfaug/fixture.h"

#include <algorithm>
#include <array>
#include <set>
#include <span>
#include <string_view>

#include <json.hpp>

#include "cfaug/error.h"
#include "cfaug/morph.h"
#include "cfaug/rng.h"
#include "cfaug/text.h"

namespace cfaug {

namespace {

using Words = std::vector<std::string_view>;

const Words kConditions = {"IBS",  "Sibo",   "GERD",    "Crohn",     "Celiac",
                           "Lyme", "Candida", "POTS",   "Hashimoto", "PCOS"};
const Words kTreatments = {"probiotics", "rifaximin",  "gluten",   "dairy",
                           "coffee",     "magnesium",  "fasting",  "kombucha",
                           "antibiotics", "turmeric",  "ginger",   "zinc",
                           "sugar",      "alcohol",    "fiber",    "peppermint oil"};
const Words kSymptoms = {"bloating",  "fatigue",      "anxiety", "migraines",
                         "acne",      "insomnia",     "constipation",
                         "nausea",    "reflux",       "inflammation",
                         "cramps",    "brain fog",    "joint pain"};
// Evidence markers of general claims. Many and individually rare.
const Words kMarkers = {
    "Studies suggest", "Evidence suggests", "Scientists agree", "Experts say",
    "Research shows", "Doctors confirm", "Trials indicate", "Data suggests",
    "Reviews conclude", "Literature says", "Researchers report",
    "Clinicians agree", "Surveys indicate", "Papers claim", "Statistics show",
    "Nutritionists warn", "Specialists note", "Gastroenterologists say",
    "Epidemiologists report", "Meta-analyses show"};
const Words kFillers = {"really",   "also",    "honestly", "just",
                        "actually", "probably", "usually", "sometimes"};

const std::map<std::string_view, Words> kVerbGroups = {
    {"causal",
     {"cause", "trigger", "reduce", "worsen", "improve", "prevent", "relieve",
      "increase", "heal", "damage", "affect", "induce", "boost", "lower"}},
    {"personal", {"start", "stop", "try", "take", "need", "eat", "drink"}},
    {"mental", {"notice", "think", "know", "read", "hope"}},
    {"social", {"thank", "welcome", "share", "post", "ask"}},
};

const std::map<std::string_view, std::vector<std::string_view>> kTemplates = {
    {"CLA",
     {"{M} {T} {causal.3sg} {S} .",
      "{M} {T} can {causal.base} {S} .",
      "{M} {C} is {causal.pp} by {T} .",
      "{P} % of people diagnosed with {C} have {C} .",
      "{T} {causal.3sg} {S} in most people .",
      "{T} {causal.3sg} {S} ."}},
    {"EXP",
     {"I think {T} {causal.3sg} my {S} .",
      "{T} {causal.3sg} my {S} .",
      "For me {T} {causal.3sg} {S} .",
      "{T} can {causal.base} my {S} .",
      "I {mental.past} that {T} {causal.3sg} {S} .",
      "{C} is {causal.pp} by {T} for me .",
      "After I {personal.past} {T} my {S} {causal.past} ."}},
    {"PER",
     {"I have had {C} for {N} years .",
      "I {personal.past} {T} last week .",
      "My doctor told me to {personal.base} {T} .",
      "I am {personal.ger} {T} every day .",
      "I was diagnosed with {C} in {Y} .",
      "My {S} has been bad since {Y} .",
      "I {personal.past} {T} for {N} days and {mental.past} nothing ."}},
    {"QUE",
     {"Has anyone {personal.pp} {T} for {S} ?",
      "Does {T} {causal.base} {S} ?",
      "What should I {personal.base} for {C} ?",
      "Is it normal to have {S} with {C} ?",
      "Can {T} {causal.base} {S} ?",
      "How long did it take to {causal.base} your {S} ?"}},
    {"O",
     {"Thanks for {social.ger} your story .",
      "Good luck with everything !",
      "Welcome to the group .",
      "{C} is a hard thing to live with .",
      "Hope you feel better soon !",
      "This group has been so helpful .",
      "Please {social.base} an update when you can .",
      "Sending hugs to everyone here .",
      "{T} is available at most stores .",
      "The forum rules are pinned at the top ."}},
};

constexpr std::array<std::string_view, 5> kFixtureLabels = {"CLA", "EXP", "O",
                                                            "PER", "QUE"};

std::string_view pick(const Words& words, Rng& rng) {
  return words[rng.below(words.size())];
}

Tense tense_of(std::string_view name) {
  if (name == "base") return Tense::kBase;
  if (name == "3sg") return Tense::kPresent3sg;
  if (name == "past") return Tense::kPast;
  if (name == "ger") return Tense::kGerund;
  return Tense::kPastParticiple;
}

std::vector<std::string> expand(std::string_view tmpl, Rng& rng,
                                const VerbLexicon& lexicon) {
  std::vector<std::string> out;
  auto push_words = [&](std::string_view phrase) {
    for (auto w : text::split(phrase, ' ')) out.emplace_back(w);
  };
  for (auto piece : text::split(tmpl, ' ')) {
    if (piece.size() < 3 || piece.front() != '{' || piece.back() != '}') {
      out.emplace_back(piece);
      continue;
    }
    const std::string_view slot = piece.substr(1, piece.size() - 2);
    if (slot == "M") {
      push_words(pick(kMarkers, rng));
      out.emplace_back("that");
    } else if (slot == "T") {
      push_words(pick(kTreatments, rng));
    } else if (slot == "C") {
      push_words(pick(kConditions, rng));
    } else if (slot == "S") {
      push_words(pick(kSymptoms, rng));
    } else if (slot == "P") {
      out.push_back(std::to_string(rng.uniform_int(5, 95)));
    } else if (slot == "N") {
      out.push_back(std::to_string(rng.uniform_int(2, 12)));
    } else if (slot == "Y") {
      out.push_back(std::to_string(rng.uniform_int(2010, 2023)));
    } else {
      const auto dot = slot.find('.');
      const Words& group = kVerbGroups.at(slot.substr(0, dot));
      out.push_back(conjugate(pick(group, rng), tense_of(slot.substr(dot + 1)),
                              lexicon));
    }
  }
  if (!out.empty() && !out.front().empty() && text::is_ascii_lower(out.front()[0])) {
    out.front()[0] = static_cast<char>(out.front()[0] - 'a' + 'A');
  }
  return out;
}

struct GeneratedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  std::string label;
  bool uniform = true;
};

GeneratedSentence generate_sentence(const std::string& label,
                                    const FixtureConfig& config, Rng& rng,
                                    const VerbLexicon& lexicon) {
  GeneratedSentence s;
  s.label = label;
  std::string_view source_class = label;
  if (rng.uniform() < config.confusion_rate) {
    source_class = kFixtureLabels[rng.below(kFixtureLabels.size())];
  }
  const auto& templates = kTemplates.at(source_class);
  s.tokens = expand(templates[rng.below(templates.size())], rng, lexicon);
  if (rng.uniform() < config.filler_rate && s.tokens.size() >= 3) {
    const std::size_t at = 1 + rng.below(s.tokens.size() - 2);
    s.tokens.insert(s.tokens.begin() + static_cast<std::ptrdiff_t>(at),
                    std::string(pick(kFillers, rng)));
  }
  s.labels.assign(s.tokens.size(), label);
  const std::size_t n = s.tokens.size();
  if (rng.uniform() < config.impurity_rate && n >= 3) {
    const std::size_t k = 1 + rng.below((n - 1) / 2);
    std::string other = "O";
    if (label == "O") {
      other = std::string(kFixtureLabels[rng.below(kFixtureLabels.size())]);
      if (other == "O") other = "PER";
    }
    std::fill_n(s.labels.begin(), k, other);
    s.uniform = false;
  }
  return s;
}

Dataset generate_split(const std::map<std::string, std::size_t>& sizes,
                       const LabelSchema& schema, const FixtureConfig& config,
                       std::string_view split, FixtureSplitStats& stats,
                       const VerbLexicon& lexicon) {
  Rng rng(combine_seed(config.seed, split));
  std::vector<std::string> plan;
  for (const auto& label : schema.labels()) {
    auto it = sizes.find(label);
    if (it != sizes.end()) plan.insert(plan.end(), it->second, label);
  }
  rng.shuffle(plan);

  Dataset data;
  data.schema = schema;
  for (const auto& l : schema.labels()) {
    stats.label_dist[l] = 0;
    stats.sentence_labels[l] = 0;
  }
  std::set<std::string> vocabulary;
  std::size_t next = 0;
  while (next < plan.size()) {
    const std::size_t want =
        1 + rng.below(static_cast<std::uint64_t>(config.max_doc_sentences));
    const std::size_t end = std::min(plan.size(), next + want);
    std::vector<std::string> tokens;
    std::vector<std::string> labels;
    for (; next < end; ++next) {
      GeneratedSentence s = generate_sentence(plan[next], config, rng, lexicon);
      ++stats.n_sentences;
      ++stats.sentence_labels[s.label];
      if (s.uniform) ++stats.n_uniform;
      tokens.insert(tokens.end(), s.tokens.begin(), s.tokens.end());
      labels.insert(labels.end(), s.labels.begin(), s.labels.end());
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      vocabulary.insert(tokens[i]);
      ++stats.label_dist[labels[i]];
    }
    stats.n_tokens += tokens.size();
    stats.max_length = std::max(stats.max_length, tokens.size());
    data.documents.push_back(Document::from_tokens(
        std::to_string(data.documents.size()), tokens, std::move(labels)));
  }
  stats.n_texts = data.documents.size();
  stats.n_unique_words = vocabulary.size();
  return data;
}

nlohmann::ordered_json stats_json(const FixtureSplitStats& s) {
  return {{"n_texts", s.n_texts},
          {"n_tokens", s.n_tokens},
          {"n_unique_words", s.n_unique_words},
          {"max_length", s.max_length},
          {"label_dist", s.label_dist},
          {"n_sentences", s.n_sentences},
          {"n_uniform_sentences", s.n_uniform},
          {"sentence_labels", s.sentence_labels}};
}

}  // namespace

FixtureConfig FixtureConfig::scaled(std::size_t divisor, std::uint64_t seed) {
  if (divisor == 0) throw ConfigError("fixture divisor must be positive");
  static const std::map<std::string, std::size_t> kFull = {
      {"CLA", 401}, {"EXP", 1917}, {"O", 19826}, {"PER", 7824}, {"QUE", 5064}};
  FixtureConfig config;
  config.seed = seed;
  for (const auto& [label, count] : kFull) {
    const std::size_t scaled = (count + divisor / 2) / divisor;
    config.train_sizes[label] = std::max<std::size_t>(1, scaled);
  }
  config.dev_sizes = config.train_sizes;
  return config;
}

void FixtureConfig::validate() const {
  for (const auto* sizes : {&train_sizes, &dev_sizes}) {
    for (const auto& [label, count] : *sizes) {
      if (std::find(kFixtureLabels.begin(), kFixtureLabels.end(), label) ==
          kFixtureLabels.end()) {
        throw ConfigError("fixture has no templates for label '" + label + "'");
      }
    }
  }
  std::size_t total = 0;
  for (const auto& [label, count] : train_sizes) total += count;
  if (total == 0) throw ConfigError("fixture train split is empty");
  if (max_doc_sentences == 0) throw ConfigError("max_doc_sentences must be positive");
  for (double rate : {filler_rate, confusion_rate, impurity_rate}) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw ConfigError("fixture rates must lie in [0, 1]");
    }
  }
}

Fixture make_fixture(const FixtureConfig& config) {
  config.validate();
  const VerbLexicon lexicon = VerbLexicon::bundled();
  Fixture fixture;
  LabelSchema schema("O", {"CLA", "EXP", "PER", "QUE"});
  fixture.train = generate_split(config.train_sizes, schema, config, "train",
                                 fixture.train_stats, lexicon);
  fixture.dev = generate_split(config.dev_sizes, schema, config, "dev",
                               fixture.dev_stats, lexicon);
  std::map<std::string, std::uint64_t, std::less<>> freq;
  for (const auto& [label, count] : fixture.train_stats.label_dist) {
    freq[label] = count;
  }
  fixture.schema = schema.with_train_freq(std::move(freq));
  fixture.train.schema = fixture.schema;
  fixture.dev.schema = fixture.schema;
  return fixture;
}

std::string Fixture::bookkeeping_json() const {
  nlohmann::ordered_json j;
  j["train"] = stats_json(train_stats);
  j["dev"] = stats_json(dev_stats);
  return j.dump(2) + "\n";
}

}  // namespace cfaug
