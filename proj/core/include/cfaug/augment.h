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

#ifndef CFAUG_AUGMENT_H_
#define CFAUG_AUGMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfaug/entity.h"
#include "cfaug/llm.h"
#include "cfaug/morph.h"
#include "cfaug/rng.h"
#include "cfaug/senttok.h"

namespace cfaug {

enum class AugmentMethod { kAeda, kVrRandom, kVrAntonym, kEr, kLlm, kBat };

// "AEDA", "VR_Random", "VR_Antonym", "ER", "LLM", "BAT".
std::string_view method_name(AugmentMethod method);
std::optional<AugmentMethod> parse_method(std::string_view name);

struct SourceId {
  std::string doc_id;
  std::size_t sent_index = 0;

  friend bool operator==(const SourceId&, const SourceId&) = default;
};

enum class AugmentFailure {
  kNoVerb,
  kNoAntonym,
  kNoEntity,
  kNoAlternative,
  kEmptyCompletion,
  kTransport,
};

std::string_view failure_name(AugmentFailure failure);

// One augmented sentence plus the edit that produced it.
struct AugmentedSample {
  LabeledSentence sentence;
  AugmentMethod method = AugmentMethod::kAeda;
  SourceId source;
  std::uint64_t seed = 0;
  std::size_t attempt = 0;

  // AEDA: positions of inserted tokens in the output sentence, ascending.
  std::vector<std::size_t> insertions;
  // VR / ER: replaced token range of the source sentence.
  std::optional<std::pair<std::size_t, std::size_t>> replaced;
  std::vector<std::string> original_tokens;
  std::vector<std::string> replacement_tokens;
  // VR: tense of the replaced verb.
  std::optional<Tense> tense;
  // LLM: prompt template used (1 or 2).
  int prompt_variant = 0;
};

inline constexpr std::array<std::string_view, 6> kAedaMarks = {".", ";", "?",
                                                               ":", "!", ","};

// Inserts k marks drawn from kAedaMarks at k distinct slots, where slot i is
// directly before source token i and k is uniform in [1, max(1, n / 3)].
// Draw order: k, then the slots, then one mark per slot in ascending order.
AugmentedSample aeda(const LabeledSentence& sentence, ChoiceSource& choices);

// Deterministic core of aeda(): inserts `mark` before source token `slot`
// for each pair. Slots must be distinct and < n.
AugmentedSample aeda_insert(
    const LabeledSentence& sentence,
    std::span<const std::pair<std::size_t, std::string>> insertions);

enum class VerbMode { kRandom, kAntonym };

// Replaces one verb, conjugated to the original verb's tense and matched to
// its capitalization. Random mode draws the replacement base from `pool`
// excluding the original base; antonym mode draws from the antonyms of the
// original base that the lexicon can conjugate. Only verbs with at least one
// candidate are eligible. Draw order: verb, then replacement.
std::optional<AugmentedSample> verb_replace(
    const LabeledSentence& sentence, const VerbLexicon& lexicon,
    std::span<const std::string> pool, const AntonymLexicon& antonyms,
    VerbMode mode, ChoiceSource& choices, AugmentFailure* failure = nullptr);

// Replaces source tokens [token_start, token_end) with `replacement`. The
// first new token takes the gap before the replaced span, later ones are
// separated by single spaces, and labels copy the span's first label.
AugmentedSample replace_tokens(const LabeledSentence& sentence,
                               std::size_t token_start, std::size_t token_end,
                               const std::vector<std::string>& replacement);

// Replaces one annotated entity with a different dictionary entity of the
// same category. Inserted tokens copy the label of the replaced span's first
// token. Throws ConfigError if the dictionary lacks an annotated category.
// Draw order: entity, then replacement.
std::optional<AugmentedSample> entity_replace(
    const LabeledSentence& sentence, const EntityAnnotator& annotator,
    const EntityDictionary& dictionary, ChoiceSource& choices,
    AugmentFailure* failure = nullptr);

// Asks the client to contradict the sentence and tokenizes the reply; every
// token gets the source sentence label.
std::optional<AugmentedSample> llm_augment(const LabeledSentence& sentence,
                                           LlmClient& client, int variant,
                                           const RetryPolicy& retry = {},
                                           AugmentFailure* failure = nullptr);

// Everything an operator may need. Unused members can stay null.
struct AugmentResources {
  const VerbLexicon* lexicon = nullptr;
  // Training-verb pool for random verb replacement.
  std::vector<std::string> verb_pool;
  const AntonymLexicon* antonyms = nullptr;
  const EntityAnnotator* annotator = nullptr;
  const EntityDictionary* entities = nullptr;
  LlmClient* llm = nullptr;
  RetryPolicy llm_retry;
};

struct AugmentConfig {
  std::string target_class;
  std::size_t n_samples = 100;
  std::size_t per_sentence = 1;
  AugmentMethod method = AugmentMethod::kVrRandom;
  std::uint64_t master_seed = 0;
  std::size_t threads = 1;
  // Concurrent LLM requests.
  std::size_t llm_in_flight = 4;

  void validate() const;
};

struct AugmentReport {
  std::vector<AugmentedSample> samples;
  std::size_t requested = 0;
  std::size_t sources_tried = 0;
  std::map<std::string, std::size_t> failures;
};

// Seed for one augmentation attempt of one source sentence.
std::uint64_t derive_seed(std::uint64_t master_seed, const SourceId& source,
                          std::size_t attempt);

// Runs one operator once with an Rng seeded from `seed`.
std::optional<AugmentedSample> run_operator(
    const LabeledSentence& sentence, AugmentMethod method,
    const AugmentResources& resources, std::uint64_t seed, int prompt_variant,
    AugmentFailure* failure = nullptr);

// Augments sentences of config.target_class. Sources are visited in a seeded
// shuffle (a fresh shuffle per pass when more samples than sources are
// requested); each visited source yields up to per_sentence samples with
// seeds derive_seed(master, source, pass * per_sentence + j). Sources whose
// operator produces nothing are skipped and the walk continues, so the
// requested n_samples * per_sentence is met when feasible. Output order and
// content do not depend on config.threads. Throws AugmentationError carrying
// a failure histogram when nothing could be produced.
AugmentReport augment_minority(std::span<const LabeledSentence> sentences,
                               const AugmentConfig& config,
                               const AugmentResources& resources);

// Returns `sentences` with uniformly drawn (with replacement) copies of
// target-class sentences appended until that class has `target_total`
// sentences. Throws ConfigError if the class is absent or already larger.
std::vector<LabeledSentence> oversample(std::span<const LabeledSentence> sentences,
                                        const std::string& target_class,
                                        std::size_t target_total, Rng& rng);

// Keeps a uniform subset of `keep_n` sentences of `majority_class`; other
// sentences are untouched and relative order is preserved. Throws ConfigError
// when keep_n exceeds the available count.
std::vector<LabeledSentence> undersample(std::span<const LabeledSentence> sentences,
                                         const std::string& majority_class,
                                         std::size_t keep_n, Rng& rng);

// Augmented corpus as a token-label file (one document per sample).
std::string serialize_augmented_corpus(std::span<const AugmentedSample> samples);
// JSON lines, one object per sample in corpus order.
std::string serialize_manifest(std::span<const AugmentedSample> samples);

// Document id used for a sample in the augmented corpus.
std::string augmented_doc_id(const AugmentedSample& sample);

}  // namespace cfaug

#endif  // CFAUG_AUGMENT_H_
