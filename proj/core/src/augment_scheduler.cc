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

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cfaug/augment.h"
#include "cfaug/error.h"

namespace cfaug {

namespace {

// Caps the number of concurrent requests reaching the wrapped client.
class InFlightLimiter final : public LlmClient {
 public:
  InFlightLimiter(LlmClient& inner, std::size_t limit)
      : inner_(inner), available_(std::max<std::size_t>(1, limit)) {}

  std::string complete(const std::string& prompt) override {
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return available_ > 0; });
      --available_;
    }
    struct Release {
      InFlightLimiter* self;
      ~Release() {
        {
          std::lock_guard lock(self->mu_);
          ++self->available_;
        }
        self->cv_.notify_one();
      }
    } release{this};
    return inner_.complete(prompt);
  }

 private:
  LlmClient& inner_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t available_;
};

template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

struct PositionResult {
  std::vector<AugmentedSample> samples;
  std::vector<AugmentFailure> failures;
  std::exception_ptr error;
};

}  // namespace

void AugmentConfig::validate() const {
  if (target_class.empty()) throw ConfigError("augment: target_class is empty");
  if (n_samples < 1) throw ConfigError("augment: n_samples must be >= 1");
  if (per_sentence < 1) throw ConfigError("augment: per_sentence must be >= 1");
  if (method == AugmentMethod::kBat) {
    throw ConfigError(
        "BAT perturbs embeddings during classifier training; it is not a "
        "corpus augmenter");
  }
}

std::uint64_t derive_seed(std::uint64_t master_seed, const SourceId& source,
                          std::size_t attempt) {
  std::uint64_t seed = combine_seed(master_seed, source.doc_id);
  seed = combine_seed(seed, static_cast<std::uint64_t>(source.sent_index));
  return combine_seed(seed, static_cast<std::uint64_t>(attempt));
}

std::optional<AugmentedSample> run_operator(const LabeledSentence& sentence,
                                            AugmentMethod method,
                                            const AugmentResources& resources,
                                            std::uint64_t seed,
                                            int prompt_variant,
                                            AugmentFailure* failure) {
  Rng rng(seed);
  auto require = [](const void* p, const char* what) {
    if (p == nullptr) {
      throw ConfigError(std::string("augmentation needs ") + what);
    }
  };
  std::optional<AugmentedSample> out;
  switch (method) {
    case AugmentMethod::kAeda:
      out = aeda(sentence, rng);
      break;
    case AugmentMethod::kVrRandom:
    case AugmentMethod::kVrAntonym: {
      require(resources.lexicon, "a verb lexicon");
      const AntonymLexicon empty_antonyms;
      if (method == AugmentMethod::kVrAntonym) {
        require(resources.antonyms, "an antonym lexicon");
      }
      out = verb_replace(
          sentence, *resources.lexicon, resources.verb_pool,
          resources.antonyms ? *resources.antonyms : empty_antonyms,
          method == AugmentMethod::kVrRandom ? VerbMode::kRandom : VerbMode::kAntonym,
          rng, failure);
      break;
    }
    case AugmentMethod::kEr:
      require(resources.annotator, "an entity annotator");
      require(resources.entities, "an entity dictionary");
      out = entity_replace(sentence, *resources.annotator, *resources.entities,
                           rng, failure);
      break;
    case AugmentMethod::kLlm:
      require(resources.llm, "an LLM client");
      out = llm_augment(sentence, *resources.llm, prompt_variant,
                        resources.llm_retry, failure);
      break;
    case AugmentMethod::kBat:
      throw ConfigError("BAT is not a corpus augmenter");
  }
  if (out) out->seed = seed;
  return out;
}

AugmentReport augment_minority(std::span<const LabeledSentence> sentences,
                               const AugmentConfig& config,
                               const AugmentResources& resources) {
  config.validate();
  std::vector<std::size_t> targets;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].sentence_label == config.target_class) targets.push_back(i);
  }
  if (targets.empty()) {
    throw AugmentationError("no sentences of class '" + config.target_class + "'");
  }
  const std::size_t available = targets.size();

  AugmentResources local = resources;
  std::optional<InFlightLimiter> limiter;
  if (resources.llm != nullptr) {
    limiter.emplace(*resources.llm, config.llm_in_flight);
    local.llm = &*limiter;
  }

  std::vector<std::vector<std::size_t>> passes;
  auto source_at = [&](std::size_t position) -> std::pair<std::size_t, std::size_t> {
    const std::size_t pass = position / available;
    while (passes.size() <= pass) {
      std::vector<std::size_t> order = targets;
      Rng rng(combine_seed(combine_seed(config.master_seed, "select"),
                           static_cast<std::uint64_t>(passes.size())));
      rng.shuffle(order);
      passes.push_back(std::move(order));
    }
    return {passes[pass][position % available], pass};
  };

  const std::size_t first_half = (config.n_samples + 1) / 2;
  auto compute = [&](std::size_t position, std::size_t sentence_index,
                     std::size_t pass) {
    PositionResult result;
    try {
      const LabeledSentence& s = sentences[sentence_index];
      const SourceId source{s.doc_id, s.sent_index};
      const int variant = position < first_half ? 1 : 2;
      for (std::size_t j = 0; j < config.per_sentence; ++j) {
        const std::size_t attempt = pass * config.per_sentence + j;
        AugmentFailure why = AugmentFailure::kNoVerb;
        auto sample = run_operator(s, config.method, local,
                                   derive_seed(config.master_seed, source, attempt),
                                   variant, &why);
        if (sample) {
          sample->attempt = attempt;
          result.samples.push_back(std::move(*sample));
        } else {
          result.failures.push_back(why);
        }
      }
    } catch (...) {
      result.error = std::current_exception();
    }
    return result;
  };

  AugmentReport report;
  report.requested = config.n_samples * config.per_sentence;
  const std::size_t cap = 10 * (config.n_samples + available);
  std::size_t position = 0;
  std::size_t consecutive_empty = 0;
  auto done = [&] {
    return report.samples.size() >= report.requested || position >= cap ||
           consecutive_empty >= available;
  };
  while (!done()) {
    const std::size_t missing = report.requested - report.samples.size();
    const std::size_t want =
        (missing + config.per_sentence - 1) / config.per_sentence;
    const std::size_t chunk =
        std::min(cap - position, std::max(want, config.threads));
    std::vector<std::pair<std::size_t, std::size_t>> sources(chunk);
    for (std::size_t i = 0; i < chunk; ++i) sources[i] = source_at(position + i);
    std::vector<PositionResult> results(chunk);
    parallel_for(chunk, config.threads, [&](std::size_t i) {
      results[i] = compute(position + i, sources[i].first, sources[i].second);
    });
    for (auto& result : results) {
      if (done()) break;
      if (result.error) std::rethrow_exception(result.error);
      ++report.sources_tried;
      ++position;
      for (AugmentFailure f : result.failures) {
        ++report.failures[std::string(failure_name(f))];
      }
      consecutive_empty = result.samples.empty() ? consecutive_empty + 1 : 0;
      for (auto& sample : result.samples) {
        if (report.samples.size() >= report.requested) break;
        report.samples.push_back(std::move(sample));
      }
    }
  }
  if (report.samples.empty()) {
    std::string histogram;
    for (const auto& [reason, count] : report.failures) {
      if (!histogram.empty()) histogram += ", ";
      histogram += reason + "=" + std::to_string(count);
    }
    throw AugmentationError("no augmentation of class '" + config.target_class +
                            "' could be produced (" + histogram + ")");
  }
  return report;
}

std::string augmented_doc_id(const AugmentedSample& sample) {
  return sample.source.doc_id + "#" + std::to_string(sample.source.sent_index) +
         "#" + std::string(method_name(sample.method)) + "#" +
         std::to_string(sample.attempt);
}

std::string serialize_augmented_corpus(std::span<const AugmentedSample> samples) {
  std::vector<Document> docs;
  docs.reserve(samples.size());
  for (const auto& sample : samples) {
    Document doc;
    doc.id = augmented_doc_id(sample);
    doc.text = sample.sentence.text;
    doc.tokens = sample.sentence.tokens;
    doc.token_labels = sample.sentence.token_labels;
    docs.push_back(std::move(doc));
  }
  return serialize_token_label_file(docs);
}

std::string serialize_manifest(std::span<const AugmentedSample> samples) {
  std::string out;
  for (const auto& sample : samples) {
    nlohmann::ordered_json record;
    record["doc_id"] = augmented_doc_id(sample);
    record["method"] = method_name(sample.method);
    record["source_id"] = {{"doc_id", sample.source.doc_id},
                           {"sent_index", sample.source.sent_index}};
    record["seed"] = sample.seed;
    record["attempt"] = sample.attempt;
    record["label"] = sample.sentence.sentence_label;
    if (!sample.insertions.empty()) record["insertions"] = sample.insertions;
    if (sample.replaced) {
      record["replaced"] = {sample.replaced->first, sample.replaced->second};
      record["original"] = sample.original_tokens;
      record["replacement"] = sample.replacement_tokens;
    }
    if (sample.tense) record["tense"] = tense_name(*sample.tense);
    if (sample.prompt_variant != 0) record["prompt_variant"] = sample.prompt_variant;
    out += record.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace cfaug
