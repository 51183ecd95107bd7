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

#ifndef CFAUG_EXPERIMENT_H_
#define CFAUG_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cfaug/augment.h"
#include "cfaug/config.h"
#include "cfaug/crf.h"
#include "cfaug/eval.h"
#include "cfaug/textclf.h"

namespace cfaug {

// Optional resource files; empty paths select the bundled data.
struct ResourcePaths {
  std::filesystem::path verbs;
  std::filesystem::path verb_stoplist;
  std::filesystem::path antonyms;
  std::filesystem::path abbreviations;
  // Entity dictionary; built from the training sentences when empty.
  std::filesystem::path entities;
};

struct LlmSettings {
  bool offline = true;
  std::string endpoint;
  std::size_t in_flight = 4;
};

// Owns everything the augmenters borrow.
class ResourceBundle {
 public:
  ResourceBundle(const ResourcePaths& paths,
                 std::span<const LabeledSentence> train_sentences,
                 const LlmSettings& llm);
  ResourceBundle(const ResourceBundle&) = delete;
  ResourceBundle& operator=(const ResourceBundle&) = delete;

  AugmentResources view() const;
  const VerbLexicon& lexicon() const { return lexicon_; }
  const AntonymLexicon& antonyms() const { return antonyms_; }
  const EntityDictionary& entities() const { return entities_; }
  const AbbreviationList& abbreviations() const { return abbreviations_; }
  const std::vector<std::string>& verb_pool() const { return verb_pool_; }

 private:
  VerbLexicon lexicon_;
  AntonymLexicon antonyms_;
  AbbreviationList abbreviations_;
  PatternEntityAnnotator annotator_;
  EntityDictionary entities_;
  std::vector<std::string> verb_pool_;
  std::unique_ptr<LlmClient> llm_;
};

AbbreviationList load_abbreviations(const std::filesystem::path& path);

// Distinct verb bases found in the sentences, in first-seen order.
std::vector<std::string> collect_verb_pool(std::span<const LabeledSentence> sentences,
                                           const VerbLexicon& lexicon);

// Offline stand-in for an LLM: negates the quoted sentence of a
// contradiction prompt.
std::string offline_contradiction(const std::string& prompt);

enum class ModelKind { kCrf, kTextClf };

struct ModelConfig {
  ModelKind kind = ModelKind::kTextClf;
  crf::TrainConfig crf;
  textclf::ClfTrainConfig clf;
  textclf::AdvConfig adv;  // used by the BAT method only

  // Reads `kind`, `epochs`, `learning_rate`, `decay`, `l2`, `dim`,
  // `init_stddev`, `train_embeddings`, `epsilon` and `adv_weight` from one
  // config section.
  static ModelConfig from_ini(const IniConfig& ini, const std::string& section);
  void validate() const;
};

// Trains on `train` and scores token labels of `dev`. The classifier predicts
// one label per sentence, which is projected onto its tokens.
MetricsReport train_and_evaluate(std::span<const LabeledSentence> train,
                                 std::span<const LabeledSentence> dev,
                                 const LabelSchema& schema,
                                 const ModelConfig& model, std::uint64_t seed);

// Method names accepted in experiment configs besides augmentation methods.
inline constexpr std::string_view kNoAugmentation = "none";

struct ExperimentConfig {
  std::filesystem::path train;
  std::filesystem::path dev;
  std::filesystem::path schema;
  ResourcePaths resources;
  std::vector<std::string> methods;
  std::string target_class;
  std::size_t n_samples = 100;
  std::size_t per_sentence = 1;
  std::size_t threads = 1;
  ModelConfig model;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  LlmSettings llm;

  // Sections [data], [augment], [model], [run]; relative paths resolve
  // against `base_dir`. [run] seed is mandatory.
  static ExperimentConfig from_ini(const IniConfig& ini,
                                   const std::filesystem::path& base_dir);
  static ExperimentConfig load(const std::filesystem::path& path);
  // Throws ConfigError for missing files or unknown methods.
  void validate() const;
};

struct ExperimentResult {
  std::map<std::string, MetricsReport> reports;
  std::map<std::string, std::size_t> augmented;
  Comparison comparison;
};

// Loads the data once and runs every configured method. Each method trains
// a fresh model with the same model seed; "BAT" trains the classifier with
// adversarial perturbations instead of augmenting.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                std::ostream* log = nullptr);

// Runs one method on already-split sentences.
MetricsReport run_method(const std::string& method,
                         std::span<const LabeledSentence> train,
                         std::span<const LabeledSentence> dev,
                         const LabelSchema& schema, const ExperimentConfig& config,
                         const ResourceBundle& resources,
                         std::size_t* augmented = nullptr);

// Writes report_<method>.json/.txt and comparison.json/.txt atomically.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& output_dir);

}  // namespace cfaug

#endif  // CFAUG_EXPERIMENT_H_
