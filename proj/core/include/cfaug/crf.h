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

#ifndef CFAUG_CRF_H_
#define CFAUG_CRF_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cfaug/senttok.h"

namespace cfaug::crf {

// Per-token observation templates. Each one also has a bigram variant that
// conjoins the previous token's value with the current one.
enum class FeatureTemplate {
  kWord,          // w=Sibo
  kSuffix1,       // suf1=o
  kSuffix2,       // suf2=bo
  kSuffix3,       // suf3=ibo
  kUpperInitial,  // capInit=1
  kAllUpper,      // allCap=0
  kDigit,         // digit=0
};

struct FeatureConfig {
  std::vector<FeatureTemplate> templates = {
      FeatureTemplate::kWord,         FeatureTemplate::kSuffix1,
      FeatureTemplate::kSuffix2,      FeatureTemplate::kSuffix3,
      FeatureTemplate::kUpperInitial, FeatureTemplate::kAllUpper,
      FeatureTemplate::kDigit};
  bool bigrams = true;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Feature strings per position. Suffixes of words shorter than k are the
// whole word; bigram features at position 0 use "<BOS>" as previous value,
// e.g. "w[-1,0]=<BOS>|Sibo".
std::vector<std::vector<std::string>> extract_features(
    std::span<const std::string> words, const FeatureConfig& config = {});

// Attribute ids observed at each position.
struct Instance {
  std::vector<std::vector<std::size_t>> attributes;
  std::size_t size() const { return attributes.size(); }
};

// Linear-chain CRF. Parameters are one flat vector: L*L transition weights
// (prev * L + cur) followed by one block of L emission weights per attribute
// (L*L + attribute * L + label).
class CrfModel {
 public:
  CrfModel() = default;
  explicit CrfModel(std::vector<std::string> labels, FeatureConfig features = {});

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_labels() const { return labels_.size(); }
  std::optional<std::size_t> label_index(std::string_view label) const;
  const FeatureConfig& features() const { return features_; }

  std::size_t num_attributes() const { return attribute_names_.size(); }
  std::optional<std::size_t> attribute_id(std::string_view name) const;
  const std::string& attribute_name(std::size_t id) const {
    return attribute_names_.at(id);
  }
  // Adds the attribute (with zero weights) if new; returns its id.
  std::size_t add_attribute(const std::string& name);

  std::size_t dimension() const { return weights_.size(); }
  std::size_t transition_index(std::size_t prev, std::size_t cur) const {
    return prev * labels_.size() + cur;
  }
  std::size_t emission_index(std::size_t attribute, std::size_t label) const {
    return labels_.size() * labels_.size() + attribute * labels_.size() + label;
  }

  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }

  double l2() const { return l2_; }
  void set_l2(double l2) { l2_ = l2; }

  // Encodes words with known attributes only.
  Instance encode(std::span<const std::string> words) const;
  // Encodes words, registering unseen attributes.
  Instance encode_and_register(std::span<const std::string> words);

  // Versioned text format; weights round-trip exactly.
  std::string serialize() const;
  static CrfModel parse(std::string_view contents, const std::string& source);

 private:
  std::vector<std::string> labels_;
  FeatureConfig features_;
  std::vector<std::string> attribute_names_;
  std::unordered_map<std::string, std::size_t> attribute_ids_;
  std::vector<double> weights_;
  double l2_ = 0.0;
};

// Unnormalized log score of one label sequence.
double sequence_score(const CrfModel& model, const Instance& instance,
                      std::span<const std::size_t> labels);

// log Z by the forward recursion in log space. 0 for an empty instance.
double log_partition(const CrfModel& model, const Instance& instance);

// Node marginals p(y_t = y | x), row-major n x L.
std::vector<double> marginals(const CrfModel& model, const Instance& instance);

struct NllGradient {
  double nll = 0.0;
  std::vector<double> gradient;
};

// -log p(gold | x) + (l2 / 2) ||w||^2 and its gradient
// E_model[f] - f(gold) + l2 * w, with expectations from forward-backward.
NllGradient nll_and_gradient(const CrfModel& model, const Instance& instance,
                             std::span<const std::size_t> gold);

// Highest-scoring sequence; ties go to the smaller label index.
std::vector<std::size_t> viterbi(const CrfModel& model, const Instance& instance);

struct TrainConfig {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  // Step size at update t is learning_rate / (1 + decay * t).
  double decay = 1e-4;
  // Total L2 strength over the training set; each per-sequence step applies
  // l2 / N so one epoch matches the full regularized objective.
  double l2 = 1e-3;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TrainingExample {
  Instance instance;
  std::vector<std::size_t> labels;
};

struct TrainResult {
  // Regularized training objective after each epoch.
  std::vector<double> epoch_nll;
};

using EpochCallback = std::function<void(std::size_t epoch, double nll)>;

// Per-sequence SGD with a seeded shuffle each epoch. Single-threaded; mutates
// the model's weights. Throws DivergenceError when the objective stops being
// finite.
TrainResult train(CrfModel& model, std::span<const TrainingExample> data,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

// Convenience wrapper over sentences with string labels.
class CrfTagger {
 public:
  CrfTagger(std::vector<std::string> labels, FeatureConfig features = {})
      : model_(std::move(labels), std::move(features)) {}
  explicit CrfTagger(CrfModel model) : model_(std::move(model)) {}

  TrainResult fit(std::span<const LabeledSentence> sentences,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});
  std::vector<std::string> predict(std::span<const Token> tokens) const;

  const CrfModel& model() const { return model_; }

 private:
  CrfModel model_;
};

}  // namespace cfaug::crf

#endif  // CFAUG_CRF_H_
