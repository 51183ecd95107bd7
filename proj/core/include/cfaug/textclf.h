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

#ifndef CFAUG_TEXTCLF_H_
#define CFAUG_TEXTCLF_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfaug::textclf {

inline constexpr std::string_view kOovToken = "<unk>";

// V x d embedding matrix. Row 0 is the OOV row.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dim);

  // Seeded Gaussian rows for each distinct word (first-seen order) plus OOV.
  static EmbeddingTable random(std::span<const std::string> words,
                               std::size_t dim, std::uint64_t seed,
                               double stddev = 0.1);
  // `token v1 ... vd` per line. A "<unk>" line sets the OOV row.
  static EmbeddingTable parse(std::string_view contents,
                              const std::string& source);
  std::string serialize() const;

  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return dim_ == 0 ? 0 : matrix_.size() / dim_; }
  // Row index, or 0 for unknown tokens.
  std::size_t row_of(std::string_view token) const;
  // Adds a zero row if the token is new; returns its index.
  std::size_t add(const std::string& token);
  const std::string& token(std::size_t row) const { return tokens_.at(row); }

  std::span<double> row(std::size_t r) { return {&matrix_[r * dim_], dim_}; }
  std::span<const double> row(std::size_t r) const {
    return {&matrix_[r * dim_], dim_};
  }
  std::span<double> data() { return matrix_; }
  std::span<const double> data() const { return matrix_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> matrix_;
};

// Mean of the tokens' rows; the zero vector for an empty sentence.
std::vector<double> embed_sentence(std::span<const std::string> tokens,
                                   const EmbeddingTable& table);

// x + epsilon * sign(gradient); coordinates with zero gradient stay put.
std::vector<double> fgsm_perturb(std::span<const double> x,
                                 std::span<const double> gradient, double epsilon);

// Softmax over W x + b with W stored row-major C x d.
class SoftmaxClassifier {
 public:
  SoftmaxClassifier() = default;
  SoftmaxClassifier(std::size_t classes, std::size_t dim);

  std::size_t classes() const { return classes_; }
  std::size_t dim() const { return dim_; }
  std::span<double> weights() { return weights_; }
  std::span<const double> weights() const { return weights_; }
  std::span<double> bias() { return bias_; }
  std::span<const double> bias() const { return bias_; }

  std::vector<double> logits(std::span<const double> x) const;
  std::vector<double> probabilities(std::span<const double> x) const;
  // Argmax of the logits; ties go to the lower class index.
  std::size_t predict(std::span<const double> x) const;

 private:
  std::size_t classes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

// Cross-entropy of one example and its gradients.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> d_weights;  // C x d
  std::vector<double> d_bias;     // C
  std::vector<double> d_input;    // d
};

LossGradient cross_entropy(const SoftmaxClassifier& clf, std::span<const double> x,
                           std::size_t label);

struct AdvConfig {
  double epsilon = 0.0;
  double adv_weight = 0.0;

  void validate() const;
};

// (1 - w) * CE(x) + w * CE(x + delta) with delta = fgsm step from the clean
// input gradient, treated as a constant. Gradients are taken with respect to
// the classifier and the input x.
LossGradient adversarial_loss(const SoftmaxClassifier& clf,
                              std::span<const double> x, std::size_t label,
                              const AdvConfig& adv);

struct ClfTrainConfig {
  std::size_t epochs = 20;
  double learning_rate = 0.5;
  double decay = 1e-4;
  std::size_t dim = 32;
  double init_stddev = 0.1;
  bool train_embeddings = true;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ClfExample {
  std::vector<std::string> tokens;
  std::size_t label = 0;
};

class TextClassifier {
 public:
  TextClassifier() = default;
  TextClassifier(std::vector<std::string> class_names, EmbeddingTable table);

  const std::vector<std::string>& class_names() const { return class_names_; }
  const EmbeddingTable& table() const { return table_; }
  EmbeddingTable& table() { return table_; }
  const SoftmaxClassifier& classifier() const { return clf_; }
  SoftmaxClassifier& classifier() { return clf_; }

  std::size_t predict(std::span<const std::string> tokens) const;
  std::vector<double> probabilities(std::span<const std::string> tokens) const;

  // Loss of one example with dense gradients over all parameters, laid out
  // as [W, b, embedding matrix]. Intended for checks, not training.
  double loss(const ClfExample& example, const AdvConfig& adv) const;
  std::vector<double> gradient(const ClfExample& example,
                               const AdvConfig& adv) const;
  // Parameters in the same layout.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> params);

  // Versioned text format: classes, classifier, then the embedding table.
  std::string serialize() const;
  static TextClassifier parse(std::string_view contents, const std::string& source);

 private:
  std::vector<std::string> class_names_;
  EmbeddingTable table_;
  SoftmaxClassifier clf_;
};

using ClfEpochCallback = std::function<void(std::size_t epoch, double loss)>;

// Per-example SGD with a seeded shuffle each epoch. Embeddings are seeded
// Gaussian unless `initial` supplies a table. Throws ConfigError with fewer
// than two distinct classes and DivergenceError when the loss stops being
// finite.
TextClassifier train_classifier(std::span<const ClfExample> examples,
                                std::vector<std::string> class_names,
                                const ClfTrainConfig& config,
                                const AdvConfig& adv = {},
                                const EmbeddingTable* initial = nullptr,
                                const ClfEpochCallback& on_epoch = {});

}  // namespace cfaug::textclf

#endif  // CFAUG_TEXTCLF_H_
