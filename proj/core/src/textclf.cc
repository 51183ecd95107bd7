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

#include "cfaug/textclf.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "cfaug/error.h"
#include "cfaug/rng.h"
#include "cfaug/text.h"

namespace cfaug::textclf {

namespace {

constexpr std::string_view kModelHeader = "cfaug-textclf 1";

void append_double(std::string& out, double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, ptr);
}

double parse_number(std::string_view s, const std::string& source,
                    std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(source, line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (auto f : text::split(line, ' ')) {
    if (!f.empty()) out.push_back(f);
  }
  return out;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ConfigError("embedding dimension must be positive");
  add(std::string(kOovToken));
}

EmbeddingTable EmbeddingTable::random(std::span<const std::string> words,
                                      std::size_t dim, std::uint64_t seed,
                                      double stddev) {
  EmbeddingTable table(dim);
  for (const auto& w : words) table.add(w);
  Rng rng(combine_seed(seed, std::string_view("embeddings")));
  for (double& v : table.matrix_) v = rng.gaussian(0.0, stddev);
  return table;
}

EmbeddingTable EmbeddingTable::parse(std::string_view contents,
                                     const std::string& source) {
  EmbeddingTable table;
  std::size_t line_no = 0;
  for (auto line : text::split(contents, '\n')) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto cols = fields(line);
    if (cols.size() < 2) throw ParseError(source, line_no, "expected token and values");
    if (table.dim_ == 0) table = EmbeddingTable(cols.size() - 1);
    if (cols.size() - 1 != table.dim_) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(table.dim_) + " values");
    }
    const std::string token(cols[0]);
    if (token != kOovToken && table.index_.count(token)) {
      throw ParseError(source, line_no, "duplicate token '" + token + "'");
    }
    auto row = table.row(table.add(token));
    for (std::size_t i = 0; i < table.dim_; ++i) {
      row[i] = parse_number(cols[i + 1], source, line_no);
    }
  }
  if (table.dim_ == 0) throw ParseError(source, 0, "empty embedding file");
  return table;
}

std::string EmbeddingTable::serialize() const {
  std::string out;
  for (std::size_t r = 0; r < rows(); ++r) {
    out += tokens_[r];
    for (double v : row(r)) {
      out.push_back(' ');
      append_double(out, v);
    }
    out.push_back('\n');
  }
  return out;
}

std::size_t EmbeddingTable::row_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? 0 : it->second;
}

std::size_t EmbeddingTable::add(const std::string& token) {
  auto [it, inserted] = index_.emplace(token, tokens_.size());
  if (inserted) {
    tokens_.push_back(token);
    matrix_.resize(matrix_.size() + dim_, 0.0);
  }
  return it->second;
}

std::vector<double> embed_sentence(std::span<const std::string> tokens,
                                   const EmbeddingTable& table) {
  std::vector<double> x(table.dim(), 0.0);
  if (tokens.empty()) return x;
  for (const auto& t : tokens) {
    auto row = table.row(table.row_of(t));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += row[i];
  }
  const double n = static_cast<double>(tokens.size());
  for (double& v : x) v /= n;
  return x;
}

std::vector<double> fgsm_perturb(std::span<const double> x,
                                 std::span<const double> gradient,
                                 double epsilon) {
  if (x.size() != gradient.size()) {
    throw ValidationError("fgsm_perturb: size mismatch");
  }
  if (epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (gradient[i] > 0.0) {
      out[i] += epsilon;
    } else if (gradient[i] < 0.0) {
      out[i] -= epsilon;
    }
  }
  return out;
}

SoftmaxClassifier::SoftmaxClassifier(std::size_t classes, std::size_t dim)
    : classes_(classes),
      dim_(dim),
      weights_(classes * dim, 0.0),
      bias_(classes, 0.0) {}

std::vector<double> SoftmaxClassifier::logits(std::span<const double> x) const {
  std::vector<double> z(bias_.begin(), bias_.end());
  for (std::size_t c = 0; c < classes_; ++c) {
    const double* w = &weights_[c * dim_];
    for (std::size_t i = 0; i < dim_; ++i) z[c] += w[i] * x[i];
  }
  return z;
}

std::vector<double> SoftmaxClassifier::probabilities(std::span<const double> x) const {
  return softmax(logits(x));
}

std::size_t SoftmaxClassifier::predict(std::span<const double> x) const {
  const auto z = logits(x);
  return static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin());
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double max = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - max);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

LossGradient cross_entropy(const SoftmaxClassifier& clf, std::span<const double> x,
                           std::size_t label) {
  const std::size_t C = clf.classes();
  const std::size_t d = clf.dim();
  if (label >= C) throw ValidationError("class index out of range");
  const auto z = clf.logits(x);
  const double max = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double v : z) sum += std::exp(v - max);
  const double log_z = max + std::log(sum);

  LossGradient out;
  out.loss = log_z - z[label];
  out.d_weights.assign(C * d, 0.0);
  out.d_bias.assign(C, 0.0);
  out.d_input.assign(d, 0.0);
  const auto w = clf.weights();
  for (std::size_t c = 0; c < C; ++c) {
    const double g = std::exp(z[c] - log_z) - (c == label ? 1.0 : 0.0);
    out.d_bias[c] = g;
    for (std::size_t i = 0; i < d; ++i) {
      out.d_weights[c * d + i] = g * x[i];
      out.d_input[i] += g * w[c * d + i];
    }
  }
  return out;
}

void AdvConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (!(adv_weight >= 0.0 && adv_weight <= 1.0)) {
    throw ConfigError("adv_weight must lie in [0, 1]");
  }
}

LossGradient adversarial_loss(const SoftmaxClassifier& clf,
                              std::span<const double> x, std::size_t label,
                              const AdvConfig& adv) {
  LossGradient clean = cross_entropy(clf, x, label);
  if (adv.adv_weight == 0.0 || adv.epsilon == 0.0) return clean;
  const auto perturbed = fgsm_perturb(x, clean.d_input, adv.epsilon);
  const LossGradient attacked = cross_entropy(clf, perturbed, label);
  const double w = adv.adv_weight;
  auto mix = [w](std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = (1.0 - w) * a[i] + w * b[i];
  };
  clean.loss = (1.0 - w) * clean.loss + w * attacked.loss;
  mix(clean.d_weights, attacked.d_weights);
  mix(clean.d_bias, attacked.d_bias);
  mix(clean.d_input, attacked.d_input);
  return clean;
}

void ClfTrainConfig::validate() const {
  if (epochs == 0) throw ConfigError("classifier epochs must be positive");
  if (!(learning_rate > 0.0)) {
    throw ConfigError("classifier learning_rate must be positive");
  }
  if (decay < 0.0) throw ConfigError("classifier decay must be >= 0");
  if (dim == 0) throw ConfigError("embedding dimension must be positive");
  if (init_stddev < 0.0) throw ConfigError("init_stddev must be >= 0");
}

TextClassifier::TextClassifier(std::vector<std::string> class_names,
                               EmbeddingTable table)
    : class_names_(std::move(class_names)),
      table_(std::move(table)),
      clf_(class_names_.size(), table_.dim()) {}

std::size_t TextClassifier::predict(std::span<const std::string> tokens) const {
  return clf_.predict(embed_sentence(tokens, table_));
}

std::vector<double> TextClassifier::probabilities(
    std::span<const std::string> tokens) const {
  return clf_.probabilities(embed_sentence(tokens, table_));
}

double TextClassifier::loss(const ClfExample& example, const AdvConfig& adv) const {
  return adversarial_loss(clf_, embed_sentence(example.tokens, table_),
                          example.label, adv)
      .loss;
}

std::vector<double> TextClassifier::gradient(const ClfExample& example,
                                             const AdvConfig& adv) const {
  const auto g = adversarial_loss(clf_, embed_sentence(example.tokens, table_),
                                  example.label, adv);
  std::vector<double> out;
  out.reserve(g.d_weights.size() + g.d_bias.size() + table_.data().size());
  out.insert(out.end(), g.d_weights.begin(), g.d_weights.end());
  out.insert(out.end(), g.d_bias.begin(), g.d_bias.end());
  const std::size_t offset = out.size();
  out.resize(offset + table_.data().size(), 0.0);
  if (example.tokens.empty()) return out;
  const double share = 1.0 / static_cast<double>(example.tokens.size());
  const std::size_t d = table_.dim();
  for (const auto& t : example.tokens) {
    const std::size_t r = table_.row_of(t);
    for (std::size_t i = 0; i < d; ++i) out[offset + r * d + i] += share * g.d_input[i];
  }
  return out;
}

std::vector<double> TextClassifier::parameters() const {
  std::vector<double> out(clf_.weights().begin(), clf_.weights().end());
  out.insert(out.end(), clf_.bias().begin(), clf_.bias().end());
  out.insert(out.end(), table_.data().begin(), table_.data().end());
  return out;
}

void TextClassifier::set_parameters(std::span<const double> params) {
  const std::size_t nw = clf_.weights().size();
  const std::size_t nb = clf_.bias().size();
  const std::size_t ne = table_.data().size();
  if (params.size() != nw + nb + ne) {
    throw ValidationError("parameter vector has the wrong size");
  }
  std::copy_n(params.begin(), nw, clf_.weights().begin());
  std::copy_n(params.begin() + nw, nb, clf_.bias().begin());
  std::copy_n(params.begin() + nw + nb, ne, table_.data().begin());
}

std::string TextClassifier::serialize() const {
  std::string out(kModelHeader);
  out += "\nclasses";
  for (const auto& c : class_names_) out += "\t" + c;
  out += "\nclassifier\n";
  const std::size_t d = clf_.dim();
  for (std::size_t c = 0; c < clf_.classes(); ++c) {
    append_double(out, clf_.bias()[c]);
    for (std::size_t i = 0; i < d; ++i) {
      out.push_back(' ');
      append_double(out, clf_.weights()[c * d + i]);
    }
    out.push_back('\n');
  }
  out += "embeddings\n";
  out += table_.serialize();
  return out;
}

TextClassifier TextClassifier::parse(std::string_view contents,
                                     const std::string& source) {
  const auto lines = text::split(contents, '\n');
  if (lines.size() < 3 || lines[0] != kModelHeader) {
    throw ParseError(source, 1, "not a cfaug classifier model (version 1)");
  }
  auto classes = text::split(lines[1], '\t');
  if (classes.size() < 3 || classes[0] != "classes") {
    throw ParseError(source, 2, "expected class list");
  }
  std::vector<std::string> names(classes.begin() + 1, classes.end());
  if (lines[2] != "classifier") throw ParseError(source, 3, "expected 'classifier'");
  const std::size_t first_row = 3;
  const std::size_t emb_line = first_row + names.size();
  if (lines.size() <= emb_line || lines[emb_line] != "embeddings") {
    throw ParseError(source, emb_line + 1, "expected 'embeddings'");
  }
  std::string rest;
  for (std::size_t i = emb_line + 1; i < lines.size(); ++i) {
    rest.append(lines[i]);
    rest.push_back('\n');
  }
  TextClassifier model(std::move(names), EmbeddingTable::parse(rest, source));
  const std::size_t d = model.table_.dim();
  for (std::size_t c = 0; c < model.clf_.classes(); ++c) {
    const auto cols = fields(lines[first_row + c]);
    if (cols.size() != d + 1) {
      throw ParseError(source, first_row + c + 1, "bad classifier row");
    }
    model.clf_.bias()[c] = parse_number(cols[0], source, first_row + c + 1);
    for (std::size_t i = 0; i < d; ++i) {
      model.clf_.weights()[c * d + i] =
          parse_number(cols[i + 1], source, first_row + c + 1);
    }
  }
  return model;
}

TextClassifier train_classifier(std::span<const ClfExample> examples,
                                std::vector<std::string> class_names,
                                const ClfTrainConfig& config,
                                const AdvConfig& adv,
                                const EmbeddingTable* initial,
                                const ClfEpochCallback& on_epoch) {
  config.validate();
  adv.validate();
  std::vector<bool> present(class_names.size(), false);
  for (const auto& ex : examples) {
    if (ex.label >= class_names.size()) {
      throw ValidationError("example label out of range");
    }
    present[ex.label] = true;
  }
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw ConfigError("classifier training needs at least two classes present");
  }

  EmbeddingTable table;
  if (initial != nullptr) {
    table = *initial;
  } else {
    std::vector<std::string> words;
    for (const auto& ex : examples) {
      words.insert(words.end(), ex.tokens.begin(), ex.tokens.end());
    }
    table = EmbeddingTable::random(words, config.dim, config.seed,
                                   config.init_stddev);
  }
  TextClassifier model(std::move(class_names), std::move(table));
  SoftmaxClassifier& clf = model.classifier();
  EmbeddingTable& emb = model.table();
  const std::size_t d = emb.dim();

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> rows;
  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(combine_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    double total = 0.0;
    for (std::size_t idx : order) {
      const ClfExample& ex = examples[idx];
      const double lr =
          config.learning_rate / (1.0 + config.decay * static_cast<double>(step));
      const auto x = embed_sentence(ex.tokens, emb);
      const LossGradient g = adversarial_loss(clf, x, ex.label, adv);
      if (!std::isfinite(g.loss)) {
        throw DivergenceError("classifier training diverged at epoch " +
                              std::to_string(epoch + 1) + ", step " +
                              std::to_string(step));
      }
      total += g.loss;
      auto w = clf.weights();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * g.d_weights[i];
      auto b = clf.bias();
      for (std::size_t c = 0; c < b.size(); ++c) b[c] -= lr * g.d_bias[c];
      if (config.train_embeddings && !ex.tokens.empty()) {
        const double share = lr / static_cast<double>(ex.tokens.size());
        for (const auto& t : ex.tokens) {
          auto row = emb.row(emb.row_of(t));
          for (std::size_t i = 0; i < d; ++i) row[i] -= share * g.d_input[i];
        }
      }
      ++step;
    }
    const double mean = total / static_cast<double>(examples.size());
    if (!std::isfinite(mean)) {
      throw DivergenceError("classifier loss is not finite after epoch " +
                            std::to_string(epoch + 1));
    }
    if (on_epoch) on_epoch(epoch + 1, mean);
  }
  return model;
}

}  // namespace cfaug::textclf
