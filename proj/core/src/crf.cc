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

#include "cfaug/crf.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "cfaug/error.h"
#include "cfaug/rng.h"
#include "cfaug/text.h"

namespace cfaug::crf {

namespace {

constexpr std::string_view kBos = "<BOS>";
constexpr std::string_view kFormatHeader = "cfaug-crf 1";

std::string_view template_name(FeatureTemplate t) {
  switch (t) {
    case FeatureTemplate::kWord:
      return "w";
    case FeatureTemplate::kSuffix1:
      return "suf1";
    case FeatureTemplate::kSuffix2:
      return "suf2";
    case FeatureTemplate::kSuffix3:
      return "suf3";
    case FeatureTemplate::kUpperInitial:
      return "capInit";
    case FeatureTemplate::kAllUpper:
      return "allCap";
    case FeatureTemplate::kDigit:
      return "digit";
  }
  return "?";
}

std::optional<FeatureTemplate> parse_template(std::string_view name) {
  for (auto t : FeatureConfig{}.templates) {
    if (template_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string suffix(std::string_view word, std::size_t k) {
  return std::string(word.size() <= k ? word : word.substr(word.size() - k));
}

std::string template_value(FeatureTemplate t, std::string_view word) {
  switch (t) {
    case FeatureTemplate::kWord:
      return std::string(word);
    case FeatureTemplate::kSuffix1:
      return suffix(word, 1);
    case FeatureTemplate::kSuffix2:
      return suffix(word, 2);
    case FeatureTemplate::kSuffix3:
      return suffix(word, 3);
    case FeatureTemplate::kUpperInitial:
      return text::starts_upper(word) ? "1" : "0";
    case FeatureTemplate::kAllUpper:
      return text::is_all_upper(word) ? "1" : "0";
    case FeatureTemplate::kDigit:
      return text::is_all_digits(word) ? "1" : "0";
  }
  return {};
}

double log_sum_exp(std::span<const double> xs) {
  double max = -std::numeric_limits<double>::infinity();
  for (double x : xs) max = std::max(max, x);
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - max);
  return max + std::log(sum);
}

// Weights are `scale * raw`; training keeps a running scale so the L2 decay
// does not touch every parameter on every step.
struct WeightView {
  std::span<const double> raw;
  double scale = 1.0;
  double operator[](std::size_t i) const { return scale * raw[i]; }
};

// Row-major n x L emission scores.
std::vector<double> emission_scores(const CrfModel& model, WeightView w,
                                    const Instance& instance) {
  const std::size_t n_labels = model.num_labels();
  std::vector<double> scores(instance.size() * n_labels, 0.0);
  for (std::size_t t = 0; t < instance.size(); ++t) {
    double* row = &scores[t * n_labels];
    for (std::size_t a : instance.attributes[t]) {
      const std::size_t base = model.emission_index(a, 0);
      for (std::size_t y = 0; y < n_labels; ++y) row[y] += w[base + y];
    }
  }
  return scores;
}

std::vector<double> transition_scores(const CrfModel& model, WeightView w) {
  const std::size_t n_labels = model.num_labels();
  std::vector<double> trans(n_labels * n_labels);
  for (std::size_t i = 0; i < trans.size(); ++i) trans[i] = w[i];
  return trans;
}

struct Lattice {
  std::size_t n = 0;
  std::size_t labels = 0;
  std::vector<double> emit;
  std::vector<double> trans;
  std::vector<double> alpha;
  std::vector<double> beta;
  double log_z = 0.0;
};

Lattice forward_backward(const CrfModel& model, WeightView w,
                         const Instance& instance, bool with_beta) {
  Lattice lat;
  lat.n = instance.size();
  lat.labels = model.num_labels();
  const std::size_t L = lat.labels;
  lat.emit = emission_scores(model, w, instance);
  lat.trans = transition_scores(model, w);
  if (lat.n == 0) return lat;
  lat.alpha.assign(lat.n * L, 0.0);
  std::vector<double> terms(L);
  for (std::size_t y = 0; y < L; ++y) lat.alpha[y] = lat.emit[y];
  for (std::size_t t = 1; t < lat.n; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t p = 0; p < L; ++p) {
        terms[p] = lat.alpha[(t - 1) * L + p] + lat.trans[p * L + y];
      }
      lat.alpha[t * L + y] = lat.emit[t * L + y] + log_sum_exp(terms);
    }
  }
  lat.log_z = log_sum_exp(std::span(lat.alpha).subspan((lat.n - 1) * L, L));
  if (!with_beta) return lat;
  lat.beta.assign(lat.n * L, 0.0);
  for (std::size_t t = lat.n - 1; t-- > 0;) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t next = 0; next < L; ++next) {
        terms[next] = lat.trans[y * L + next] + lat.emit[(t + 1) * L + next] +
                      lat.beta[(t + 1) * L + next];
      }
      lat.beta[t * L + y] = log_sum_exp(terms);
    }
  }
  return lat;
}

double gold_score(const Lattice& lat, std::span<const std::size_t> gold) {
  double score = 0.0;
  for (std::size_t t = 0; t < lat.n; ++t) {
    score += lat.emit[t * lat.labels + gold[t]];
    if (t > 0) score += lat.trans[gold[t - 1] * lat.labels + gold[t]];
  }
  return score;
}

void check_labels(const CrfModel& model, const Instance& instance,
                  std::span<const std::size_t> labels) {
  if (labels.size() != instance.size()) {
    throw ValidationError("label sequence length does not match instance");
  }
  for (std::size_t y : labels) {
    if (y >= model.num_labels()) throw ValidationError("label index out of range");
  }
}

// Calls add(index, value) for every nonzero entry of E[f] - f(gold), without
// the L2 term. Returns the unregularized NLL.
template <typename Add>
double accumulate_gradient(const CrfModel& model, WeightView w,
                           const Instance& instance,
                           std::span<const std::size_t> gold, Add&& add) {
  const Lattice lat = forward_backward(model, w, instance, true);
  if (lat.n == 0) return 0.0;
  const std::size_t L = lat.labels;
  std::vector<double> node(L);
  for (std::size_t t = 0; t < lat.n; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      node[y] = std::exp(lat.alpha[t * L + y] + lat.beta[t * L + y] - lat.log_z);
    }
    for (std::size_t a : instance.attributes[t]) {
      const std::size_t base = model.emission_index(a, 0);
      for (std::size_t y = 0; y < L; ++y) add(base + y, node[y]);
      add(base + gold[t], -1.0);
    }
    if (t == 0) continue;
    for (std::size_t p = 0; p < L; ++p) {
      for (std::size_t y = 0; y < L; ++y) {
        const double pair =
            std::exp(lat.alpha[(t - 1) * L + p] + lat.trans[p * L + y] +
                     lat.emit[t * L + y] + lat.beta[t * L + y] - lat.log_z);
        add(model.transition_index(p, y), pair);
      }
    }
    add(model.transition_index(gold[t - 1], gold[t]), -1.0);
  }
  return lat.log_z - gold_score(lat, gold);
}

void append_double(std::string& out, double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, ptr);
}

}  // namespace

std::vector<std::vector<std::string>> extract_features(
    std::span<const std::string> words, const FeatureConfig& config) {
  std::vector<std::vector<std::string>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto& feats = out[i];
    for (FeatureTemplate t : config.templates) {
      const std::string value = template_value(t, words[i]);
      feats.push_back(std::string(template_name(t)) + "=" + value);
      if (config.bigrams) {
        const std::string prev =
            i == 0 ? std::string(kBos) : template_value(t, words[i - 1]);
        feats.push_back(std::string(template_name(t)) + "[-1,0]=" + prev + "|" +
                        value);
      }
    }
  }
  return out;
}

CrfModel::CrfModel(std::vector<std::string> labels, FeatureConfig features)
    : labels_(std::move(labels)), features_(std::move(features)) {
  if (labels_.empty()) throw ConfigError("CRF needs at least one label");
  weights_.assign(labels_.size() * labels_.size(), 0.0);
}

std::optional<std::size_t> CrfModel::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> CrfModel::attribute_id(std::string_view name) const {
  auto it = attribute_ids_.find(std::string(name));
  if (it == attribute_ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t CrfModel::add_attribute(const std::string& name) {
  auto [it, inserted] = attribute_ids_.emplace(name, attribute_names_.size());
  if (inserted) {
    attribute_names_.push_back(name);
    weights_.resize(weights_.size() + labels_.size(), 0.0);
  }
  return it->second;
}

Instance CrfModel::encode(std::span<const std::string> words) const {
  Instance instance;
  for (const auto& feats : extract_features(words, features_)) {
    auto& ids = instance.attributes.emplace_back();
    for (const auto& f : feats) {
      if (auto id = attribute_id(f)) ids.push_back(*id);
    }
  }
  return instance;
}

Instance CrfModel::encode_and_register(std::span<const std::string> words) {
  Instance instance;
  for (const auto& feats : extract_features(words, features_)) {
    auto& ids = instance.attributes.emplace_back();
    for (const auto& f : feats) ids.push_back(add_attribute(f));
  }
  return instance;
}

std::string CrfModel::serialize() const {
  std::string out(kFormatHeader);
  out += "\nlabels";
  for (const auto& l : labels_) out += "\t" + l;
  out += "\ntemplates";
  for (auto t : features_.templates) out += "\t" + std::string(template_name(t));
  out += "\nbigrams\t";
  out += features_.bigrams ? "1" : "0";
  out += "\nl2\t";
  append_double(out, l2_);
  out += "\ntransitions\n";
  const std::size_t L = labels_.size();
  for (std::size_t p = 0; p < L; ++p) {
    for (std::size_t y = 0; y < L; ++y) {
      if (y > 0) out.push_back('\t');
      append_double(out, weights_[transition_index(p, y)]);
    }
    out.push_back('\n');
  }
  out += "attributes\t" + std::to_string(attribute_names_.size()) + "\n";
  for (std::size_t a = 0; a < attribute_names_.size(); ++a) {
    out += attribute_names_[a];
    for (std::size_t y = 0; y < L; ++y) {
      out.push_back('\t');
      append_double(out, weights_[emission_index(a, y)]);
    }
    out.push_back('\n');
  }
  return out;
}

CrfModel CrfModel::parse(std::string_view contents, const std::string& source) {
  const auto lines = text::split(contents, '\n');
  std::size_t n = 0;
  auto next_line = [&]() -> std::string_view {
    if (n >= lines.size()) throw ParseError(source, n, "unexpected end of model");
    return lines[n++];
  };
  auto fields = [&](std::string_view expected) {
    auto cols = text::split(next_line(), '\t');
    if (cols.empty() || cols[0] != expected) {
      throw ParseError(source, n, "expected '" + std::string(expected) + "'");
    }
    return std::vector<std::string_view>(cols.begin() + 1, cols.end());
  };
  auto number = [&](std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(source, n, "bad number '" + std::string(s) + "'");
    }
    return v;
  };

  if (next_line() != kFormatHeader) {
    throw ParseError(source, 1, "not a cfaug CRF model (version 1)");
  }
  std::vector<std::string> labels;
  for (auto l : fields("labels")) labels.emplace_back(l);
  FeatureConfig features;
  features.templates.clear();
  for (auto t : fields("templates")) {
    auto parsed = parse_template(t);
    if (!parsed) throw ParseError(source, n, "unknown template '" + std::string(t) + "'");
    features.templates.push_back(*parsed);
  }
  const auto bigrams = fields("bigrams");
  features.bigrams = !bigrams.empty() && bigrams[0] == "1";
  const auto l2 = fields("l2");
  if (l2.size() != 1) throw ParseError(source, n, "bad l2 line");

  CrfModel model(std::move(labels), std::move(features));
  model.l2_ = number(l2[0]);
  const std::size_t L = model.num_labels();
  fields("transitions");
  for (std::size_t p = 0; p < L; ++p) {
    auto cols = text::split(next_line(), '\t');
    if (cols.size() != L) throw ParseError(source, n, "bad transition row");
    for (std::size_t y = 0; y < L; ++y) {
      model.weights_[model.transition_index(p, y)] = number(cols[y]);
    }
  }
  const auto count = fields("attributes");
  if (count.size() != 1) throw ParseError(source, n, "bad attributes line");
  const auto n_attr = static_cast<std::size_t>(number(count[0]));
  for (std::size_t a = 0; a < n_attr; ++a) {
    auto cols = text::split(next_line(), '\t');
    if (cols.size() != L + 1) throw ParseError(source, n, "bad attribute row");
    const std::size_t id = model.add_attribute(std::string(cols[0]));
    if (id != a) throw ParseError(source, n, "duplicate attribute");
    for (std::size_t y = 0; y < L; ++y) {
      model.weights_[model.emission_index(id, y)] = number(cols[y + 1]);
    }
  }
  return model;
}

double sequence_score(const CrfModel& model, const Instance& instance,
                      std::span<const std::size_t> labels) {
  check_labels(model, instance, labels);
  Lattice lat;
  lat.n = instance.size();
  lat.labels = model.num_labels();
  lat.emit = emission_scores(model, {model.weights()}, instance);
  lat.trans = transition_scores(model, {model.weights()});
  return gold_score(lat, labels);
}

double log_partition(const CrfModel& model, const Instance& instance) {
  return forward_backward(model, {model.weights()}, instance, false).log_z;
}

std::vector<double> marginals(const CrfModel& model, const Instance& instance) {
  const Lattice lat = forward_backward(model, {model.weights()}, instance, true);
  std::vector<double> out(lat.n * lat.labels);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::exp(lat.alpha[i] + lat.beta[i] - lat.log_z);
  }
  return out;
}

NllGradient nll_and_gradient(const CrfModel& model, const Instance& instance,
                             std::span<const std::size_t> gold) {
  check_labels(model, instance, gold);
  NllGradient out;
  out.gradient.assign(model.dimension(), 0.0);
  out.nll = accumulate_gradient(
      model, {model.weights()}, instance, gold,
      [&](std::size_t i, double v) { out.gradient[i] += v; });
  const auto w = model.weights();
  if (model.l2() != 0.0) {
    double norm = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      norm += w[i] * w[i];
      out.gradient[i] += model.l2() * w[i];
    }
    out.nll += 0.5 * model.l2() * norm;
  }
  return out;
}

std::vector<std::size_t> viterbi(const CrfModel& model, const Instance& instance) {
  const std::size_t n = instance.size();
  const std::size_t L = model.num_labels();
  if (n == 0) return {};
  const auto emit = emission_scores(model, {model.weights()}, instance);
  const auto trans = transition_scores(model, {model.weights()});
  std::vector<double> delta(n * L);
  std::vector<std::size_t> back(n * L, 0);
  for (std::size_t y = 0; y < L; ++y) delta[y] = emit[y];
  for (std::size_t t = 1; t < n; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      std::size_t best = 0;
      double best_score = delta[(t - 1) * L] + trans[y];
      for (std::size_t p = 1; p < L; ++p) {
        const double s = delta[(t - 1) * L + p] + trans[p * L + y];
        if (s > best_score) {
          best_score = s;
          best = p;
        }
      }
      delta[t * L + y] = best_score + emit[t * L + y];
      back[t * L + y] = best;
    }
  }
  std::vector<std::size_t> path(n);
  std::size_t last = 0;
  for (std::size_t y = 1; y < L; ++y) {
    if (delta[(n - 1) * L + y] > delta[(n - 1) * L + last]) last = y;
  }
  path[n - 1] = last;
  for (std::size_t t = n - 1; t > 0; --t) path[t - 1] = back[t * L + path[t]];
  return path;
}

void TrainConfig::validate() const {
  if (epochs == 0) throw ConfigError("CRF epochs must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("CRF learning_rate must be positive");
  if (decay < 0.0) throw ConfigError("CRF decay must be >= 0");
  if (l2 < 0.0) throw ConfigError("CRF l2 must be >= 0");
}

TrainResult train(CrfModel& model, std::span<const TrainingExample> data,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  if (data.empty()) throw ConfigError("CRF training set is empty");
  for (const auto& ex : data) check_labels(model, ex.instance, ex.labels);
  model.set_l2(config.l2);

  std::span<double> raw = model.weights();
  double scale = 1.0;
  const double step_l2 = config.l2 / static_cast<double>(data.size());
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<std::size_t, double>> updates;
  std::uint64_t step = 0;
  TrainResult result;

  auto objective = [&]() {
    double total = 0.0;
    for (const auto& ex : data) {
      const Lattice lat =
          forward_backward(model, {raw, scale}, ex.instance, false);
      total += lat.log_z - gold_score(lat, ex.labels);
    }
    double norm = 0.0;
    for (double v : raw) norm += v * v;
    return total + 0.5 * config.l2 * scale * scale * norm;
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(combine_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const TrainingExample& ex = data[idx];
      const double lr =
          config.learning_rate / (1.0 + config.decay * static_cast<double>(step));
      updates.clear();
      const double nll = accumulate_gradient(
          model, {raw, scale}, ex.instance, ex.labels,
          [&](std::size_t i, double v) { updates.emplace_back(i, v); });
      if (!std::isfinite(nll)) {
        throw DivergenceError("CRF training diverged at epoch " +
                              std::to_string(epoch + 1) + ", step " +
                              std::to_string(step) + " (learning rate " +
                              std::to_string(lr) + ")");
      }
      scale *= 1.0 - lr * step_l2;
      if (!(scale > 0.0)) {
        throw DivergenceError("CRF L2 decay collapsed the weights; lower l2 or "
                              "learning_rate");
      }
      for (const auto& [i, g] : updates) raw[i] -= lr * g / scale;
      if (scale < 1e-9) {
        for (double& v : raw) v *= scale;
        scale = 1.0;
      }
      ++step;
    }
    const double nll = objective();
    if (!std::isfinite(nll)) {
      throw DivergenceError("CRF objective is not finite after epoch " +
                            std::to_string(epoch + 1));
    }
    result.epoch_nll.push_back(nll);
    if (on_epoch) on_epoch(epoch + 1, nll);
  }
  for (double& v : raw) v *= scale;
  return result;
}

namespace {

std::vector<std::string> words_of(std::span<const Token> tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(t.text);
  return words;
}

}  // namespace

TrainResult CrfTagger::fit(std::span<const LabeledSentence> sentences,
                           const TrainConfig& config,
                           const EpochCallback& on_epoch) {
  std::vector<TrainingExample> data;
  data.reserve(sentences.size());
  for (const auto& s : sentences) {
    TrainingExample ex;
    ex.instance = model_.encode_and_register(words_of(s.tokens));
    for (const auto& label : s.token_labels) {
      auto y = model_.label_index(label);
      if (!y) throw SchemaError("CRF: unknown label '" + label + "'");
      ex.labels.push_back(*y);
    }
    data.push_back(std::move(ex));
  }
  return train(model_, data, config, on_epoch);
}

std::vector<std::string> CrfTagger::predict(std::span<const Token> tokens) const {
  std::vector<std::string> out;
  for (std::size_t y : viterbi(model_, model_.encode(words_of(tokens)))) {
    out.push_back(model_.labels()[y]);
  }
  return out;
}

}  // namespace cfaug::crf
