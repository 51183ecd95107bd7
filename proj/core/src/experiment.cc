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

#include "cfaug/experiment.h"

#include <algorithm>
#include <set>

#include "cfaug/error.h"
#include "cfaug/io.h"
#include "cfaug/text.h"

namespace cfaug {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> words_of(const LabeledSentence& sentence) {
  std::vector<std::string> words;
  words.reserve(sentence.tokens.size());
  for (const auto& t : sentence.tokens) words.push_back(t.text);
  return words;
}

fs::path resolve(const IniConfig& ini, const std::string& key,
                 const fs::path& base_dir) {
  auto value = ini.get(key);
  if (!value || value->empty()) return {};
  fs::path p(*value);
  return p.is_absolute() ? p : base_dir / p;
}

std::string smallest_class(std::span<const LabeledSentence> sentences,
                           const LabelSchema& schema) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : schema.categories()) counts[c] = 0;
  for (const auto& s : sentences) {
    if (schema.is_category(s.sentence_label)) ++counts[s.sentence_label];
  }
  std::string best;
  std::size_t best_count = 0;
  for (const auto& c : schema.categories()) {
    if (counts[c] == 0) continue;
    if (best.empty() || counts[c] < best_count) {
      best = c;
      best_count = counts[c];
    }
  }
  if (best.empty()) throw ConfigError("training data has no category sentences");
  return best;
}

}  // namespace

AbbreviationList load_abbreviations(const fs::path& path) {
  return path.empty() ? AbbreviationList::bundled()
                      : AbbreviationList::parse(read_file(path));
}

ResourceBundle::ResourceBundle(const ResourcePaths& paths,
                               std::span<const LabeledSentence> train_sentences,
                               const LlmSettings& llm) {
  if (paths.verbs.empty() && paths.verb_stoplist.empty()) {
    lexicon_ = VerbLexicon::bundled();
  } else {
    const std::string verbs = paths.verbs.empty()
                                  ? VerbLexicon::bundled().serialize()
                                  : read_file(paths.verbs);
    std::set<std::string, std::less<>> stoplist =
        paths.verb_stoplist.empty() ? VerbLexicon::bundled().stoplist()
                                    : VerbLexicon::parse_stoplist(
                                          read_file(paths.verb_stoplist));
    lexicon_ = VerbLexicon::parse(verbs, paths.verbs.string(), std::move(stoplist));
  }
  antonyms_ = paths.antonyms.empty()
                  ? AntonymLexicon::bundled()
                  : AntonymLexicon::parse(read_file(paths.antonyms),
                                          paths.antonyms.string());
  abbreviations_ = load_abbreviations(paths.abbreviations);
  entities_ = paths.entities.empty()
                  ? EntityDictionary::build(train_sentences, annotator_)
                  : EntityDictionary::parse(read_file(paths.entities),
                                            paths.entities.string());
  verb_pool_ = collect_verb_pool(train_sentences, lexicon_);
  if (llm.offline) {
    llm_ = std::make_unique<MockLlmClient>(
        MockLlmClient::Responder(offline_contradiction));
  } else {
    if (llm.endpoint.empty()) {
      throw ConfigError("online LLM augmentation needs an endpoint");
    }
    llm_ = std::make_unique<HttpLlmClient>(HttpLlmOptions{.endpoint = llm.endpoint});
  }
}

AugmentResources ResourceBundle::view() const {
  AugmentResources r;
  r.lexicon = &lexicon_;
  r.verb_pool = verb_pool_;
  r.antonyms = &antonyms_;
  r.annotator = &annotator_;
  r.entities = &entities_;
  r.llm = llm_.get();
  return r;
}

std::vector<std::string> collect_verb_pool(std::span<const LabeledSentence> sentences,
                                           const VerbLexicon& lexicon) {
  std::vector<std::string> pool;
  std::set<std::string, std::less<>> seen;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) {
      auto reading = detect_verb(t.text, lexicon);
      if (reading && seen.insert(reading->base).second) pool.push_back(reading->base);
    }
  }
  return pool;
}

std::string offline_contradiction(const std::string& prompt) {
  const auto first = prompt.find('"');
  const auto last = prompt.rfind('"');
  std::string sentence = first != std::string::npos && last > first
                             ? prompt.substr(first + 1, last - first - 1)
                             : prompt;
  sentence = std::string(text::trim(sentence));
  if (sentence.empty()) return {};
  if (sentence.size() > 1 && text::is_ascii_upper(sentence[0]) &&
      !text::is_ascii_upper(sentence[1])) {
    sentence[0] = static_cast<char>(sentence[0] - 'A' + 'a');
  }
  return "It is simply not true that " + sentence;
}

ModelConfig ModelConfig::from_ini(const IniConfig& ini, const std::string& section) {
  const std::string p = section + ".";
  ModelConfig m;
  const std::string kind = ini.get_or(p + "kind", "textclf");
  if (kind == "crf") {
    m.kind = ModelKind::kCrf;
  } else if (kind == "textclf") {
    m.kind = ModelKind::kTextClf;
  } else {
    throw ConfigError("model kind must be crf or textclf, got '" + kind + "'");
  }
  if (m.kind == ModelKind::kCrf) {
    m.crf.epochs = ini.get_u64_or(p + "epochs", m.crf.epochs);
    m.crf.learning_rate = ini.get_double_or(p + "learning_rate", m.crf.learning_rate);
    m.crf.decay = ini.get_double_or(p + "decay", m.crf.decay);
    m.crf.l2 = ini.get_double_or(p + "l2", m.crf.l2);
  } else {
    m.clf.epochs = ini.get_u64_or(p + "epochs", m.clf.epochs);
    m.clf.learning_rate = ini.get_double_or(p + "learning_rate", m.clf.learning_rate);
    m.clf.decay = ini.get_double_or(p + "decay", m.clf.decay);
    m.clf.dim = ini.get_u64_or(p + "dim", m.clf.dim);
    m.clf.init_stddev = ini.get_double_or(p + "init_stddev", m.clf.init_stddev);
    m.clf.train_embeddings =
        ini.get_bool_or(p + "train_embeddings", m.clf.train_embeddings);
    m.adv.epsilon = ini.get_double_or(p + "epsilon", m.adv.epsilon);
    m.adv.adv_weight = ini.get_double_or(p + "adv_weight", m.adv.adv_weight);
  }
  m.validate();
  return m;
}

void ModelConfig::validate() const {
  if (kind == ModelKind::kCrf) {
    crf.validate();
  } else {
    clf.validate();
    adv.validate();
  }
}

MetricsReport train_and_evaluate(std::span<const LabeledSentence> train,
                                 std::span<const LabeledSentence> dev,
                                 const LabelSchema& schema,
                                 const ModelConfig& model, std::uint64_t seed) {
  model.validate();
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  for (const auto& s : dev) {
    gold.insert(gold.end(), s.token_labels.begin(), s.token_labels.end());
  }
  if (model.kind == ModelKind::kCrf) {
    crf::TrainConfig config = model.crf;
    config.seed = seed;
    crf::CrfTagger tagger(schema.labels());
    tagger.fit(train, config);
    for (const auto& s : dev) {
      auto labels = tagger.predict(s.tokens);
      pred.insert(pred.end(), labels.begin(), labels.end());
    }
  } else {
    std::vector<textclf::ClfExample> examples;
    examples.reserve(train.size());
    for (const auto& s : train) {
      examples.push_back({words_of(s), schema.require_index(s.sentence_label)});
    }
    textclf::ClfTrainConfig config = model.clf;
    config.seed = seed;
    const auto clf =
        textclf::train_classifier(examples, schema.labels(), config, model.adv);
    for (const auto& s : dev) {
      const std::string& label = schema.label(clf.predict(words_of(s)));
      pred.insert(pred.end(), s.tokens.size(), label);
    }
  }
  return score(gold, pred, schema);
}

ExperimentConfig ExperimentConfig::from_ini(const IniConfig& ini,
                                            const fs::path& base_dir) {
  ExperimentConfig c;
  c.train = resolve(ini, "data.train", base_dir);
  c.dev = resolve(ini, "data.dev", base_dir);
  c.schema = resolve(ini, "data.schema", base_dir);
  c.resources.verbs = resolve(ini, "data.verbs", base_dir);
  c.resources.verb_stoplist = resolve(ini, "data.verb_stoplist", base_dir);
  c.resources.antonyms = resolve(ini, "data.antonyms", base_dir);
  c.resources.abbreviations = resolve(ini, "data.abbreviations", base_dir);
  c.resources.entities = resolve(ini, "data.entities", base_dir);
  c.methods = ini.get_list("augment.methods");
  if (c.methods.empty()) c.methods = {std::string(kNoAugmentation)};
  c.target_class = ini.get_or("augment.target_class", "");
  c.n_samples = ini.get_u64_or("augment.n_samples", c.n_samples);
  c.per_sentence = ini.get_u64_or("augment.per_sentence", c.per_sentence);
  c.threads = ini.get_u64_or("augment.threads", c.threads);
  c.llm.offline = ini.get_bool_or("augment.offline", true);
  c.llm.endpoint = ini.get_or("augment.llm_endpoint", "");
  c.llm.in_flight = ini.get_u64_or("augment.llm_in_flight", c.llm.in_flight);
  c.model = ModelConfig::from_ini(ini, "model");
  c.seed = ini.require_u64("run.seed");
  c.output_dir = resolve(ini, "run.output_dir", base_dir);
  if (c.output_dir.empty()) c.output_dir = base_dir / "results";
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  return from_ini(IniConfig::load(path), path.parent_path());
}

void ExperimentConfig::validate() const {
  auto require_file = [](const fs::path& p, const std::string& what) {
    if (p.empty()) throw ConfigError("experiment config lacks " + what);
    if (!fs::exists(p)) {
      throw IoError("cannot open " + what + " '" + p.string() + "'");
    }
  };
  require_file(train, "data.train");
  require_file(dev, "data.dev");
  require_file(schema, "data.schema");
  for (const auto* p : {&resources.verbs, &resources.verb_stoplist,
                        &resources.antonyms, &resources.abbreviations,
                        &resources.entities}) {
    if (!p->empty() && !fs::exists(*p)) {
      throw IoError("cannot open resource '" + p->string() + "'");
    }
  }
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (!seen.insert(m).second) throw ConfigError("method '" + m + "' listed twice");
    if (m == kNoAugmentation) continue;
    auto parsed = parse_method(m);
    if (!parsed) throw ConfigError("unknown augmentation method '" + m + "'");
    if (*parsed == AugmentMethod::kBat && model.kind != ModelKind::kTextClf) {
      throw ConfigError("BAT needs model kind textclf");
    }
  }
  if (n_samples == 0 || per_sentence == 0) {
    throw ConfigError("n_samples and per_sentence must be positive");
  }
  model.validate();
}

MetricsReport run_method(const std::string& method,
                         std::span<const LabeledSentence> train,
                         std::span<const LabeledSentence> dev,
                         const LabelSchema& schema, const ExperimentConfig& config,
                         const ResourceBundle& resources, std::size_t* augmented) {
  const std::uint64_t model_seed = combine_seed(config.seed, std::string_view("model"));
  if (augmented != nullptr) *augmented = 0;
  // epsilon and adv_weight belong to BAT only.
  ModelConfig plain = config.model;
  plain.adv = {};
  if (method == kNoAugmentation) {
    return train_and_evaluate(train, dev, schema, plain, model_seed);
  }
  const auto parsed = parse_method(method);
  if (!parsed) throw ConfigError("unknown augmentation method '" + method + "'");
  if (*parsed == AugmentMethod::kBat) {
    ModelConfig model = config.model;
    if (model.kind != ModelKind::kTextClf) {
      throw ConfigError("BAT needs model kind textclf");
    }
    if (model.adv.epsilon == 0.0 && model.adv.adv_weight == 0.0) {
      model.adv = {.epsilon = 0.05, .adv_weight = 0.5};
    }
    return train_and_evaluate(train, dev, schema, model, model_seed);
  }

  AugmentConfig aug;
  aug.target_class =
      config.target_class.empty() ? smallest_class(train, schema) : config.target_class;
  aug.n_samples = config.n_samples;
  aug.per_sentence = config.per_sentence;
  aug.method = *parsed;
  aug.master_seed = combine_seed(config.seed, std::string_view("augment"));
  aug.threads = config.threads;
  aug.llm_in_flight = config.llm.in_flight;
  const AugmentReport report = augment_minority(train, aug, resources.view());
  std::vector<LabeledSentence> combined(train.begin(), train.end());
  for (const auto& s : report.samples) combined.push_back(s.sentence);
  if (augmented != nullptr) *augmented = report.samples.size();
  return train_and_evaluate(combined, dev, schema, plain, model_seed);
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* log) {
  config.validate();
  const LabelSchema schema = LabelSchema::load(config.schema);
  const Dataset train_data = load_token_label_file(config.train, schema);
  const Dataset dev_data = load_token_label_file(config.dev, schema);
  const AbbreviationList abbreviations =
      load_abbreviations(config.resources.abbreviations);
  const auto train = split_dataset(train_data, abbreviations);
  const auto dev = split_dataset(dev_data, abbreviations);
  const ResourceBundle resources(config.resources, train, config.llm);

  ExperimentResult result;
  for (const auto& method : config.methods) {
    std::size_t augmented = 0;
    result.reports[method] =
        run_method(method, train, dev, schema, config, resources, &augmented);
    result.augmented[method] = augmented;
    if (log != nullptr) {
      *log << method << ": " << augmented << " augmented, macro F1 "
           << result.reports[method].macro_f1 << "\n";
    }
  }
  result.comparison = compare(result.reports);
  return result;
}

void write_experiment_outputs(const ExperimentResult& result,
                              const fs::path& output_dir) {
  fs::create_directories(output_dir);
  for (const auto& [method, report] : result.reports) {
    write_file_atomic(output_dir / ("report_" + method + ".json"), report_json(report));
    write_file_atomic(output_dir / ("report_" + method + ".txt"), report_table(report));
  }
  write_file_atomic(output_dir / "comparison.json", comparison_json(result.comparison));
  write_file_atomic(output_dir / "comparison.txt", comparison_table(result.comparison));
}

}  // namespace cfaug
