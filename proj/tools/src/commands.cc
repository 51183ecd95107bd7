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

#include "cfaug_tools/commands.h"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "cfaug/augment.h"
#include "cfaug/config.h"
#include "cfaug/corpus.h"
#include "cfaug/crf.h"
#include "cfaug/error.h"
#include "cfaug/eval.h"
#include "cfaug/experiment.h"
#include "cfaug/fixture.h"
#include "cfaug/io.h"
#include "cfaug/senttok.h"
#include "cfaug/text.h"
#include "cfaug/textclf.h"

namespace cfaug::cli {

namespace {

using nlohmann::ordered_json;

// Labels in first-seen order from the second column of a token-label file.
LabelSchema infer_schema(std::string_view contents, const std::string& outside) {
  std::vector<std::string> categories;
  std::set<std::string, std::less<>> seen;
  for (auto line : text::split(contents, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    const std::string label(text::trim(line.substr(tab + 1)));
    if (label.empty() || label == outside || !seen.insert(label).second) continue;
    categories.push_back(label);
  }
  std::sort(categories.begin(), categories.end());
  if (categories.empty()) categories.push_back("_");
  return LabelSchema(outside, std::move(categories));
}

std::vector<LabeledSentence> load_sentences(const fs::path& data,
                                            const LabelSchema& schema,
                                            const AbbreviationList& abbreviations) {
  return split_dataset(load_token_label_file(data, schema), abbreviations);
}

// Augmented corpora hold one sentence per document; they are not re-split
// because inserted marks may look like sentence ends.
std::vector<LabeledSentence> load_whole_documents(const fs::path& path,
                                                  const LabelSchema& schema) {
  std::vector<LabeledSentence> out;
  for (auto& doc : load_token_label_file(path, schema).documents) {
    LabeledSentence s;
    s.doc_id = doc.id;
    s.text = std::move(doc.text);
    s.tokens = std::move(doc.tokens);
    s.token_labels = std::move(doc.token_labels);
    if (s.tokens.empty()) continue;
    s.sentence_label = majority_label(s.token_labels, schema);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> words_of(const LabeledSentence& s) {
  std::vector<std::string> words;
  for (const auto& t : s.tokens) words.push_back(t.text);
  return words;
}

fs::path from_config(const IniConfig& ini, const std::string& key,
                     const fs::path& base_dir) {
  auto value = ini.get(key);
  if (!value || value->empty()) return {};
  const fs::path p(*value);
  return p.is_absolute() ? p : base_dir / p;
}

void pick_path(fs::path& target, const IniConfig& ini, const std::string& key,
               const fs::path& base_dir) {
  if (target.empty()) target = from_config(ini, key, base_dir);
}

IniConfig load_optional_config(const fs::path& path) {
  return path.empty() ? IniConfig{} : IniConfig::load(path);
}

fs::path require_path(const fs::path& p, const std::string& what) {
  if (p.empty()) throw ConfigError("missing " + what);
  return p;
}

void print_failures(std::ostream& os, const std::map<std::string, std::size_t>& failures) {
  bool first = true;
  for (const auto& [name, count] : failures) {
    os << (first ? "" : ", ") << name << "=" << count;
    first = false;
  }
  if (first) os << "none";
}

}  // namespace

int guarded(const Streams& io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const SchemaError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const AugmentationError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitNothingAugmented;
  } catch (const DivergenceError& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_stats(const StatsOptions& options, const Streams& io) {
  const std::string contents = read_file(options.input);
  const LabelSchema schema = options.schema.empty()
                                 ? infer_schema(contents, options.outside)
                                 : LabelSchema::load(options.schema);
  const Dataset data =
      parse_token_label_file(contents, schema, options.input.string());
  CorpusStats stats = dataset_stats(data);
  if (options.schema.empty()) stats.label_dist.erase("_");
  if (options.format == Format::kJson) {
    ordered_json j = {{"n_texts", stats.n_texts},
                      {"n_tokens", stats.n_tokens},
                      {"n_unique_words", stats.n_unique_words},
                      {"max_length", stats.max_length},
                      {"label_dist", stats.label_dist}};
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "texts         " << stats.n_texts << "\n"
           << "tokens        " << stats.n_tokens << "\n"
           << "unique words  " << stats.n_unique_words << "\n"
           << "max length    " << stats.max_length << "\n"
           << "labels\n";
    for (const auto& [label, count] : stats.label_dist) {
      io.out << "  " << label << "  " << count << "\n";
    }
  }
  return kExitOk;
}

int cmd_split(const SplitOptions& options, const Streams& io) {
  const LabelSchema schema = LabelSchema::load(require_path(options.schema, "--schema"));
  const auto sentences = load_sentences(options.input, schema,
                                        load_abbreviations(options.abbreviations));
  const PurityStats purity = purity_stats(sentences);
  if (!options.output.empty()) {
    std::vector<Document> docs;
    for (const auto& s : sentences) {
      Document d;
      d.id = s.doc_id + "#" + std::to_string(s.sent_index);
      d.text = s.text;
      d.tokens = s.tokens;
      d.token_labels = s.token_labels;
      docs.push_back(std::move(d));
    }
    write_file_atomic(options.output, serialize_token_label_file(docs));
  }
  if (!options.labels.empty()) {
    std::string table = "doc_id\tsent_index\tlabel\ttext\n";
    for (const auto& s : sentences) {
      table += s.doc_id + "\t" + std::to_string(s.sent_index) + "\t" +
               s.sentence_label + "\t" + s.text + "\n";
    }
    write_file_atomic(options.labels, table);
  }
  if (options.format == Format::kJson) {
    ordered_json j = {{"n_sentences", purity.n_sentences},
                      {"n_uniform", purity.n_uniform},
                      {"uniform_fraction", purity.uniform_fraction()},
                      {"per_class", purity.per_class}};
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "sentences         " << purity.n_sentences << "\n"
           << "uniform sentences " << purity.n_uniform << " ("
           << 100.0 * purity.uniform_fraction() << "%)\n"
           << "sentences per class\n";
    for (const auto& [label, count] : purity.per_class) {
      io.out << "  " << label << "  " << count << "\n";
    }
  }
  return kExitOk;
}

int cmd_build_lexicons(const BuildLexiconsOptions& options, const Streams& io) {
  const LabelSchema schema = LabelSchema::load(require_path(options.schema, "--schema"));
  const auto sentences = load_sentences(options.train, schema,
                                        load_abbreviations(options.abbreviations));
  const VerbLexicon lexicon = VerbLexicon::bundled();
  const auto pool = collect_verb_pool(sentences, lexicon);
  const PatternEntityAnnotator annotator;
  const EntityDictionary entities = EntityDictionary::build(sentences, annotator);
  const fs::path dir = require_path(options.out_dir, "--out-dir");
  fs::create_directories(dir);
  write_file_atomic(dir / "verb_pool.txt", text::join(pool, "\n") + "\n");
  write_file_atomic(dir / "entities.tsv", entities.serialize());
  io.out << "verbs     " << pool.size() << " -> " << (dir / "verb_pool.txt").string()
         << "\n"
         << "entities  " << entities.size() << " -> "
         << (dir / "entities.tsv").string() << "\n";
  return kExitOk;
}

int cmd_augment(const AugmentOptions& options, const Streams& io) {
  const IniConfig ini = load_optional_config(options.config);
  const fs::path base = options.config.parent_path();
  AugmentOptions o = options;
  pick_path(o.train, ini, "data.train", base);
  pick_path(o.schema, ini, "data.schema", base);
  pick_path(o.verbs, ini, "data.verbs", base);
  pick_path(o.antonyms, ini, "data.antonyms", base);
  pick_path(o.entities, ini, "data.entities", base);
  pick_path(o.abbreviations, ini, "data.abbreviations", base);
  pick_path(o.output, ini, "run.output", base);
  pick_path(o.manifest, ini, "run.manifest", base);

  AugmentConfig config;
  const std::string method = o.method.value_or(ini.get_or("augment.method", "VR_Random"));
  const auto parsed = parse_method(method);
  if (!parsed) throw ConfigError("unknown augmentation method '" + method + "'");
  config.method = *parsed;
  config.n_samples = o.n_samples.value_or(ini.get_u64_or("augment.n_samples", 100));
  config.per_sentence = o.per_sentence.value_or(ini.get_u64_or("augment.per_sentence", 1));
  config.threads = o.threads.value_or(ini.get_u64_or("augment.threads", 1));
  config.llm_in_flight = ini.get_u64_or("augment.llm_in_flight", 4);
  if (o.seed) {
    config.master_seed = *o.seed;
  } else if (ini.has("run.seed")) {
    config.master_seed = ini.require_u64("run.seed");
  } else {
    throw ConfigError("augment needs a seed (--seed or [run] seed)");
  }
  const fs::path output = require_path(o.output, "--output");
  const fs::path manifest =
      o.manifest.empty() ? fs::path(output.string() + ".manifest.jsonl") : o.manifest;

  const LabelSchema schema = LabelSchema::load(require_path(o.schema, "--schema"));
  const AbbreviationList abbreviations = load_abbreviations(o.abbreviations);
  const auto sentences = load_sentences(require_path(o.train, "--train"), schema,
                                        abbreviations);
  config.target_class =
      o.target_class.value_or(ini.get_or("augment.target_class", ""));
  if (config.target_class.empty()) {
    throw ConfigError("augment needs a target class (--target or [augment] target_class)");
  }
  if (!schema.is_category(config.target_class)) {
    throw ConfigError("target class '" + config.target_class + "' is not a category");
  }

  ResourcePaths paths;
  paths.verbs = o.verbs;
  paths.antonyms = o.antonyms;
  paths.entities = o.entities;
  paths.abbreviations = o.abbreviations;
  LlmSettings llm;
  llm.offline = o.offline.value_or(ini.get_bool_or("augment.offline", true));
  llm.endpoint = o.llm_endpoint.empty() ? ini.get_or("augment.llm_endpoint", "")
                                        : o.llm_endpoint;
  llm.in_flight = config.llm_in_flight;
  const ResourceBundle resources(paths, sentences, llm);

  const AugmentReport report = augment_minority(sentences, config, resources.view());
  write_file_atomic(output, serialize_augmented_corpus(report.samples));
  write_file_atomic(manifest, serialize_manifest(report.samples));

  if (options.format == Format::kJson) {
    ordered_json j = {{"method", method_name(config.method)},
                      {"target_class", config.target_class},
                      {"requested", report.requested},
                      {"produced", report.samples.size()},
                      {"sources_tried", report.sources_tried},
                      {"failures", report.failures},
                      {"output", output.string()},
                      {"manifest", manifest.string()}};
    io.out << j.dump(2) << "\n";
  } else {
    io.out << "method     " << method_name(config.method) << "\n"
           << "target     " << config.target_class << "\n"
           << "requested  " << report.requested << "\n"
           << "produced   " << report.samples.size() << "\n"
           << "sources    " << report.sources_tried << "\n"
           << "failures   ";
    print_failures(io.out, report.failures);
    io.out << "\n";
  }
  return kExitOk;
}

namespace {

struct TrainInputs {
  LabelSchema schema;
  std::vector<LabeledSentence> sentences;
  ModelConfig model;
  std::uint64_t seed = 0;
  fs::path model_out;
};

TrainInputs prepare_training(const TrainOptions& options, ModelKind kind) {
  IniConfig ini = load_optional_config(options.config);
  const fs::path base = options.config.parent_path();
  TrainOptions o = options;
  pick_path(o.train, ini, "data.train", base);
  pick_path(o.schema, ini, "data.schema", base);
  pick_path(o.abbreviations, ini, "data.abbreviations", base);
  pick_path(o.model_out, ini, "run.model_out", base);
  if (o.augmented.empty()) {
    for (const auto& p : ini.get_list("data.augmented")) {
      const fs::path path(p);
      o.augmented.push_back(path.is_absolute() ? path : base / path);
    }
  }
  ini.set("model.kind", kind == ModelKind::kCrf ? "crf" : "textclf");
  if (o.epochs) ini.set("model.epochs", std::to_string(*o.epochs));
  if (o.learning_rate) ini.set("model.learning_rate", std::to_string(*o.learning_rate));
  if (o.l2) ini.set("model.l2", std::to_string(*o.l2));
  if (o.epsilon) ini.set("model.epsilon", std::to_string(*o.epsilon));
  if (o.adv_weight) ini.set("model.adv_weight", std::to_string(*o.adv_weight));

  TrainInputs in;
  in.model = ModelConfig::from_ini(ini, "model");
  if (o.seed) {
    in.seed = *o.seed;
  } else if (ini.has("run.seed")) {
    in.seed = ini.require_u64("run.seed");
  } else {
    throw ConfigError("training needs a seed (--seed or [run] seed)");
  }
  in.model_out = require_path(o.model_out, "--model-out");
  in.schema = LabelSchema::load(require_path(o.schema, "--schema"));
  in.sentences = load_sentences(require_path(o.train, "--train"), in.schema,
                                load_abbreviations(o.abbreviations));
  for (const auto& extra : o.augmented) {
    auto more = load_whole_documents(extra, in.schema);
    in.sentences.insert(in.sentences.end(), more.begin(), more.end());
  }
  if (in.sentences.empty()) throw ConfigError("training data has no sentences");
  return in;
}

}  // namespace

int cmd_train_crf(const TrainOptions& options, const Streams& io) {
  const TrainInputs in = prepare_training(options, ModelKind::kCrf);
  crf::TrainConfig config = in.model.crf;
  config.seed = in.seed;
  crf::CrfTagger tagger(in.schema.labels());
  tagger.fit(in.sentences, config, [&](std::size_t epoch, double nll) {
    io.out << "epoch " << epoch << "  nll " << nll << "\n";
  });
  write_file_atomic(in.model_out, tagger.model().serialize());
  io.out << "model -> " << in.model_out.string() << " ("
         << tagger.model().num_attributes() << " attributes)\n";
  return kExitOk;
}

int cmd_train_clf(const TrainOptions& options, const Streams& io) {
  const TrainInputs in = prepare_training(options, ModelKind::kTextClf);
  std::vector<textclf::ClfExample> examples;
  for (const auto& s : in.sentences) {
    examples.push_back({words_of(s), in.schema.require_index(s.sentence_label)});
  }
  textclf::ClfTrainConfig config = in.model.clf;
  config.seed = in.seed;
  const auto model = textclf::train_classifier(
      examples, in.schema.labels(), config, in.model.adv, nullptr,
      [&](std::size_t epoch, double loss) {
        io.out << "epoch " << epoch << "  loss " << loss << "\n";
      });
  write_file_atomic(in.model_out, model.serialize());
  io.out << "model -> " << in.model_out.string() << " (" << model.table().rows()
         << " embedding rows)\n";
  return kExitOk;
}

int cmd_eval(const EvalOptions& options, const Streams& io) {
  const LabelSchema schema = LabelSchema::load(require_path(options.schema, "--schema"));
  const auto sentences = load_sentences(require_path(options.data, "--data"), schema,
                                        load_abbreviations(options.abbreviations));
  const std::string contents = read_file(require_path(options.model, "--model"));
  const std::string source = options.model.string();
  std::vector<std::string> gold;
  std::vector<std::string> pred;
  for (const auto& s : sentences) {
    gold.insert(gold.end(), s.token_labels.begin(), s.token_labels.end());
  }
  if (contents.starts_with("cfaug-crf")) {
    const crf::CrfTagger tagger(crf::CrfModel::parse(contents, source));
    for (const auto& s : sentences) {
      auto labels = tagger.predict(s.tokens);
      pred.insert(pred.end(), labels.begin(), labels.end());
    }
  } else if (contents.starts_with("cfaug-textclf")) {
    const auto model = textclf::TextClassifier::parse(contents, source);
    for (const auto& s : sentences) {
      const std::string& label = model.class_names().at(model.predict(words_of(s)));
      pred.insert(pred.end(), s.tokens.size(), label);
    }
  } else {
    throw ParseError(source, 1, "unrecognized model format");
  }
  const MetricsReport report = score(gold, pred, schema);
  if (!options.output.empty()) write_file_atomic(options.output, report_json(report));
  io.out << (options.format == Format::kJson ? report_json(report)
                                             : report_table(report));
  return kExitOk;
}

int cmd_compare(const CompareOptions& options, const Streams& io) {
  if (options.reports.empty()) throw ConfigError("compare needs at least one report");
  std::map<std::string, MetricsReport> reports;
  for (const auto& spec : options.reports) {
    std::string name;
    fs::path path;
    const auto eq = spec.find('=');
    if (eq != std::string::npos) {
      name = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    } else {
      path = spec;
      name = path.stem().string();
      if (name.starts_with("report_")) name = name.substr(7);
    }
    if (reports.count(name)) throw ConfigError("duplicate method name '" + name + "'");
    reports[name] = parse_report_json(read_file(path), path.string());
  }
  const Comparison comparison = compare(reports);
  if (!options.output.empty()) {
    write_file_atomic(options.output, comparison_json(comparison));
  }
  io.out << (options.format == Format::kJson ? comparison_json(comparison)
                                             : comparison_table(comparison));
  return kExitOk;
}

int cmd_make_fixture(const FixtureOptions& options, const Streams& io) {
  const fs::path dir = require_path(options.out_dir, "--out-dir");
  const Fixture fixture = make_fixture(FixtureConfig::scaled(options.divisor, options.seed));
  fs::create_directories(dir);
  write_file_atomic(dir / "train.tsv", serialize_token_label_file(fixture.train.documents));
  write_file_atomic(dir / "dev.tsv", serialize_token_label_file(fixture.dev.documents));
  write_file_atomic(dir / "schema.ini", fixture.schema.serialize());
  write_file_atomic(dir / "bookkeeping.json", fixture.bookkeeping_json());
  const std::string experiment =
      "; Baseline against 400 random verb replacements of the minority class.\n"
      "[data]\n"
      "train = train.tsv\n"
      "dev = dev.tsv\n"
      "schema = schema.ini\n"
      "\n"
      "[augment]\n"
      "methods = none, VR_Random\n"
      "target_class = " + std::string(kFixtureMinority) + "\n"
      "n_samples = 400\n"
      "per_sentence = 1\n"
      "\n"
      "[model]\n"
      "kind = textclf\n"
      "\n"
      "[run]\n"
      "seed = " + std::to_string(options.seed) + "\n"
      "output_dir = results\n";
  write_file_atomic(dir / "experiment.ini", experiment);
  io.out << "train  " << fixture.train_stats.n_sentences << " sentences in "
         << fixture.train_stats.n_texts << " texts\n"
         << "dev    " << fixture.dev_stats.n_sentences << " sentences in "
         << fixture.dev_stats.n_texts << " texts\n"
         << "wrote train.tsv, dev.tsv, schema.ini, bookkeeping.json, experiment.ini to "
         << dir.string() << "\n";
  return kExitOk;
}

int cmd_run_experiment(const ExperimentOptions& options, const Streams& io) {
  ExperimentConfig config =
      ExperimentConfig::load(require_path(options.config, "--config"));
  if (options.seed) config.seed = *options.seed;
  if (options.offline) config.llm.offline = *options.offline;
  if (options.threads) config.threads = *options.threads;
  if (!options.output_dir.empty()) config.output_dir = options.output_dir;
  const ExperimentResult result = run_experiment(config, &io.err);
  write_experiment_outputs(result, config.output_dir);
  io.out << (options.format == Format::kJson ? comparison_json(result.comparison)
                                             : comparison_table(result.comparison));
  return kExitOk;
}

}  // namespace cfaug::cli
