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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cfaug_tools/commands.h"

namespace {

using cfaug::cli::Format;

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"table", Format::kTable},
                                        {"json", Format::kJson}},
          CLI::ignore_case));
}

template <typename T>
void add_optional(CLI::App* cmd, const std::string& name, std::optional<T>& target,
                  const std::string& help) {
  cmd->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = cfaug::cli;
  CLI::App app{"Counterfactual data augmentation for imbalanced text labeling"};
  app.require_subcommand(1);
  int code = cli::kExitOk;
  const cli::Streams io{std::cout, std::cerr};

  cli::StatsOptions stats;
  auto* c_stats = app.add_subcommand("stats", "Corpus statistics of a token-label file");
  c_stats->add_option("input", stats.input, "Token-label file")->required();
  c_stats->add_option("--schema", stats.schema, "Label schema (inferred if omitted)");
  c_stats->add_option("--outside", stats.outside, "Outside label when inferring");
  add_format(c_stats, stats.format);
  c_stats->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_stats(stats, io); }); });

  cli::SplitOptions split;
  auto* c_split = app.add_subcommand("split", "Split documents into labeled sentences");
  c_split->add_option("input", split.input, "Token-label file")->required();
  c_split->add_option("--schema", split.schema, "Label schema")->required();
  c_split->add_option("--abbreviations", split.abbreviations, "Abbreviation list");
  c_split->add_option("--output", split.output, "Sentences as a token-label file");
  c_split->add_option("--labels", split.labels, "Sentence label table");
  add_format(c_split, split.format);
  c_split->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_split(split, io); }); });

  cli::BuildLexiconsOptions lex;
  auto* c_lex = app.add_subcommand("build-lexicons", "Training verb pool and entity dictionary");
  c_lex->add_option("--train", lex.train, "Training token-label file")->required();
  c_lex->add_option("--schema", lex.schema, "Label schema")->required();
  c_lex->add_option("--abbreviations", lex.abbreviations, "Abbreviation list");
  c_lex->add_option("--out-dir", lex.out_dir, "Output directory")->required();
  c_lex->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_build_lexicons(lex, io); }); });

  cli::AugmentOptions aug;
  auto* c_aug = app.add_subcommand("augment", "Augment the minority class");
  c_aug->add_option("--config", aug.config, "Config file");
  c_aug->add_option("--train", aug.train, "Training token-label file");
  c_aug->add_option("--schema", aug.schema, "Label schema");
  c_aug->add_option("--verbs", aug.verbs, "Verb lexicon");
  c_aug->add_option("--antonyms", aug.antonyms, "Antonym lexicon");
  c_aug->add_option("--entities", aug.entities, "Entity dictionary");
  c_aug->add_option("--abbreviations", aug.abbreviations, "Abbreviation list");
  add_optional(c_aug, "--method", aug.method, "AEDA, VR_Random, VR_Antonym, ER or LLM");
  add_optional(c_aug, "--n", aug.n_samples, "Number of source sentences to augment");
  add_optional(c_aug, "--per-sentence", aug.per_sentence, "Augmentations per source");
  add_optional(c_aug, "--target", aug.target_class, "Class to augment");
  add_optional(c_aug, "--threads", aug.threads, "Worker threads");
  add_optional(c_aug, "--seed", aug.seed, "Master seed");
  c_aug->add_flag_function("--offline", [&](std::int64_t) { aug.offline = true; },
                           "Use the offline LLM stand-in");
  c_aug->add_option("--llm-endpoint", aug.llm_endpoint, "LLM HTTP endpoint");
  c_aug->add_option("--output", aug.output, "Augmented corpus");
  c_aug->add_option("--manifest", aug.manifest, "Manifest (JSON lines)");
  add_format(c_aug, aug.format);
  c_aug->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_augment(aug, io); }); });

  cli::TrainOptions train_crf;
  cli::TrainOptions train_clf;
  for (auto [name, opts, help] :
       {std::tuple{"train-crf", &train_crf, "Train the CRF tagger"},
        std::tuple{"train-clf", &train_clf, "Train the sentence classifier"}}) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--config", opts->config, "Config file");
    c->add_option("--train", opts->train, "Training token-label file");
    c->add_option("--schema", opts->schema, "Label schema");
    c->add_option("--abbreviations", opts->abbreviations, "Abbreviation list");
    c->add_option("--augmented", opts->augmented, "Augmented corpora to add");
    c->add_option("--model-out", opts->model_out, "Model file to write");
    add_optional(c, "--epochs", opts->epochs, "Epochs");
    add_optional(c, "--learning-rate", opts->learning_rate, "Initial learning rate");
    add_optional(c, "--seed", opts->seed, "Seed");
    if (opts == &train_crf) {
      add_optional(c, "--l2", opts->l2, "L2 strength");
      c->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_train_crf(train_crf, io); }); });
    } else {
      add_optional(c, "--epsilon", opts->epsilon, "Adversarial step size");
      add_optional(c, "--adv-weight", opts->adv_weight, "Adversarial loss weight");
      c->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_train_clf(train_clf, io); }); });
    }
  }

  cli::EvalOptions ev;
  auto* c_eval = app.add_subcommand("eval", "Token-level scores of a trained model");
  c_eval->add_option("--model", ev.model, "Model file")->required();
  c_eval->add_option("--data", ev.data, "Token-label file")->required();
  c_eval->add_option("--schema", ev.schema, "Label schema")->required();
  c_eval->add_option("--abbreviations", ev.abbreviations, "Abbreviation list");
  c_eval->add_option("--output", ev.output, "JSON report to write");
  add_format(c_eval, ev.format);
  c_eval->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_eval(ev, io); }); });

  cli::CompareOptions cmp;
  auto* c_cmp = app.add_subcommand("compare", "Compare metric reports");
  c_cmp->add_option("reports", cmp.reports, "Reports as path or name=path")->required();
  c_cmp->add_option("--output", cmp.output, "JSON comparison to write");
  add_format(c_cmp, cmp.format);
  c_cmp->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_compare(cmp, io); }); });

  cli::FixtureOptions fx;
  auto* c_fx = app.add_subcommand("make-fixture", "Write the synthetic imbalanced corpus");
  c_fx->add_option("--seed", fx.seed, "Seed")->required();
  c_fx->add_option("--divisor", fx.divisor, "Scale-down factor of the class sizes");
  c_fx->add_option("--out-dir", fx.out_dir, "Output directory")->required();
  c_fx->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_make_fixture(fx, io); }); });

  cli::ExperimentOptions ex;
  auto* c_ex = app.add_subcommand("run-experiment", "Train and score every configured method");
  c_ex->add_option("--config", ex.config, "Experiment config")->required();
  add_optional(c_ex, "--seed", ex.seed, "Override [run] seed");
  add_optional(c_ex, "--threads", ex.threads, "Augmentation worker threads");
  c_ex->add_flag_function("--offline", [&](std::int64_t) { ex.offline = true; },
                          "Use the offline LLM stand-in");
  c_ex->add_option("--output-dir", ex.output_dir, "Override [run] output_dir");
  add_format(c_ex, ex.format);
  c_ex->callback([&] { code = cli::guarded(io, [&] { return cli::cmd_run_experiment(ex, io); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitUsage;
  }
  return code;
}
