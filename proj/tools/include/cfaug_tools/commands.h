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

#ifndef CFAUG_TOOLS_COMMANDS_H_
#define CFAUG_TOOLS_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cfaug::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitNothingAugmented = 3,
  kExitDiverged = 4,
};

enum class Format { kTable, kJson };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// Runs `body`, mapping library errors to exit codes and printing them to
// streams.err.
int guarded(const Streams& io, const std::function<int()>& body);

struct StatsOptions {
  fs::path input;
  fs::path schema;  // inferred from the file when empty
  std::string outside = "O";
  Format format = Format::kTable;
};
int cmd_stats(const StatsOptions& options, const Streams& io);

struct SplitOptions {
  fs::path input;
  fs::path schema;
  fs::path abbreviations;
  fs::path output;  // one document per sentence; optional
  fs::path labels;  // doc_id, sent_index, sentence label, text; optional
  Format format = Format::kTable;
};
int cmd_split(const SplitOptions& options, const Streams& io);

struct BuildLexiconsOptions {
  fs::path train;
  fs::path schema;
  fs::path abbreviations;
  fs::path out_dir;
};
int cmd_build_lexicons(const BuildLexiconsOptions& options, const Streams& io);

struct AugmentOptions {
  fs::path config;  // [data], [augment] and [run] sections; flags override
  fs::path train;
  fs::path schema;
  fs::path verbs;
  fs::path antonyms;
  fs::path entities;
  fs::path abbreviations;
  std::optional<std::string> method;
  std::optional<std::size_t> n_samples;
  std::optional<std::size_t> per_sentence;
  std::optional<std::string> target_class;
  std::optional<std::size_t> threads;
  std::optional<std::uint64_t> seed;
  std::optional<bool> offline;
  std::string llm_endpoint;
  fs::path output;
  fs::path manifest;
  Format format = Format::kTable;
};
int cmd_augment(const AugmentOptions& options, const Streams& io);

struct TrainOptions {
  fs::path config;  // [data] and [model] sections; flags override
  fs::path train;
  fs::path schema;
  fs::path abbreviations;
  std::vector<fs::path> augmented;  // extra sentences, one per document
  fs::path model_out;
  std::optional<std::size_t> epochs;
  std::optional<double> learning_rate;
  std::optional<double> l2;
  std::optional<double> epsilon;
  std::optional<double> adv_weight;
  std::optional<std::uint64_t> seed;
};
int cmd_train_crf(const TrainOptions& options, const Streams& io);
int cmd_train_clf(const TrainOptions& options, const Streams& io);

struct EvalOptions {
  fs::path model;
  fs::path data;
  fs::path schema;
  fs::path abbreviations;
  fs::path output;  // JSON report; optional
  Format format = Format::kTable;
};
int cmd_eval(const EvalOptions& options, const Streams& io);

struct CompareOptions {
  // "name=path" or a path whose stem (minus a "report_" prefix) names the
  // method.
  std::vector<std::string> reports;
  fs::path output;
  Format format = Format::kTable;
};
int cmd_compare(const CompareOptions& options, const Streams& io);

struct FixtureOptions {
  std::uint64_t seed = 0;
  std::size_t divisor = 10;
  fs::path out_dir;
};
int cmd_make_fixture(const FixtureOptions& options, const Streams& io);

struct ExperimentOptions {
  fs::path config;
  std::optional<std::uint64_t> seed;
  std::optional<bool> offline;
  std::optional<std::size_t> threads;
  fs::path output_dir;
  Format format = Format::kTable;
};
int cmd_run_experiment(const ExperimentOptions& options, const Streams& io);

}  // namespace cfaug::cli

#endif  // CFAUG_TOOLS_COMMANDS_H_
