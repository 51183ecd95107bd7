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

#ifndef CFAUG_FIXTURE_H_
#define CFAUG_FIXTURE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "cfaug/corpus.h"

namespace cfaug {

// Synthetic forum-style corpus with one rare class. Sentences come from
// class-conditional templates over a shared vocabulary, so classes overlap
// lexically but stay separable in distribution.
struct FixtureConfig {
  // Sentences per label for each split.
  std::map<std::string, std::size_t> train_sizes;
  std::map<std::string, std::size_t> dev_sizes;
  std::uint64_t seed = 0;
  // Probability that a sentence gets an extra filler word.
  double filler_rate = 0.3;
  // Probability that a sentence is drawn from another class's templates but
  // keeps its own label.
  double confusion_rate = 0.02;
  // Probability that a sentence's leading tokens (always fewer than half)
  // carry a different label.
  double impurity_rate = 0.13;
  std::size_t max_doc_sentences = 8;

  // Sentence counts of a five-class claim corpus (CLA, EXP, O, PER, QUE)
  // divided by `divisor`; the dev split uses the same counts.
  static FixtureConfig scaled(std::size_t divisor = 10, std::uint64_t seed = 0);
  void validate() const;
};

// Counts the generator tracks while writing, independent of the parsers.
struct FixtureSplitStats {
  std::size_t n_texts = 0;
  std::size_t n_tokens = 0;
  std::size_t n_unique_words = 0;
  std::size_t max_length = 0;
  std::map<std::string, std::size_t> label_dist;
  std::size_t n_sentences = 0;
  std::size_t n_uniform = 0;
  std::map<std::string, std::size_t> sentence_labels;
};

struct Fixture {
  LabelSchema schema;  // train_freq filled from the train split
  Dataset train;
  Dataset dev;
  FixtureSplitStats train_stats;
  FixtureSplitStats dev_stats;

  std::string bookkeeping_json() const;
};

inline constexpr std::string_view kFixtureMinority = "CLA";
// Seed of the fixture used by the acceptance suite and the examples.
inline constexpr std::uint64_t kBundledFixtureSeed = 2023;

Fixture make_fixture(const FixtureConfig& config);

}  // namespace cfaug

#endif  // CFAUG_FIXTURE_H_
