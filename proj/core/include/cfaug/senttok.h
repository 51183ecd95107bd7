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

#ifndef CFAUG_SENTTOK_H_
#define CFAUG_SENTTOK_H_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/corpus.h"

namespace cfaug {

// A sentence cut out of a document. Token offsets index into `text`, which is
// the sentence's own surface string.
struct LabeledSentence {
  std::string doc_id;
  std::size_t sent_index = 0;
  std::string text;
  std::vector<Token> tokens;
  std::vector<std::string> token_labels;
  std::string sentence_label;

  friend bool operator==(const LabeledSentence&,
                         const LabeledSentence&) = default;
};

// Case-sensitive abbreviations that suppress a following sentence boundary.
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(std::set<std::string, std::less<>> entries)
      : entries_(std::move(entries)) {}

  // One abbreviation per line, written without its trailing period.
  static AbbreviationList parse(std::string_view contents);
  static AbbreviationList bundled();

  bool contains(std::string_view word) const {
    return entries_.find(word) != entries_.end();
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::set<std::string, std::less<>> entries_;
};

struct PurityStats {
  std::size_t n_sentences = 0;
  std::size_t n_uniform = 0;
  std::map<std::string, std::size_t> per_class;

  double uniform_fraction() const {
    return n_sentences == 0 ? 0.0
                            : static_cast<double>(n_uniform) /
                                  static_cast<double>(n_sentences);
  }
};

// Boundaries fall after ".", "!" or "?" tokens (or tokens ending in one) that
// are not abbreviations, after any closing quotes or brackets that follow
// them, and at the end of the document.
std::vector<LabeledSentence> split_sentences(const Document& document,
                                             const LabelSchema& schema,
                                             const AbbreviationList& abbreviations);

std::vector<LabeledSentence> split_dataset(const Dataset& dataset,
                                           const AbbreviationList& abbreviations);

// Most frequent label. Ties go to the label with the smallest training
// frequency, then to the earlier label in schema order.
std::string majority_label(std::span<const std::string> token_labels,
                           const LabelSchema& schema);

std::vector<std::string> project_labels(const std::string& sentence_label,
                                        std::size_t n_tokens);

PurityStats purity_stats(std::span<const LabeledSentence> sentences);

// Builds a sentence from raw text with the default tokenizer; every token
// carries `label`.
LabeledSentence make_sentence(std::string doc_id, std::size_t sent_index,
                              std::string_view text, const std::string& label);

}  // namespace cfaug

#endif  // CFAUG_SENTTOK_H_
