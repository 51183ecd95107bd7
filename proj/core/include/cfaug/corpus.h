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

#ifndef CFAUG_CORPUS_H_
#define CFAUG_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cfaug {

// One token with [char_start, char_end) offsets into its owner's text.
struct Token {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Label inventory: an outside label plus ordered categories. Label ids follow
// labels(): categories in declared order, then the outside label.
class LabelSchema {
 public:
  LabelSchema() = default;
  LabelSchema(std::string outside_label, std::vector<std::string> categories,
              std::map<std::string, std::uint64_t, std::less<>> train_freq = {});

  // INI format:
  //   outside = O
  //   categories = CLA, EXP, PER, QUE
  //   [train_freq]
  //   CLA = 8183
  static LabelSchema parse(std::string_view contents, const std::string& source);
  static LabelSchema load(const std::filesystem::path& path);
  std::string serialize() const;

  const std::string& outside_label() const { return outside_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  bool contains(std::string_view label) const;
  bool is_category(std::string_view label) const;
  std::optional<std::size_t> index_of(std::string_view label) const;
  // Throws SchemaError for unknown labels.
  std::size_t require_index(std::string_view label) const;
  const std::string& label(std::size_t index) const { return labels_.at(index); }

  // Training token frequency; 0 for labels without an entry.
  std::uint64_t train_freq(std::string_view label) const;
  const std::map<std::string, std::uint64_t, std::less<>>& train_freq_table()
      const {
    return train_freq_;
  }
  LabelSchema with_train_freq(
      std::map<std::string, std::uint64_t, std::less<>> freq) const;

  friend bool operator==(const LabelSchema&, const LabelSchema&) = default;

 private:
  std::string outside_;
  std::vector<std::string> categories_;
  std::vector<std::string> labels_;
  std::map<std::string, std::uint64_t, std::less<>> train_freq_;
};

struct Document {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<std::string> token_labels;

  // Builds a document whose text is the tokens joined by single spaces.
  static Document from_tokens(std::string id,
                              const std::vector<std::string>& tokens,
                              std::vector<std::string> labels);

  friend bool operator==(const Document&, const Document&) = default;
};

// Token-index span, end exclusive.
struct Span {
  std::string doc_id;
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string category;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Dataset {
  LabelSchema schema;
  std::vector<Document> documents;

  // Throws ValidationError / SchemaError on the first violation.
  void validate() const;
};

struct CorpusStats {
  std::size_t n_texts = 0;
  std::size_t n_tokens = 0;
  std::size_t n_unique_words = 0;
  std::size_t max_length = 0;
  std::map<std::string, std::size_t> label_dist;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Throws ValidationError / SchemaError.
void validate_document(const Document& doc, const LabelSchema& schema);

// CoNLL-style `token<TAB>label` lines; blank lines separate documents. A
// block may open with a `# id = <doc_id>` line, otherwise the document id is
// its 0-based position in the file.
Dataset parse_token_label_file(std::string_view contents,
                               const LabelSchema& schema,
                               const std::string& source = "<input>");
Dataset load_token_label_file(const std::filesystem::path& path,
                              const LabelSchema& schema);
std::string serialize_token_label_file(std::span<const Document> documents);

// `doc_id<TAB>token_start<TAB>token_end<TAB>category` records.
std::vector<Span> parse_span_file(std::string_view contents,
                                  const LabelSchema& schema,
                                  const std::string& source = "<input>");
std::string serialize_span_file(std::span<const Span> spans);

std::vector<std::string> spans_to_labels(std::span<const Token> tokens,
                                         std::span<const Span> spans,
                                         const LabelSchema& schema);
// Maximal runs of one non-outside label become spans.
std::vector<Span> labels_to_spans(std::span<const std::string> token_labels,
                                  const LabelSchema& schema,
                                  const std::string& doc_id = {});

// Relabels documents from a span list keyed by document id. Documents without
// spans become all-outside.
void apply_spans(Dataset& dataset, std::span<const Span> spans);

// Unique words are distinct token strings, compared case-sensitively.
CorpusStats dataset_stats(const Dataset& dataset);

// Whitespace tokenization that also peels leading/trailing punctuation and
// '%' into their own tokens. Offsets index into `text`.
std::vector<Token> tokenize(std::string_view text);

// Tokens joined by single spaces.
std::string render_tokens(std::span<const Token> tokens);
// Tokens laid out with the original inter-token gaps of `text`.
std::string render_surface(std::string_view text, std::span<const Token> tokens);

}  // namespace cfaug

#endif  // CFAUG_CORPUS_H_
