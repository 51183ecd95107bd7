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

#include "cfaug/corpus.h"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cfaug/config.h"
#include "cfaug/error.h"
#include "cfaug/io.h"
#include "cfaug/text.h"

namespace cfaug {

LabelSchema::LabelSchema(
    std::string outside_label, std::vector<std::string> categories,
    std::map<std::string, std::uint64_t, std::less<>> train_freq)
    : outside_(std::move(outside_label)),
      categories_(std::move(categories)),
      train_freq_(std::move(train_freq)) {
  if (outside_.empty()) throw SchemaError("outside label must be non-empty");
  if (categories_.empty()) throw SchemaError("schema needs at least one category");
  std::set<std::string_view> seen;
  for (const auto& c : categories_) {
    if (c.empty() || text::has_whitespace(c)) {
      throw SchemaError("invalid category name '" + c + "'");
    }
    if (c == outside_) {
      throw SchemaError("outside label '" + c + "' listed as a category");
    }
    if (!seen.insert(c).second) throw SchemaError("duplicate category '" + c + "'");
  }
  labels_ = categories_;
  labels_.push_back(outside_);
  for (const auto& [label, freq] : train_freq_) {
    if (!contains(label)) {
      throw SchemaError("train_freq entry for unknown label '" + label + "'");
    }
  }
}

LabelSchema LabelSchema::parse(std::string_view contents,
                               const std::string& source) {
  const IniConfig config = IniConfig::parse(contents, source);
  std::map<std::string, std::uint64_t, std::less<>> freq;
  for (const auto& key : config.section_keys("train_freq")) {
    freq[key] = config.require_u64("train_freq." + key);
  }
  return LabelSchema(config.require("outside"), config.get_list("categories"),
                     std::move(freq));
}

LabelSchema LabelSchema::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

std::string LabelSchema::serialize() const {
  std::string out = "outside = " + outside_ + "\n";
  out += "categories = " + text::join(categories_, ", ") + "\n";
  if (!train_freq_.empty()) {
    out += "\n[train_freq]\n";
    for (const auto& label : labels_) {
      auto it = train_freq_.find(label);
      if (it != train_freq_.end()) {
        out += label + " = " + std::to_string(it->second) + "\n";
      }
    }
  }
  return out;
}

bool LabelSchema::contains(std::string_view label) const {
  return index_of(label).has_value();
}

bool LabelSchema::is_category(std::string_view label) const {
  return std::find(categories_.begin(), categories_.end(), label) !=
         categories_.end();
}

std::optional<std::size_t> LabelSchema::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t LabelSchema::require_index(std::string_view label) const {
  auto index = index_of(label);
  if (!index) throw SchemaError("unknown label '" + std::string(label) + "'");
  return *index;
}

std::uint64_t LabelSchema::train_freq(std::string_view label) const {
  auto it = train_freq_.find(label);
  return it == train_freq_.end() ? 0 : it->second;
}

LabelSchema LabelSchema::with_train_freq(
    std::map<std::string, std::uint64_t, std::less<>> freq) const {
  return LabelSchema(outside_, categories_, std::move(freq));
}

Document Document::from_tokens(std::string id,
                               const std::vector<std::string>& tokens,
                               std::vector<std::string> labels) {
  Document doc;
  doc.id = std::move(id);
  doc.token_labels = std::move(labels);
  doc.tokens.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!doc.text.empty()) doc.text.push_back(' ');
    const std::size_t start = doc.text.size();
    doc.text += t;
    doc.tokens.push_back(Token{t, start, doc.text.size()});
  }
  return doc;
}

void validate_document(const Document& doc, const LabelSchema& schema) {
  if (doc.tokens.size() != doc.token_labels.size()) {
    throw ValidationError("document '" + doc.id + "': " +
                          std::to_string(doc.tokens.size()) + " tokens but " +
                          std::to_string(doc.token_labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    if (t.text.empty() || text::has_whitespace(t.text)) {
      throw ValidationError("document '" + doc.id + "': invalid token at " +
                            std::to_string(i));
    }
    if (t.char_start >= t.char_end || t.char_end > doc.text.size() ||
        std::string_view(doc.text).substr(t.char_start,
                                          t.char_end - t.char_start) != t.text) {
      throw ValidationError("document '" + doc.id + "': token " +
                            std::to_string(i) + " offsets do not match text");
    }
    if (i > 0 && t.char_start < doc.tokens[i - 1].char_end) {
      throw ValidationError("document '" + doc.id + "': token " +
                            std::to_string(i) + " overlaps its predecessor");
    }
    if (!schema.contains(doc.token_labels[i])) {
      throw SchemaError("document '" + doc.id + "': unknown label '" +
                        doc.token_labels[i] + "'");
    }
  }
}

void Dataset::validate() const {
  for (const auto& doc : documents) validate_document(doc, schema);
}

namespace {

constexpr std::string_view kIdPrefix = "# id = ";

struct PendingDocument {
  std::string id;
  bool explicit_id = false;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  bool empty() const { return !explicit_id && tokens.empty(); }
};

}  // namespace

Dataset parse_token_label_file(std::string_view contents,
                               const LabelSchema& schema,
                               const std::string& source) {
  Dataset dataset;
  dataset.schema = schema;
  PendingDocument pending;
  auto flush = [&]() {
    if (pending.empty()) return;
    std::string id = pending.explicit_id
                         ? pending.id
                         : std::to_string(dataset.documents.size());
    dataset.documents.push_back(Document::from_tokens(
        std::move(id), pending.tokens, std::move(pending.labels)));
    pending = PendingDocument{};
  };

  const auto lines = text::split(contents, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    const std::size_t line_no = n + 1;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.starts_with(kIdPrefix) && line.find('\t') == std::string_view::npos) {
      if (!pending.empty()) {
        throw ParseError(source, line_no, "document id line inside a document");
      }
      pending.id = std::string(line.substr(kIdPrefix.size()));
      pending.explicit_id = true;
      if (pending.id.empty()) {
        throw ParseError(source, line_no, "empty document id");
      }
      continue;
    }
    const auto columns = text::split(line, '\t');
    if (columns.size() != 2) {
      throw ParseError(source, line_no,
                       "expected 2 tab-separated columns, got " +
                           std::to_string(columns.size()));
    }
    if (columns[0].empty() || text::has_whitespace(columns[0])) {
      throw ParseError(source, line_no, "token is empty or contains whitespace");
    }
    if (!schema.contains(columns[1])) {
      throw SchemaError(source + ":" + std::to_string(line_no) +
                        ": unknown label '" + std::string(columns[1]) + "'");
    }
    pending.tokens.emplace_back(columns[0]);
    pending.labels.emplace_back(columns[1]);
  }
  flush();
  return dataset;
}

Dataset load_token_label_file(const std::filesystem::path& path,
                              const LabelSchema& schema) {
  return parse_token_label_file(read_file(path), schema, path.string());
}

std::string serialize_token_label_file(std::span<const Document> documents) {
  std::string out;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const Document& doc = documents[d];
    if (d > 0) out.push_back('\n');
    if (doc.id != std::to_string(d)) {
      out.append(kIdPrefix).append(doc.id).push_back('\n');
    }
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      out.append(doc.tokens[i].text).push_back('\t');
      out.append(doc.token_labels.at(i)).push_back('\n');
    }
  }
  return out;
}

std::vector<Span> parse_span_file(std::string_view contents,
                                  const LabelSchema& schema,
                                  const std::string& source) {
  std::vector<Span> spans;
  const auto lines = text::split(contents, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (line.empty()) continue;
    const auto columns = text::split(line, '\t');
    if (columns.size() != 4) {
      throw ParseError(source, n + 1,
                       "expected 4 tab-separated columns, got " +
                           std::to_string(columns.size()));
    }
    Span span;
    span.doc_id = std::string(columns[0]);
    try {
      span.token_start = parse_u64(columns[1], "token_start");
      span.token_end = parse_u64(columns[2], "token_end");
    } catch (const ConfigError& e) {
      throw ParseError(source, n + 1, e.what());
    }
    span.category = std::string(columns[3]);
    if (span.token_start >= span.token_end) {
      throw ParseError(source, n + 1, "empty or inverted span");
    }
    if (!schema.is_category(span.category)) {
      throw SchemaError(source + ":" + std::to_string(n + 1) +
                        ": unknown category '" + span.category + "'");
    }
    spans.push_back(std::move(span));
  }
  return spans;
}

std::string serialize_span_file(std::span<const Span> spans) {
  std::string out;
  for (const Span& s : spans) {
    out += s.doc_id + "\t" + std::to_string(s.token_start) + "\t" +
           std::to_string(s.token_end) + "\t" + s.category + "\n";
  }
  return out;
}

std::vector<std::string> spans_to_labels(std::span<const Token> tokens,
                                         std::span<const Span> spans,
                                         const LabelSchema& schema) {
  std::vector<std::string> labels(tokens.size(), schema.outside_label());
  std::vector<const Span*> sorted;
  for (const Span& s : spans) {
    if (s.token_start >= s.token_end || s.token_end > tokens.size()) {
      throw ValidationError("span [" + std::to_string(s.token_start) + "," +
                            std::to_string(s.token_end) + ") out of range for " +
                            std::to_string(tokens.size()) + " tokens");
    }
    if (!schema.is_category(s.category)) {
      throw SchemaError("unknown category '" + s.category + "'");
    }
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Span* a, const Span* b) {
    return a->token_start < b->token_start;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Span& a = *sorted[i - 1];
    const Span& b = *sorted[i];
    if (b.token_start < a.token_end) {
      throw ValidationError(
          "overlapping spans [" + std::to_string(a.token_start) + "," +
          std::to_string(a.token_end) + ") " + a.category + " and [" +
          std::to_string(b.token_start) + "," + std::to_string(b.token_end) +
          ") " + b.category);
    }
  }
  for (const Span* s : sorted) {
    for (std::size_t i = s->token_start; i < s->token_end; ++i) {
      labels[i] = s->category;
    }
  }
  return labels;
}

std::vector<Span> labels_to_spans(std::span<const std::string> token_labels,
                                  const LabelSchema& schema,
                                  const std::string& doc_id) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < token_labels.size()) {
    if (token_labels[i] == schema.outside_label()) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < token_labels.size() && token_labels[j] == token_labels[i]) ++j;
    spans.push_back(Span{doc_id, i, j, token_labels[i]});
    i = j;
  }
  return spans;
}

void apply_spans(Dataset& dataset, std::span<const Span> spans) {
  std::unordered_map<std::string, std::vector<Span>> by_doc;
  std::unordered_set<std::string> known;
  for (const auto& doc : dataset.documents) known.insert(doc.id);
  for (const Span& s : spans) {
    if (!known.contains(s.doc_id)) {
      throw ValidationError("span refers to unknown document '" + s.doc_id + "'");
    }
    by_doc[s.doc_id].push_back(s);
  }
  for (auto& doc : dataset.documents) {
    auto it = by_doc.find(doc.id);
    const std::vector<Span> none;
    doc.token_labels =
        spans_to_labels(doc.tokens, it == by_doc.end() ? none : it->second,
                        dataset.schema);
  }
}

CorpusStats dataset_stats(const Dataset& dataset) {
  CorpusStats stats;
  stats.n_texts = dataset.documents.size();
  for (const auto& label : dataset.schema.labels()) stats.label_dist[label] = 0;
  std::unordered_set<std::string_view> unique;
  for (const auto& doc : dataset.documents) {
    stats.n_tokens += doc.tokens.size();
    stats.max_length = std::max(stats.max_length, doc.tokens.size());
    for (const auto& t : doc.tokens) unique.insert(t.text);
    for (const auto& label : doc.token_labels) ++stats.label_dist[label];
  }
  stats.n_unique_words = unique.size();
  return stats;
}

namespace {

constexpr std::string_view kLeadingPunct = "\"'([{";
constexpr std::string_view kTrailingPunct = ",;:\"')]}%";
constexpr std::string_view kTerminalPunct = ".!?";

bool contains_char(std::string_view set, char c) {
  return set.find(c) != std::string_view::npos;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text::has_whitespace(text.substr(pos, 1))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !text::has_whitespace(text.substr(end, 1))) ++end;

    std::size_t lo = pos;
    std::size_t hi = end;
    std::vector<Token> trailing;
    while (lo < hi && contains_char(kLeadingPunct, text[lo])) {
      tokens.push_back(Token{std::string(1, text[lo]), lo, lo + 1});
      ++lo;
    }
    while (lo < hi) {
      const char c = text[hi - 1];
      if (contains_char(kTerminalPunct, c)) {
        // Runs such as "..." or "?!" stay one token; an abbreviation-like
        // core ("U.S.", "e.g.") keeps its final period.
        std::size_t run = hi - 1;
        while (run > lo && contains_char(kTerminalPunct, text[run - 1])) --run;
        const std::string_view core = text.substr(lo, run - lo);
        if (c == '.' && hi - run == 1 && core.find('.') != std::string_view::npos) {
          break;
        }
        trailing.push_back(Token{std::string(text.substr(run, hi - run)), run, hi});
        hi = run;
      } else if (contains_char(kTrailingPunct, c)) {
        trailing.push_back(Token{std::string(1, c), hi - 1, hi});
        --hi;
      } else {
        break;
      }
    }
    if (lo < hi) tokens.push_back(Token{std::string(text.substr(lo, hi - lo)), lo, hi});
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
    pos = end;
  }
  return tokens;
}

std::string render_tokens(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

std::string render_surface(std::string_view text, std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      const std::size_t gap_start = tokens[i - 1].char_end;
      const std::size_t gap_end = tokens[i].char_start;
      if (gap_end >= gap_start && gap_end <= text.size()) {
        out += text.substr(gap_start, gap_end - gap_start);
      } else {
        out.push_back(' ');
      }
    }
    out += tokens[i].text;
  }
  return out;
}

}  // namespace cfaug
