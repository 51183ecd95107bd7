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

#include "cfaug/senttok.h"

#include <algorithm>
#include <stdexcept>

#include "cfaug/bundled.h"
#include "cfaug/error.h"
#include "cfaug/text.h"

namespace cfaug {

AbbreviationList AbbreviationList::parse(std::string_view contents) {
  std::set<std::string, std::less<>> entries;
  for (auto& line : text::read_list(contents)) {
    if (line.back() == '.') line.pop_back();
    if (!line.empty()) entries.insert(std::move(line));
  }
  return AbbreviationList(std::move(entries));
}

AbbreviationList AbbreviationList::bundled() {
  return parse(bundled::abbreviations_txt());
}

namespace {

bool is_terminal_char(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(std::string_view t) {
  return t == "\"" || t == "'" || t == ")" || t == "]" || t == "}" ||
         t == "''";
}

// Whether a sentence may end right after token `i`.
bool ends_sentence(std::span<const Token> tokens, std::size_t i,
                   const AbbreviationList& abbreviations) {
  const std::string_view t = tokens[i].text;
  if (t.empty() || !is_terminal_char(t.back())) return false;
  const bool only_punct = std::all_of(t.begin(), t.end(), is_terminal_char);
  if (only_punct) {
    // A lone "." after an abbreviation token, e.g. "Dr" ".".
    if (t == "." && i > 0 && abbreviations.contains(tokens[i - 1].text)) {
      return false;
    }
    return true;
  }
  // Attached period: "Dr." is an abbreviation, "Sibo." ends a sentence.
  if (t.back() == '.') {
    std::string_view stem = t.substr(0, t.size() - 1);
    if (abbreviations.contains(stem)) return false;
  }
  return true;
}

LabeledSentence cut_sentence(const Document& doc, const LabelSchema& schema,
                             std::size_t begin, std::size_t end,
                             std::size_t sent_index) {
  LabeledSentence s;
  s.doc_id = doc.id;
  s.sent_index = sent_index;
  const std::size_t base = doc.tokens[begin].char_start;
  const std::size_t stop = doc.tokens[end - 1].char_end;
  s.text = doc.text.substr(base, stop - base);
  for (std::size_t i = begin; i < end; ++i) {
    Token t = doc.tokens[i];
    t.char_start -= base;
    t.char_end -= base;
    s.tokens.push_back(std::move(t));
    s.token_labels.push_back(doc.token_labels[i]);
  }
  s.sentence_label = majority_label(s.token_labels, schema);
  return s;
}

}  // namespace

std::vector<LabeledSentence> split_sentences(
    const Document& document, const LabelSchema& schema,
    const AbbreviationList& abbreviations) {
  std::vector<LabeledSentence> out;
  const std::span<const Token> tokens = document.tokens;
  if (tokens.size() != document.token_labels.size()) {
    throw ValidationError("document '" + document.id +
                          "': token/label count mismatch");
  }
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (ends_sentence(tokens, i, abbreviations)) {
      std::size_t end = i + 1;
      while (end < tokens.size() &&
             (is_closer(tokens[end].text) ||
              std::all_of(tokens[end].text.begin(), tokens[end].text.end(),
                          is_terminal_char))) {
        ++end;
      }
      out.push_back(cut_sentence(document, schema, begin, end, out.size()));
      begin = end;
      i = end;
      continue;
    }
    ++i;
  }
  if (begin < tokens.size()) {
    out.push_back(cut_sentence(document, schema, begin, tokens.size(), out.size()));
  }
  return out;
}

std::vector<LabeledSentence> split_dataset(const Dataset& dataset,
                                           const AbbreviationList& abbreviations) {
  std::vector<LabeledSentence> out;
  for (const auto& doc : dataset.documents) {
    auto sentences = split_sentences(doc, dataset.schema, abbreviations);
    std::move(sentences.begin(), sentences.end(), std::back_inserter(out));
  }
  return out;
}

std::string majority_label(std::span<const std::string> token_labels,
                           const LabelSchema& schema) {
  if (token_labels.empty()) {
    throw std::invalid_argument("majority_label of an empty label sequence");
  }
  std::vector<std::size_t> counts(schema.size(), 0);
  for (const auto& label : token_labels) ++counts[schema.require_index(label)];
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) {
      best = i;
    } else if (counts[i] == counts[best] &&
               schema.train_freq(schema.label(i)) <
                   schema.train_freq(schema.label(best))) {
      best = i;
    }
  }
  return schema.label(best);
}

std::vector<std::string> project_labels(const std::string& sentence_label,
                                        std::size_t n_tokens) {
  return std::vector<std::string>(n_tokens, sentence_label);
}

PurityStats purity_stats(std::span<const LabeledSentence> sentences) {
  PurityStats stats;
  for (const auto& s : sentences) {
    ++stats.n_sentences;
    ++stats.per_class[s.sentence_label];
    const bool uniform = std::all_of(
        s.token_labels.begin(), s.token_labels.end(),
        [&](const std::string& l) { return l == s.token_labels.front(); });
    if (uniform) ++stats.n_uniform;
  }
  return stats;
}

LabeledSentence make_sentence(std::string doc_id, std::size_t sent_index,
                              std::string_view text, const std::string& label) {
  LabeledSentence s;
  s.doc_id = std::move(doc_id);
  s.sent_index = sent_index;
  s.tokens = tokenize(text);
  if (!s.tokens.empty()) {
    const std::size_t base = s.tokens.front().char_start;
    s.text = std::string(
        text.substr(base, s.tokens.back().char_end - base));
    for (auto& t : s.tokens) {
      t.char_start -= base;
      t.char_end -= base;
    }
  }
  s.token_labels.assign(s.tokens.size(), label);
  s.sentence_label = label;
  return s;
}

}  // namespace cfaug
