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

#include "cfaug/entity.h"

#include <algorithm>

#include "cfaug/error.h"
#include "cfaug/text.h"

namespace cfaug {

namespace {

bool is_percent_marker(std::string_view t) {
  return t == "%" || text::to_lower(t) == "percent";
}

bool is_proper_token(std::string_view t) {
  return text::starts_upper(t) && t != "I";
}

}  // namespace

std::vector<EntitySpan> PatternEntityAnnotator::annotate(
    const LabeledSentence& sentence) const {
  std::vector<EntitySpan> spans;
  const auto& tokens = sentence.tokens;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string& t = tokens[i].text;
    if (text::is_number(t)) {
      if (i + 1 < tokens.size() && is_percent_marker(tokens[i + 1].text)) {
        spans.push_back(EntitySpan{i, i + 2, "PERCENT"});
        i += 2;
      } else {
        spans.push_back(EntitySpan{i, i + 1, "CARDINAL"});
        ++i;
      }
      continue;
    }
    if (i > 0 && is_proper_token(t)) {
      std::size_t j = i + 1;
      while (j < tokens.size() && is_proper_token(tokens[j].text)) ++j;
      spans.push_back(EntitySpan{i, j, "PROPER"});
      i = j;
      continue;
    }
    ++i;
  }
  return spans;
}

std::vector<EntitySpan> GoldSpanAnnotator::annotate(
    const LabeledSentence& sentence) const {
  std::vector<EntitySpan> out;
  for (const Span& s : labels_to_spans(sentence.token_labels, schema_)) {
    out.push_back(EntitySpan{s.token_start, s.token_end, s.category});
  }
  return out;
}

void validate_entity_spans(std::span<const EntitySpan> spans,
                           std::size_t n_tokens) {
  std::vector<const EntitySpan*> sorted;
  for (const auto& s : spans) {
    if (s.token_start >= s.token_end || s.token_end > n_tokens) {
      throw ValidationError("entity span [" + std::to_string(s.token_start) +
                            "," + std::to_string(s.token_end) +
                            ") out of range");
    }
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const EntitySpan* a, const EntitySpan* b) {
              return a->token_start < b->token_start;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->token_start < sorted[i - 1]->token_end) {
      throw ValidationError("overlapping entity spans");
    }
  }
}

EntityDictionary EntityDictionary::build(
    std::span<const LabeledSentence> sentences,
    const EntityAnnotator& annotator) {
  EntityDictionary dict;
  for (const auto& s : sentences) {
    const auto spans = annotator.annotate(s);
    validate_entity_spans(spans, s.tokens.size());
    for (const auto& span : spans) {
      Entity entity;
      for (std::size_t i = span.token_start; i < span.token_end; ++i) {
        entity.push_back(s.tokens[i].text);
      }
      dict.add(span.category, std::move(entity));
    }
  }
  return dict;
}

EntityDictionary EntityDictionary::parse(std::string_view contents,
                                         const std::string& source) {
  EntityDictionary dict;
  const auto lines = text::split(contents, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    const auto columns = text::split(line, '\t');
    if (columns.size() != 2 || columns[0].empty()) {
      throw ParseError(source, n + 1, "expected category<TAB>entity");
    }
    Entity entity;
    for (std::string_view tok : text::split(columns[1], ' ')) {
      if (!tok.empty()) entity.emplace_back(tok);
    }
    if (entity.empty()) throw ParseError(source, n + 1, "empty entity");
    dict.add(std::string(columns[0]), std::move(entity));
  }
  return dict;
}

std::string EntityDictionary::serialize() const {
  std::string out;
  for (const auto& [category, entities] : entries_) {
    for (const auto& e : entities) out += category + "\t" + text::join(e, " ") + "\n";
  }
  return out;
}

bool EntityDictionary::add(const std::string& category, Entity entity) {
  if (entity.empty()) throw ValidationError("empty entity for " + category);
  auto& list = entries_[category];
  if (std::find(list.begin(), list.end(), entity) != list.end()) return false;
  list.push_back(std::move(entity));
  return true;
}

bool EntityDictionary::has_category(std::string_view category) const {
  return entries_.find(category) != entries_.end();
}

std::span<const EntityDictionary::Entity> EntityDictionary::entities(
    std::string_view category) const {
  auto it = entries_.find(category);
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> EntityDictionary::categories() const {
  std::vector<std::string> out;
  for (const auto& [category, entities] : entries_) out.push_back(category);
  return out;
}

std::size_t EntityDictionary::size() const {
  std::size_t n = 0;
  for (const auto& [category, entities] : entries_) n += entities.size();
  return n;
}

}  // namespace cfaug
