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

#ifndef CFAUG_ENTITY_H_
#define CFAUG_ENTITY_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/corpus.h"
#include "cfaug/senttok.h"

namespace cfaug {

struct EntitySpan {
  std::size_t token_start = 0;
  std::size_t token_end = 0;
  std::string category;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Finds named entities in a sentence. Implementations must be thread-safe.
class EntityAnnotator {
 public:
  virtual ~EntityAnnotator() = default;
  virtual std::vector<EntitySpan> annotate(const LabeledSentence& sentence) const = 0;
};

// Rule-based annotator:
//   PERCENT   a number token followed by "%" or "percent"
//   CARDINAL  any other standalone number token
//   PROPER    maximal run of capitalized tokens that are not sentence-initial
//             ("I" is never PROPER)
class PatternEntityAnnotator final : public EntityAnnotator {
 public:
  std::vector<EntitySpan> annotate(const LabeledSentence& sentence) const override;
};

// Uses the sentence's own non-outside label runs as entities, with the label
// as category. This is how gold span annotations plug in.
class GoldSpanAnnotator final : public EntityAnnotator {
 public:
  explicit GoldSpanAnnotator(LabelSchema schema) : schema_(std::move(schema)) {}
  std::vector<EntitySpan> annotate(const LabeledSentence& sentence) const override;

 private:
  LabelSchema schema_;
};

// Throws ValidationError if spans overlap or fall outside [0, n_tokens).
void validate_entity_spans(std::span<const EntitySpan> spans,
                           std::size_t n_tokens);

// Category -> distinct entity surface forms (token lists), in first-seen
// order. File format: `category<TAB>token token ...` per line.
class EntityDictionary {
 public:
  using Entity = std::vector<std::string>;

  static EntityDictionary build(std::span<const LabeledSentence> sentences,
                                const EntityAnnotator& annotator);
  static EntityDictionary parse(std::string_view contents,
                                const std::string& source);
  std::string serialize() const;

  // Returns false if the entity was already present.
  bool add(const std::string& category, Entity entity);

  bool has_category(std::string_view category) const;
  std::span<const Entity> entities(std::string_view category) const;
  std::vector<std::string> categories() const;
  std::size_t size() const;

 private:
  std::map<std::string, std::vector<Entity>, std::less<>> entries_;
};

}  // namespace cfaug

#endif  // CFAUG_ENTITY_H_
