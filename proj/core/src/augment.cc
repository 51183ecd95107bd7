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

#include "cfaug/augment.h"

#include <algorithm>

#include "cfaug/error.h"
#include "cfaug/text.h"

namespace cfaug {

std::string_view method_name(AugmentMethod method) {
  switch (method) {
    case AugmentMethod::kAeda:
      return "AEDA";
    case AugmentMethod::kVrRandom:
      return "VR_Random";
    case AugmentMethod::kVrAntonym:
      return "VR_Antonym";
    case AugmentMethod::kEr:
      return "ER";
    case AugmentMethod::kLlm:
      return "LLM";
    case AugmentMethod::kBat:
      return "BAT";
  }
  return "?";
}

std::optional<AugmentMethod> parse_method(std::string_view name) {
  for (AugmentMethod m :
       {AugmentMethod::kAeda, AugmentMethod::kVrRandom, AugmentMethod::kVrAntonym,
        AugmentMethod::kEr, AugmentMethod::kLlm, AugmentMethod::kBat}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view failure_name(AugmentFailure failure) {
  switch (failure) {
    case AugmentFailure::kNoVerb:
      return "no eligible verb";
    case AugmentFailure::kNoAntonym:
      return "no antonym";
    case AugmentFailure::kNoEntity:
      return "no entity";
    case AugmentFailure::kNoAlternative:
      return "no alternative entity";
    case AugmentFailure::kEmptyCompletion:
      return "empty completion";
    case AugmentFailure::kTransport:
      return "llm transport failure";
  }
  return "?";
}

namespace {

// Accumulates tokens into a fresh sentence text with explicit gaps.
class SentenceBuilder {
 public:
  explicit SentenceBuilder(const LabeledSentence& source) {
    out_.doc_id = source.doc_id;
    out_.sent_index = source.sent_index;
    out_.sentence_label = source.sentence_label;
  }

  void append(std::string_view token, std::string_view gap,
              const std::string& label) {
    if (!out_.tokens.empty()) out_.text.append(gap);
    const std::size_t start = out_.text.size();
    out_.text.append(token);
    out_.tokens.push_back(Token{std::string(token), start, out_.text.size()});
    out_.token_labels.push_back(label);
  }

  std::size_t size() const { return out_.tokens.size(); }
  LabeledSentence finish() && { return std::move(out_); }

 private:
  LabeledSentence out_;
};

std::string_view gap_before(const LabeledSentence& s, std::size_t i) {
  if (i == 0 || i >= s.tokens.size()) return " ";
  const std::size_t from = s.tokens[i - 1].char_end;
  const std::size_t to = s.tokens[i].char_start;
  if (to < from || to > s.text.size()) return " ";
  return std::string_view(s.text).substr(from, to - from);
}

void set_failure(AugmentFailure* out, AugmentFailure value) {
  if (out != nullptr) *out = value;
}

SourceId source_of(const LabeledSentence& s) { return {s.doc_id, s.sent_index}; }

}  // namespace

AugmentedSample aeda_insert(
    const LabeledSentence& sentence,
    std::span<const std::pair<std::size_t, std::string>> insertions) {
  const std::size_t n = sentence.tokens.size();
  std::vector<std::pair<std::size_t, std::string>> sorted(insertions.begin(),
                                                          insertions.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].first >= n) {
      throw std::invalid_argument("aeda_insert: slot out of range");
    }
    if (i > 0 && sorted[i].first == sorted[i - 1].first) {
      throw std::invalid_argument("aeda_insert: duplicate slot");
    }
  }
  AugmentedSample sample;
  sample.method = AugmentMethod::kAeda;
  sample.source = source_of(sentence);
  SentenceBuilder builder(sentence);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::string_view gap = gap_before(sentence, i);
    if (next < sorted.size() && sorted[next].first == i) {
      sample.insertions.push_back(builder.size());
      builder.append(sorted[next].second, " ", sentence.sentence_label);
      gap = " ";
      ++next;
    }
    builder.append(sentence.tokens[i].text, gap, sentence.token_labels[i]);
  }
  sample.sentence = std::move(builder).finish();
  return sample;
}

AugmentedSample aeda(const LabeledSentence& sentence, ChoiceSource& choices) {
  const std::size_t n = sentence.tokens.size();
  if (n == 0) throw std::invalid_argument("aeda: empty sentence");
  const std::size_t max_k = std::max<std::size_t>(1, n / 3);
  const std::size_t k = 1 + choices.below(max_k);
  const std::vector<std::size_t> slots = sample_distinct(choices, n, k);
  std::vector<std::pair<std::size_t, std::string>> insertions;
  for (std::size_t slot : slots) {
    insertions.emplace_back(slot,
                            std::string(kAedaMarks[choices.below(kAedaMarks.size())]));
  }
  return aeda_insert(sentence, insertions);
}

AugmentedSample replace_tokens(const LabeledSentence& sentence,
                               std::size_t token_start, std::size_t token_end,
                               const std::vector<std::string>& replacement) {
  if (token_start >= token_end || token_end > sentence.tokens.size() ||
      replacement.empty()) {
    throw std::invalid_argument("replace_tokens: invalid range or replacement");
  }
  AugmentedSample sample;
  sample.source = source_of(sentence);
  sample.replaced = std::make_pair(token_start, token_end);
  sample.replacement_tokens = replacement;
  SentenceBuilder builder(sentence);
  const std::string& label = sentence.token_labels[token_start];
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (i == token_start) {
      for (std::size_t r = 0; r < replacement.size(); ++r) {
        builder.append(replacement[r], r == 0 ? gap_before(sentence, i) : " ",
                       label);
      }
    }
    if (i >= token_start && i < token_end) {
      sample.original_tokens.push_back(sentence.tokens[i].text);
      continue;
    }
    builder.append(sentence.tokens[i].text, gap_before(sentence, i),
                   sentence.token_labels[i]);
  }
  sample.sentence = std::move(builder).finish();
  return sample;
}

std::optional<AugmentedSample> verb_replace(
    const LabeledSentence& sentence, const VerbLexicon& lexicon,
    std::span<const std::string> pool, const AntonymLexicon& antonyms,
    VerbMode mode, ChoiceSource& choices, AugmentFailure* failure) {
  struct Candidate {
    std::size_t index;
    VerbReading reading;
    std::vector<std::string> replacements;
  };
  std::vector<Candidate> eligible;
  bool any_verb = false;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    auto reading = detect_verb(sentence.tokens[i].text, lexicon);
    if (!reading) continue;
    any_verb = true;
    Candidate c{i, *reading, {}};
    // A replacement qualifies only if its conjugated form reads back with
    // the original tense, so the tense survives a later detect_verb().
    auto consider = [&](const std::string& base) {
      if (base == reading->base || !lexicon.contains(base) ||
          lexicon.is_stoplisted(base)) {
        return;
      }
      auto back = detect_verb(conjugate(base, reading->tense, lexicon), lexicon);
      if (back && back->tense == reading->tense) c.replacements.push_back(base);
    };
    if (mode == VerbMode::kRandom) {
      for (const auto& base : pool) consider(base);
    } else {
      for (const auto& base : antonyms.antonyms(reading->base)) consider(base);
    }
    if (!c.replacements.empty()) eligible.push_back(std::move(c));
  }
  if (eligible.empty()) {
    set_failure(failure, any_verb && mode == VerbMode::kAntonym
                             ? AugmentFailure::kNoAntonym
                             : AugmentFailure::kNoVerb);
    return std::nullopt;
  }
  const Candidate& chosen = eligible[choices.below(eligible.size())];
  const std::string& base =
      chosen.replacements[choices.below(chosen.replacements.size())];
  const std::string surface = text::match_case(
      sentence.tokens[chosen.index].text,
      conjugate(base, chosen.reading.tense, lexicon));
  AugmentedSample sample =
      replace_tokens(sentence, chosen.index, chosen.index + 1, {surface});
  sample.method =
      mode == VerbMode::kRandom ? AugmentMethod::kVrRandom : AugmentMethod::kVrAntonym;
  sample.tense = chosen.reading.tense;
  return sample;
}

std::optional<AugmentedSample> entity_replace(const LabeledSentence& sentence,
                                              const EntityAnnotator& annotator,
                                              const EntityDictionary& dictionary,
                                              ChoiceSource& choices,
                                              AugmentFailure* failure) {
  const std::vector<EntitySpan> spans = annotator.annotate(sentence);
  validate_entity_spans(spans, sentence.tokens.size());
  if (spans.empty()) {
    set_failure(failure, AugmentFailure::kNoEntity);
    return std::nullopt;
  }
  struct Candidate {
    const EntitySpan* span;
    std::vector<const EntityDictionary::Entity*> alternatives;
  };
  std::vector<Candidate> eligible;
  for (const auto& span : spans) {
    if (!dictionary.has_category(span.category)) {
      throw ConfigError("entity dictionary has no category '" + span.category + "'");
    }
    EntityDictionary::Entity original;
    for (std::size_t i = span.token_start; i < span.token_end; ++i) {
      original.push_back(sentence.tokens[i].text);
    }
    Candidate c{&span, {}};
    for (const auto& entity : dictionary.entities(span.category)) {
      if (entity != original) c.alternatives.push_back(&entity);
    }
    if (!c.alternatives.empty()) eligible.push_back(std::move(c));
  }
  if (eligible.empty()) {
    set_failure(failure, AugmentFailure::kNoAlternative);
    return std::nullopt;
  }
  const Candidate& chosen = eligible[choices.below(eligible.size())];
  const auto* replacement =
      chosen.alternatives[choices.below(chosen.alternatives.size())];
  AugmentedSample sample = replace_tokens(sentence, chosen.span->token_start,
                                          chosen.span->token_end, *replacement);
  sample.method = AugmentMethod::kEr;
  return sample;
}

std::optional<AugmentedSample> llm_augment(const LabeledSentence& sentence,
                                           LlmClient& client, int variant,
                                           const RetryPolicy& retry,
                                           AugmentFailure* failure) {
  std::string reply;
  try {
    reply = llm_contradict(render_surface(sentence.text, sentence.tokens), client,
                           variant, retry);
  } catch (const RetriableError&) {
    set_failure(failure, AugmentFailure::kTransport);
    return std::nullopt;
  } catch (const AugmentationError&) {
    set_failure(failure, AugmentFailure::kEmptyCompletion);
    return std::nullopt;
  }
  LabeledSentence out =
      make_sentence(sentence.doc_id, sentence.sent_index, text::trim(reply),
                    sentence.sentence_label);
  if (out.tokens.empty()) {
    set_failure(failure, AugmentFailure::kEmptyCompletion);
    return std::nullopt;
  }
  AugmentedSample sample;
  sample.method = AugmentMethod::kLlm;
  sample.source = source_of(sentence);
  sample.prompt_variant = variant;
  sample.sentence = std::move(out);
  return sample;
}

std::vector<LabeledSentence> oversample(std::span<const LabeledSentence> sentences,
                                        const std::string& target_class,
                                        std::size_t target_total, Rng& rng) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].sentence_label == target_class) members.push_back(i);
  }
  if (members.empty()) {
    throw ConfigError("oversample: no sentences of class '" + target_class + "'");
  }
  if (target_total < members.size()) {
    throw ConfigError("oversample: class '" + target_class + "' already has " +
                      std::to_string(members.size()) + " sentences");
  }
  std::vector<LabeledSentence> out(sentences.begin(), sentences.end());
  for (std::size_t i = members.size(); i < target_total; ++i) {
    out.push_back(sentences[members[rng.below(members.size())]]);
  }
  return out;
}

std::vector<LabeledSentence> undersample(std::span<const LabeledSentence> sentences,
                                         const std::string& majority_class,
                                         std::size_t keep_n, Rng& rng) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].sentence_label == majority_class) members.push_back(i);
  }
  if (members.empty()) {
    throw ConfigError("undersample: no sentences of class '" + majority_class + "'");
  }
  if (keep_n > members.size()) {
    throw ConfigError("undersample: keep_n " + std::to_string(keep_n) +
                      " exceeds the " + std::to_string(members.size()) +
                      " available sentences");
  }
  std::vector<bool> keep(sentences.size(), true);
  for (std::size_t i : members) keep[i] = false;
  for (std::size_t pick : sample_distinct(rng, members.size(), keep_n)) {
    keep[members[pick]] = true;
  }
  std::vector<LabeledSentence> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (keep[i]) out.push_back(sentences[i]);
  }
  return out;
}

}  // namespace cfaug
