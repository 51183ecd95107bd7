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

#ifndef CFAUG_MORPH_H_
#define CFAUG_MORPH_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cfaug {

enum class Tense { kBase, kPresent3sg, kPast, kGerund, kPastParticiple };

inline constexpr std::array<Tense, 5> kAllTenses = {
    Tense::kBase, Tense::kPresent3sg, Tense::kPast, Tense::kGerund,
    Tense::kPastParticiple};

std::string_view tense_name(Tense tense);

struct VerbForms {
  std::string base;
  std::string present3sg;
  std::string past;
  std::string gerund;
  std::string past_participle;

  const std::string& form(Tense tense) const;
  friend bool operator==(const VerbForms&, const VerbForms&) = default;
};

struct VerbReading {
  std::string base;
  Tense tense = Tense::kBase;

  friend bool operator==(const VerbReading&, const VerbReading&) = default;
};

// Regular English inflection of an ASCII-alpha base: sibilant/-o "es",
// consonant-y to "ies"/"ied", silent-e dropping, and final-consonant doubling
// for bases on the built-in doubling list.
VerbForms regular_forms(std::string_view base);

// Verb forms keyed by base, with a reverse index from every surface form to
// the (base, tense) pairs that produce it.
//
// File format, one verb per line:
//   base<TAB>3sg<TAB>past<TAB>gerund<TAB>past_participle
// where "-" in any form column asks for the regular form.
class VerbLexicon {
 public:
  VerbLexicon() = default;

  static VerbLexicon parse(std::string_view contents, const std::string& source,
                           std::set<std::string, std::less<>> stoplist = {});
  // The bundled ~1k verb lexicon with the bundled be/do stoplist.
  static VerbLexicon bundled();
  static std::set<std::string, std::less<>> parse_stoplist(
      std::string_view contents);

  void add(VerbForms forms);

  const std::vector<VerbForms>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const VerbForms* find(std::string_view base) const;
  bool contains(std::string_view base) const { return find(base) != nullptr; }

  // Readings of a lowercase surface form, in lexicon order.
  std::span<const VerbReading> readings(std::string_view surface) const;

  const std::set<std::string, std::less<>>& stoplist() const { return stoplist_; }
  bool is_stoplisted(std::string_view form) const {
    return stoplist_.find(form) != stoplist_.end();
  }
  // Lexicon bases that may be replaced or used as replacements.
  std::vector<std::string> replaceable_bases() const;

  // Lexicon restricted to `bases`, in this lexicon's order. Unknown bases are
  // ignored.
  VerbLexicon subset(const std::set<std::string, std::less<>>& bases) const;
  std::string serialize() const;

 private:
  std::vector<VerbForms> entries_;
  std::unordered_map<std::string, std::size_t> by_base_;
  std::unordered_map<std::string, std::vector<VerbReading>> reverse_;
  std::set<std::string, std::less<>> stoplist_;
};

// Looks the lowercased token up in the reverse index. Ambiguous forms resolve
// by tense priority Past > Present3sg > Gerund > PastParticiple > Base, then
// lexicon order. Stoplisted forms and bases yield nullopt.
std::optional<VerbReading> detect_verb(std::string_view token,
                                       const VerbLexicon& lexicon);

// Throws ConfigError for bases missing from the lexicon.
std::string conjugate(std::string_view base, Tense tense,
                      const VerbLexicon& lexicon);

// base<TAB>antonym1,antonym2,...
class AntonymLexicon {
 public:
  static AntonymLexicon parse(std::string_view contents,
                              const std::string& source);
  static AntonymLexicon bundled();

  std::span<const std::string> antonyms(std::string_view base) const;
  const std::map<std::string, std::vector<std::string>, std::less<>>& entries()
      const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

}  // namespace cfaug

#endif  // CFAUG_MORPH_H_
