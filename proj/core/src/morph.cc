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

#include "cfaug/morph.h"

#include <algorithm>

#include "cfaug/bundled.h"
#include "cfaug/error.h"
#include "cfaug/text.h"

namespace cfaug {

std::string_view tense_name(Tense tense) {
  switch (tense) {
    case Tense::kBase:
      return "Base";
    case Tense::kPresent3sg:
      return "Present3sg";
    case Tense::kPast:
      return "Past";
    case Tense::kGerund:
      return "Gerund";
    case Tense::kPastParticiple:
      return "PastParticiple";
  }
  return "?";
}

const std::string& VerbForms::form(Tense tense) const {
  switch (tense) {
    case Tense::kBase:
      return base;
    case Tense::kPresent3sg:
      return present3sg;
    case Tense::kPast:
      return past;
    case Tense::kGerund:
      return gerund;
    case Tense::kPastParticiple:
      return past_participle;
  }
  return base;
}

namespace {

// Bases whose final consonant doubles before -ed/-ing.
const std::set<std::string_view>& doubling_bases() {
  static const std::set<std::string_view> kBases = {
      "abet",    "acquit",  "admit",   "ban",     "beg",     "blot",
      "bob",     "chat",    "chop",    "clap",    "clog",    "commit",
      "compel",  "confer",  "control", "cram",    "crop",    "deter",
      "dim",     "dip",     "dispel",  "dot",     "drag",    "drip",
      "drop",    "drum",    "dub",     "emit",    "equip",   "excel",
      "expel",   "fan",     "fit",     "flap",    "flip",    "flop",
      "fret",    "grab",    "grin",    "grip",    "hop",     "hug",
      "hum",     "incur",   "infer",   "jam",     "jog",     "knit",
      "knot",    "lag",     "log",     "map",     "mop",     "nag",     "nap",     "net",
      "nod",     "occur",   "omit",    "pat",     "patrol",  "pedal",
      "permit",  "pet",     "pin",     "plan",    "plod",    "plot",
      "plug",    "pop",     "prefer",  "prod",    "program", "propel",  "rebel",
      "recur",   "refer",   "regret",  "repel",   "rip",     "rob",
      "rot",     "rub",     "scan",    "scar",    "scrub",   "ship",
      "shop",    "shrug",   "sip",     "skim",    "skip",    "slam",
      "slap",    "slip",    "slit",    "snap",    "sob",     "spar",
      "spot",    "star",    "step",    "stir",    "stop",    "strap",
      "strip",   "stun",    "submit",  "swap",    "tag",     "tan",
      "tap",     "thin",    "tip",     "top",     "transfer", "transmit", "trap",
      "trim",    "trip",    "tug",     "vet",     "wag",     "whip",
      "wrap",    "zap",     "zip",
  };
  return kBases;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool consonant_y(std::string_view base) {
  return base.size() >= 2 && base.back() == 'y' && !is_vowel(base[base.size() - 2]);
}

std::string regular_3sg(std::string_view base) {
  std::string b(base);
  if (consonant_y(base)) return b.substr(0, b.size() - 1) + "ies";
  if (base.ends_with("s") || base.ends_with("x") || base.ends_with("z") ||
      base.ends_with("ch") || base.ends_with("sh")) {
    return b + "es";
  }
  if (base.size() >= 2 && base.back() == 'o' && !is_vowel(base[base.size() - 2])) {
    return b + "es";
  }
  return b + "s";
}

std::string regular_past(std::string_view base) {
  std::string b(base);
  if (base.ends_with("e")) return b + "d";
  if (consonant_y(base)) return b.substr(0, b.size() - 1) + "ied";
  if (doubling_bases().contains(base)) return b + b.back() + "ed";
  return b + "ed";
}

std::string regular_gerund(std::string_view base) {
  std::string b(base);
  if (base.ends_with("ie")) return b.substr(0, b.size() - 2) + "ying";
  if (base.size() > 2 && base.ends_with("e") && !base.ends_with("ee") &&
      !base.ends_with("ye") && !base.ends_with("oe")) {
    return b.substr(0, b.size() - 1) + "ing";
  }
  if (doubling_bases().contains(base)) return b + b.back() + "ing";
  return b + "ing";
}

int tense_priority(Tense tense) {
  switch (tense) {
    case Tense::kPast:
      return 0;
    case Tense::kPresent3sg:
      return 1;
    case Tense::kGerund:
      return 2;
    case Tense::kPastParticiple:
      return 3;
    case Tense::kBase:
      return 4;
  }
  return 5;
}

bool is_alpha_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return text::is_ascii_alpha(c) || c == '-' || c == '\'';
  });
}

}  // namespace

VerbForms regular_forms(std::string_view base) {
  VerbForms forms;
  forms.base = std::string(base);
  forms.present3sg = regular_3sg(base);
  forms.past = regular_past(base);
  forms.gerund = regular_gerund(base);
  forms.past_participle = forms.past;
  return forms;
}

void VerbLexicon::add(VerbForms forms) {
  if (by_base_.contains(forms.base)) {
    throw ConfigError("duplicate verb base '" + forms.base + "'");
  }
  const std::size_t index = entries_.size();
  by_base_.emplace(forms.base, index);
  for (Tense tense : kAllTenses) {
    auto& list = reverse_[forms.form(tense)];
    list.push_back(VerbReading{forms.base, tense});
  }
  entries_.push_back(std::move(forms));
}

VerbLexicon VerbLexicon::parse(std::string_view contents,
                               const std::string& source,
                               std::set<std::string, std::less<>> stoplist) {
  VerbLexicon lexicon;
  lexicon.stoplist_ = std::move(stoplist);
  const auto lines = text::split(contents, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto columns = text::split(line, '\t');
    if (columns.size() != 5) {
      throw ParseError(source, n + 1,
                       "expected 5 tab-separated columns, got " +
                           std::to_string(columns.size()));
    }
    for (const auto& column : columns) {
      if (column != "-" && !is_alpha_word(column)) {
        throw ParseError(source, n + 1,
                         "invalid verb form '" + std::string(column) + "'");
      }
    }
    if (columns[0] == "-" || text::to_lower(columns[0]) != columns[0]) {
      throw ParseError(source, n + 1, "base form must be lowercase");
    }
    VerbForms forms = regular_forms(columns[0]);
    const std::array<std::string*, 4> slots = {
        &forms.present3sg, &forms.past, &forms.gerund, &forms.past_participle};
    for (std::size_t c = 1; c < 5; ++c) {
      if (columns[c] != "-") *slots[c - 1] = text::to_lower(columns[c]);
    }
    // An explicit past with a "-" participle reuses the past form.
    if (columns[4] == "-" && columns[2] != "-") {
      forms.past_participle = forms.past;
    }
    try {
      lexicon.add(std::move(forms));
    } catch (const ConfigError& e) {
      throw ParseError(source, n + 1, e.what());
    }
  }
  return lexicon;
}

std::set<std::string, std::less<>> VerbLexicon::parse_stoplist(
    std::string_view contents) {
  std::set<std::string, std::less<>> out;
  for (auto& line : text::read_list(contents)) out.insert(text::to_lower(line));
  return out;
}

VerbLexicon VerbLexicon::bundled() {
  return parse(bundled::verbs_tsv(), "<bundled verbs.tsv>",
               parse_stoplist(bundled::verb_stoplist_txt()));
}

const VerbForms* VerbLexicon::find(std::string_view base) const {
  auto it = by_base_.find(std::string(base));
  return it == by_base_.end() ? nullptr : &entries_[it->second];
}

std::span<const VerbReading> VerbLexicon::readings(
    std::string_view surface) const {
  auto it = reverse_.find(std::string(surface));
  if (it == reverse_.end()) return {};
  return it->second;
}

std::vector<std::string> VerbLexicon::replaceable_bases() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (!is_stoplisted(e.base)) out.push_back(e.base);
  }
  return out;
}

VerbLexicon VerbLexicon::subset(
    const std::set<std::string, std::less<>>& bases) const {
  VerbLexicon out;
  out.stoplist_ = stoplist_;
  for (const auto& e : entries_) {
    if (bases.contains(e.base)) out.add(e);
  }
  return out;
}

std::string VerbLexicon::serialize() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.base + "\t" + e.present3sg + "\t" + e.past + "\t" + e.gerund +
           "\t" + e.past_participle + "\n";
  }
  return out;
}

std::optional<VerbReading> detect_verb(std::string_view token,
                                       const VerbLexicon& lexicon) {
  const std::string lower = text::to_lower(token);
  if (lexicon.is_stoplisted(lower)) return std::nullopt;
  const VerbReading* best = nullptr;
  for (const auto& reading : lexicon.readings(lower)) {
    if (lexicon.is_stoplisted(reading.base)) continue;
    if (best == nullptr ||
        tense_priority(reading.tense) < tense_priority(best->tense)) {
      best = &reading;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::string conjugate(std::string_view base, Tense tense,
                      const VerbLexicon& lexicon) {
  const VerbForms* forms = lexicon.find(base);
  if (forms == nullptr) {
    throw ConfigError("verb '" + std::string(base) + "' is not in the lexicon");
  }
  return forms->form(tense);
}

AntonymLexicon AntonymLexicon::parse(std::string_view contents,
                                     const std::string& source) {
  AntonymLexicon lexicon;
  const auto lines = text::split(contents, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto columns = text::split(line, '\t');
    if (columns.size() != 2) {
      throw ParseError(source, n + 1,
                       "expected 2 tab-separated columns, got " +
                           std::to_string(columns.size()));
    }
    const std::string base(text::trim(columns[0]));
    if (base.empty() || text::to_lower(base) != base) {
      throw ParseError(source, n + 1, "base must be a lowercase verb");
    }
    if (lexicon.entries_.contains(base)) {
      throw ParseError(source, n + 1, "duplicate antonym entry '" + base + "'");
    }
    std::vector<std::string> antonyms;
    for (std::string_view item : text::split(columns[1], ',')) {
      item = text::trim(item);
      if (item.empty()) continue;
      std::string antonym = text::to_lower(item);
      if (antonym == base) {
        throw ParseError(source, n + 1, "'" + base + "' listed as its own antonym");
      }
      if (std::find(antonyms.begin(), antonyms.end(), antonym) == antonyms.end()) {
        antonyms.push_back(std::move(antonym));
      }
    }
    if (antonyms.empty()) {
      throw ParseError(source, n + 1, "no antonyms for '" + base + "'");
    }
    lexicon.entries_.emplace(base, std::move(antonyms));
  }
  return lexicon;
}

AntonymLexicon AntonymLexicon::bundled() {
  return parse(bundled::antonyms_tsv(), "<bundled antonyms.tsv>");
}

std::span<const std::string> AntonymLexicon::antonyms(
    std::string_view base) const {
  auto it = entries_.find(base);
  if (it == entries_.end()) return {};
  return it->second;
}

}  // namespace cfaug
