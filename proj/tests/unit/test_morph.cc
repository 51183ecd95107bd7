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

#include <gtest/gtest.h>

#include "cfaug/error.h"
#include "cfaug/morph.h"

namespace cfaug {
namespace {

VerbForms forms(std::string b, std::string s, std::string p, std::string g, std::string pp) {
  return VerbForms{std::move(b), std::move(s), std::move(p), std::move(g), std::move(pp)};
}

TEST(RegularForms, InflectionRules) {
  EXPECT_EQ(regular_forms("cause"), forms("cause", "causes", "caused", "causing", "caused"));
  EXPECT_EQ(regular_forms("fix"), forms("fix", "fixes", "fixed", "fixing", "fixed"));
  EXPECT_EQ(regular_forms("carry"), forms("carry", "carries", "carried", "carrying", "carried"));
  EXPECT_EQ(regular_forms("play"), forms("play", "plays", "played", "playing", "played"));
  EXPECT_EQ(regular_forms("plan"), forms("plan", "plans", "planned", "planning", "planned"));
  EXPECT_EQ(regular_forms("echo").present3sg, "echoes");
  EXPECT_EQ(regular_forms("agree").past, "agreed");
  EXPECT_EQ(regular_forms("agree").gerund, "agreeing");
}

TEST(Lexicon, ParseIrregularAndRegularColumns) {
  const auto lex = VerbLexicon::parse("have\thas\thad\thaving\thad\ncure\t-\t-\t-\t-\n", "v");
  ASSERT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.find("cure")->past, "cured");
  EXPECT_EQ(conjugate("have", Tense::kPresent3sg, lex), "has");
  EXPECT_THROW(conjugate("run", Tense::kPast, lex), ConfigError);
  EXPECT_EQ(VerbLexicon::parse(lex.serialize(), "again").entries(), lex.entries());
}

TEST(Lexicon, MalformedLineIsParseError) {
  EXPECT_THROW(VerbLexicon::parse("have\thas\n", "bad"), ParseError);
}

TEST(Detect, TensePriorityForAmbiguousForms) {
  const auto lex = VerbLexicon::parse("cause\t-\t-\t-\t-\nhave\thas\thad\thaving\thad\n", "v");
  // "caused" is both past and participle; past wins.
  EXPECT_EQ(detect_verb("caused", lex), (VerbReading{"cause", Tense::kPast}));
  EXPECT_EQ(detect_verb("Has", lex), (VerbReading{"have", Tense::kPresent3sg}));
  EXPECT_EQ(detect_verb("having", lex), (VerbReading{"have", Tense::kGerund}));
  EXPECT_EQ(detect_verb("cause", lex), (VerbReading{"cause", Tense::kBase}));
  EXPECT_FALSE(detect_verb("table", lex).has_value());
}

TEST(Detect, StoplistBlocksAllForms) {
  const auto lex = VerbLexicon::parse("be\tis\twas\tbeing\tbeen\ncure\t-\t-\t-\t-\n", "v",
                                      VerbLexicon::parse_stoplist("# c\nbe\n"));
  EXPECT_FALSE(detect_verb("was", lex).has_value());
  EXPECT_FALSE(detect_verb("is", lex).has_value());
  const auto bases = lex.replaceable_bases();
  EXPECT_EQ(bases, (std::vector<std::string>{"cure"}));
}

TEST(Bundled, LexiconsAreLoadedAndConsistent) {
  const auto lex = VerbLexicon::bundled();
  EXPECT_GT(lex.size(), 900u);
  EXPECT_FALSE(detect_verb("is", lex).has_value());
  EXPECT_FALSE(detect_verb("does", lex).has_value());
  EXPECT_EQ(detect_verb("diagnosed", lex)->base, "diagnose");
  EXPECT_EQ(conjugate("cause", Tense::kPast, lex), "caused");
  const auto ant = AntonymLexicon::bundled();
  EXPECT_GT(ant.size(), 50u);
  ASSERT_FALSE(ant.antonyms("have").empty());
  EXPECT_EQ(ant.antonyms("have")[0], "abstain");
  EXPECT_TRUE(ant.antonyms("nonexistent").empty());
}

TEST(Lexicon, SubsetKeepsOrder) {
  const auto lex = VerbLexicon::bundled();
  const auto sub = lex.subset({"have", "cause", "zzz"});
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.entries()[0].base, "cause");
  EXPECT_EQ(sub.entries()[1].base, "have");
}

TEST(Antonyms, ParseList) {
  const auto ant = AntonymLexicon::parse("increase\tdecrease, reduce\n", "a");
  ASSERT_EQ(ant.antonyms("increase").size(), 2u);
  EXPECT_EQ(ant.antonyms("increase")[1], "reduce");
}

TEST(TenseNames, AllDistinct) {
  std::set<std::string_view> names;
  for (auto t : kAllTenses) names.insert(tense_name(t));
  EXPECT_EQ(names.size(), kAllTenses.size());
}

}  // namespace
}  // namespace cfaug
