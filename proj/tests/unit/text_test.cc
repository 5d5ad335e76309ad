// Copyright 2026 The Magnet Authors
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


#include "magnet/text.h"

#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace magnet {
namespace {

using ::testing::ElementsAre;

TEST(NormalizeTextTest, Examples) {
  EXPECT_EQ(NormalizeText("Université de Paris"), "universite de paris");
  EXPECT_EQ(NormalizeText(""), "");
  // Spelled out by hand: the dash, parentheses and comma become separators.
  EXPECT_EQ(NormalizeText("INSERM \xe2\x80\x94 U1234 (Paris, France)"),
            "inserm u1234 paris france");
}

TEST(NormalizeTextTest, CompatibilityForms) {
  EXPECT_EQ(NormalizeText("ＵＮＩＶＥＲＳＩＴＹ ｏｆ Ｔｏｋｙｏ"), "university of tokyo");
  EXPECT_EQ(NormalizeText("ﬁnance"), "finance");  // ligature
  EXPECT_EQ(NormalizeText("Ångström²"), "angstrom2");
  EXPECT_EQ(NormalizeText("Straße"), "stra e");   // no ASCII decomposition
  EXPECT_EQ(NormalizeText("  \t\r\n "), "");
  EXPECT_EQ(NormalizeText("a--b__c"), "a b c");
}

TEST(NormalizeTextTest, InvalidUtf8DoesNotCrash) {
  const std::string bad = "abc\xff\xfe def \xc3";
  const auto out = NormalizeText(bad);
  EXPECT_EQ(NormalizeText(out), out);
}

std::string RandomText(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {
      "a", "Z", "9", " ", "  ", "\t", "\n", "é", "É", "ü", "ß", "ø", "Ø",
      "東", "\xe2\x80\x94", "-", "'", ",", "(", ")", "ﬁ", "Ｋ", "²", "ǅ", "İ", "ς",
      "\xcc\x81", "Université", "CNRS", "\xf0\x9f\x98\x80"};
  std::string s;
  for (auto n = rng() % 12; n > 0; --n) s += kPieces[rng() % kPieces.size()];
  return s;
}

TEST(NormalizeTextProperty, IdempotentAndInAlphabet) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto raw = RandomText(rng);
    const auto once = NormalizeText(raw);
    EXPECT_EQ(NormalizeText(once), once) << raw;
    for (char c : once) {
      EXPECT_TRUE((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ')
          << raw;
    }
    if (!once.empty()) {
      EXPECT_NE(once.front(), ' ');
      EXPECT_NE(once.back(), ' ');
      EXPECT_EQ(once.find("  "), std::string::npos);
    }
  }
}

TEST(TokenizeTest, Splits) {
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_THAT(Tokenize("universite de lyon"),
              ElementsAre("universite", "de", "lyon"));
}

TEST(StopwordsTest, FixedList) {
  const std::vector<std::string_view> expected = {
      "of", "the", "and", "for", "de", "la", "le", "les", "du", "des",
      "der", "die", "das", "und", "di", "et", "e"};
  const auto list = Stopwords();
  EXPECT_EQ(std::vector<std::string_view>(list.begin(), list.end()), expected);
  EXPECT_TRUE(IsStopword("des"));
  EXPECT_FALSE(IsStopword("university"));
}

TEST(ContentTokensTest, SortedUniqueWithoutStopwords) {
  EXPECT_THAT(ContentTokens("institut de chimie de lyon lyon"),
              ElementsAre("chimie", "institut", "lyon"));
  EXPECT_TRUE(ContentTokens("de la et").empty());
}

TEST(ExtractAcronymsTest, UppercaseRuns) {
  EXPECT_THAT(ExtractAcronyms("INSERM U1234 (CNRS)"), ElementsAre("INSERM", "CNRS"));
  EXPECT_THAT(ExtractAcronyms("Lab of the ÉNS, Paris"), ElementsAre("ÉNS"));
  EXPECT_TRUE(ExtractAcronyms("University of Lyon").empty());
  EXPECT_TRUE(ExtractAcronyms("A B C").empty());
}

TEST(ContainsPhraseTest, TokenBoundaries) {
  EXPECT_TRUE(ContainsPhrase("dept universite de lyon france", "universite de lyon"));
  EXPECT_TRUE(ContainsPhrase("lyon", "lyon"));
  EXPECT_FALSE(ContainsPhrase("universite de lyonnaise", "universite de lyon"));
  EXPECT_FALSE(ContainsPhrase("xlyon", "lyon"));
  EXPECT_FALSE(ContainsPhrase("lyon", ""));
}

}  // namespace
}  // namespace magnet
