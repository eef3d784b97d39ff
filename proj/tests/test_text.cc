// Copyright 2026 The Spotbench Authors
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


#include "spotbench/text.h"

#include <string>
#include <vector>

#include "doctest.h"
#include "spotbench/errors.h"
#include "test_support.h"

namespace spotbench::text {
namespace {

TEST_CASE("utf-8 round trip and invalid bytes") {
  const std::string s = "Việt Nam 中文 😀";
  CHECK(EncodeUtf8(DecodeUtf8(s)) == s);
  CHECK(CodePointLength(s) == 13);
  const std::u32string bad = DecodeUtf8("a\xff" "b");
  REQUIRE(bad.size() == 3);
  CHECK(bad[1] == U'�');
}

TEST_CASE("edit distance examples") {
  CHECK(EditDistance(std::string_view("same"), std::string_view("same")) == 0);
  CHECK(EditDistance(std::string_view(""), std::string_view("abc")) == 3);
  CHECK(EditDistance(std::string_view("kitten"), std::string_view("sitting")) == 3);
  // One code point, not four bytes.
  CHECK(EditDistance(std::string_view("😀"), std::string_view("😁")) == 1);
}

TEST_CASE("edit distance matches the DP table on random Unicode") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto a = testing::RandomUnicode(rng, 30), b = testing::RandomUnicode(rng, 30);
    CHECK(EditDistance(a, b) == testing::DpEditDistance(a, b));
    CHECK(EditDistance(a, b) == EditDistance(b, a));
  }
}

TEST_CASE("normalization") {
  const NormalizationPolicy def;
  CHECK(Normalize("  Hello,  ", def) == U"hello");
  CHECK(Normalize("\"ĐƯỜNG\"", def) == U"đường");
  CHECK(Normalize("a   b\tc", def) == U"a b c");
  NormalizationPolicy exact{false, false, false};
  CHECK(Normalize(" Hello, ", exact) == U"Hello,");
  CHECK(def.Describe() ==
        "case_insensitive=true;strip_edge_punctuation=true;drop_non_evaluable=true");
}

TEST_CASE("evaluable words") {
  CHECK(IsEvaluable(U"abc"));
  CHECK_FALSE(IsEvaluable(U"ab"));
  CHECK_FALSE(IsEvaluable(U"---"));
  CHECK(IsEvaluable(U"中文字"));
}

TEST_CASE("lexicon correction") {
  const std::vector<std::string> lex = {"HOUSE", "MOUSE", "HORSE"};
  CHECK(LexiconCorrect("H0USE", lex) == "HOUSE");
  CHECK(LexiconCorrect("MOUSE", lex) == "MOUSE");
  const std::vector<std::string> tie = {"AD", "AC"};
  CHECK(LexiconCorrect("AB", tie) == "AC");
  CHECK_THROWS_AS(LexiconCorrect("x", std::vector<std::string>{}), ArgumentError);
}

TEST_CASE("lexicon index agrees with the free function") {
  Rng rng(4);
  std::vector<std::string> words;
  for (int i = 0; i < 40; ++i) words.push_back(EncodeUtf8(testing::RandomUnicode(rng, 6)));
  const NormalizationPolicy policy;
  const Lexicon lex(words, policy);
  for (int i = 0; i < 100; ++i) {
    const std::string w = EncodeUtf8(testing::RandomUnicode(rng, 6));
    CHECK(lex.words()[lex.Nearest(Normalize(w, policy))] == LexiconCorrect(w, words, policy));
  }
}

TEST_CASE("case folding across scripts") {
  CHECK(ToLower(U'A') == U'a');
  CHECK(ToLower(U'Ạ') == U'ạ');
  CHECK(ToLower(U'Ж') == U'ж');
  CHECK(ToLower(U'Σ') == U'σ');
  CHECK(ToLower(U'中') == U'中');
}

}  // namespace
}  // namespace spotbench::text
