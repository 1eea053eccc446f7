// Copyright 2026 The silverner Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "silverner/text_segmentation.h"
#include "silverner/types.h"

using namespace silverner;

namespace {

std::vector<std::string> Texts(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) out.push_back(t.text);
  return out;
}

std::vector<std::string> Sentences(const std::string &text, const TokenizerRules &rules = {}) {
  std::vector<std::string> out;
  for (auto [b, e] : SegmentSentences(text, rules)) out.push_back(text.substr(b, e - b));
  return out;
}

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("tokenize: parentheses split off") {
  CHECK(Texts(Tokenize("Աբովյան (քաղաք)")) == V{"Աբովյան", "(", "քաղաք", ")"});
}

TEST_CASE("tokenize: trivial cases") {
  CHECK(Texts(Tokenize("a b")) == V{"a", "b"});
  CHECK(Tokenize("").empty());
  CHECK(Tokenize("   \t ").empty());
}

TEST_CASE("tokenize: punctuation, joiners and numbers") {
  CHECK(Texts(Tokenize("Երևան, Հայաստան։")) == V{"Երևան", ",", "Հայաստան", "։"});
  CHECK(Texts(Tokenize("«Արարատ»-ը")) == V{"«", "Արարատ", "»", "-", "ը"});
  CHECK(Texts(Tokenize("Սայաթ-Նովա")) == V{"Սայաթ-Նովա"});
  CHECK(Texts(Tokenize("1903-1978 թթ.")) == V{"1903-1978", "թթ."});
  CHECK(Texts(Tokenize("3.14 և 1,000,000")) == V{"3.14", "և", "1,000,000"});
  CHECK(Texts(Tokenize("ժ. 10:30")) == V{"ժ", ".", "10:30"});
  CHECK(Texts(Tokenize("O'Brien")) == V{"O'Brien"});
}

TEST_CASE("tokenize: Armenian emphasis and question marks stay attached") {
  CHECK(Texts(Tokenize("Ի՞նչ ես անում")) == V{"Ի՞նչ", "ես", "անում"});
  CHECK(Texts(Tokenize("Տե՛ս։")) == V{"Տե՛ս", "։"});
}

TEST_CASE("tokenize: abbreviations and initials keep their period") {
  CHECK(Texts(Tokenize("մ.թ.ա. 782 թ.")) == V{"մ.թ.ա.", "782", "թ."});
  CHECK(Texts(Tokenize("Ա. Խաչատրյան")) == V{"Ա.", "Խաչատրյան"});
  CHECK(Texts(Tokenize("Dr. Who")) == V{"Dr.", "Who"});
  // Not an abbreviation when it is the tail of a longer word.
  CHECK(Texts(Tokenize("գնաց.")) == V{"գնաց", "."});
}

TEST_CASE("tokenize: ellipsis") {
  CHECK(Texts(Tokenize("Եվ...")) == V{"Եվ", "..."});
  CHECK(Texts(Tokenize("Եվ…")) == V{"Եվ", "…"});
}

TEST_CASE("segment: two terminators give two sentences") {
  CHECK(Sentences("Ա բ։ Գ դ։") == V{"Ա բ։", "Գ դ։"});
}

TEST_CASE("segment: text without terminators is one sentence") {
  CHECK(Sentences("Ա բ գ") == V{"Ա բ գ"});
  CHECK(Sentences("").empty());
}

TEST_CASE("segment: abbreviation before a period does not split") {
  CHECK(Sentences("Ծնվել է 1903 թ. Թիֆլիսում։") == V{"Ծնվել է 1903 թ. Թիֆլիսում։"});
  CHECK(Sentences("Ա. Խաչատրյանը եկավ։") == V{"Ա. Խաչատրյանը եկավ։"});
}

TEST_CASE("segment: soft terminators need whitespace and an uppercase word") {
  CHECK(Sentences("It ended. Then it began.") == V{"It ended.", "Then it began."});
  CHECK(Sentences("It ended. then more.") == V{"It ended. then more."});
  CHECK(Sentences("Why? Because! Yes") == V{"Why?", "Because!", "Yes"});
  CHECK(Sentences("Ավարտվեց։Հետո") == V{"Ավարտվեց։", "Հետո"});
  CHECK(Sentences("Ended.\"Quoted\"") == V{"Ended.\"Quoted\""});
}

TEST_CASE("segment: closing quotes and brackets stay with the sentence") {
  CHECK(Sentences("«Ավարտ։» Նոր։") == V{"«Ավարտ։»", "Նոր։"});
  CHECK(Sentences("(Done.) Next.") == V{"(Done.)", "Next."});
  CHECK(Sentences("It ended. (Then) more.") == V{"It ended.", "(Then) more."});
}

TEST_CASE("segment: newlines are hard boundaries") {
  CHECK(Sentences("Ա բ\nգ դ") == V{"Ա բ", "գ դ"});
}

TEST_CASE("property: sentence ranges partition the non-whitespace text") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces = {"Ա", "բ", " ", " ", "։", ".", "?", "\n", "թ.", "Գ",
                                           "x", "7", "(", ")", "«", "»", "…", "մ.թ.ա.", ",", "-"};
  for (int round = 0; round < 500; ++round) {
    std::string text;
    std::size_t len = rng() % 40;
    for (std::size_t k = 0; k < len; ++k) text += pieces[rng() % pieces.size()];
    auto ranges = SegmentSentences(text);
    std::size_t prev_end = 0;
    for (auto [b, e] : ranges) {
      REQUIRE(b < e);
      REQUIRE(b >= prev_end);
      for (std::size_t k = prev_end; k < b; ++k) {
        CHECK((text[k] == ' ' || text[k] == '\n'));
      }
      CHECK(text[b] != ' ');
      CHECK(text[e - 1] != ' ');
      prev_end = e;
    }
    for (std::size_t k = prev_end; k < text.size(); ++k) CHECK((text[k] == ' ' || text[k] == '\n'));
    // Tokens: ordered, non-overlapping, offsets agree with the text.
    auto tokens = Tokenize(text);
    std::size_t last = 0;
    std::string joined, squeezed;
    for (const auto &t : tokens) {
      REQUIRE(t.start < t.end);
      CHECK(t.start >= last);
      CHECK(text.substr(t.start, t.end - t.start) == t.text);
      last = t.end;
      joined += t.text;
    }
    for (char c : text) {
      if (c != ' ' && c != '\n') squeezed.push_back(c);
    }
    CHECK(joined == squeezed);
  }
}

TEST_CASE("rule table replaces the default lists") {
  std::istringstream in(
      "# custom rules\n"
      "abbrev\tքղք.\n"
      "joiner\t-\n"
      "initials\toff\n");
  TokenizerRules rules = ReadTokenizerRules(in);
  CHECK(rules.abbreviations == std::set<std::string>{"քղք"});
  CHECK(rules.word_joiners == std::set<char32_t>{U'-'});
  CHECK_FALSE(rules.initials);
  CHECK(Texts(Tokenize("Ա. քղք. թ.", rules)) == V{"Ա", ".", "քղք.", "թ", "."});
  std::istringstream bad("joiner\tab\n");
  CHECK_THROWS_AS(ReadTokenizerRules(bad), InputError);
  std::istringstream unknown("frobnicate\tx\n");
  CHECK_THROWS_AS(ReadTokenizerRules(unknown), InputError);
}
