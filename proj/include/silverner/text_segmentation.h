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

#ifndef SILVERNER_TEXT_SEGMENTATION_H_
#define SILVERNER_TEXT_SEGMENTATION_H_

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace silverner {

struct Token {
  std::string text;
  // Byte offsets into the sentence text, start < end.
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Token &) const = default;
};

// Rule table for the tokenizer and sentence splitter.
struct TokenizerRules {
  // Characters that stay inside a word when both neighbours are letters or
  // digits (apostrophe-attached particles, hyphenated compounds).
  std::set<char32_t> word_joiners = {U'\'', U'’', U'՚', U'-', U'‑'};
  // Characters that stay inside a number when both neighbours are digits.
  std::set<char32_t> numeric_joiners = {U'.', U',', U':', U'/'};
  // Marks written on top of a word that never split it (Armenian emphasis,
  // exclamation and question marks).
  std::set<char32_t> attached_marks = {U'՛', U'՜', U'՞'};
  // Abbreviations that keep their final period, written without it.
  std::set<std::string> abbreviations = {
      "թ", "թթ", "դ", "դդ", "մ.թ.ա", "մ.թ", "Ք.ա", "Ք.հ", "կմ", "մ", "սմ", "կգ", "տ", "հա",
      "պրոֆ", "ակադ", "գ", "էջ", "հմմտ", "տե՛ս", "այլն", "և այլն", "օր", "փ", "պ", "ք", "ր",
      "Mr", "Mrs", "Dr", "St", "Jr", "Sr", "vs", "etc", "No", "Prof", "Inc", "Ltd", "Co",
      "г", "гг", "им", "ул",
  };
  // A single letter followed by a period is an initial, not a sentence end.
  bool initials = true;
  // Sentence terminators that always end a sentence.
  std::set<char32_t> hard_terminators = {U'։'};
  // Terminators that end a sentence only before whitespace and an uppercase
  // word, or at end of text.
  std::set<char32_t> soft_terminators = {U'.', U'?', U'!', U'…'};
};

// Reads a rule table: `abbrev<TAB>text`, `joiner<TAB>char`,
// `numeric<TAB>char`, `mark<TAB>char`, `initials<TAB>on|off`. Listed entries
// replace the defaults of their kind. Throws InputError on bad lines.
TokenizerRules ReadTokenizerRules(std::istream &in);

std::vector<Token> Tokenize(std::string_view sentence, const TokenizerRules &rules = {});

// Byte ranges [begin, end) of sentences. Newlines are hard boundaries;
// ranges are trimmed and cover every non-whitespace character.
std::vector<std::pair<std::size_t, std::size_t>> SegmentSentences(
    std::string_view text, const TokenizerRules &rules = {});

}  // namespace silverner

#endif  // SILVERNER_TEXT_SEGMENTATION_H_
