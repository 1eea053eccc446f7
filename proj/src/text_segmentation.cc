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

#include "silverner/text_segmentation.h"

#include <algorithm>

#include "silverner/types.h"
#include "silverner/unicode.h"

namespace silverner {
namespace {

bool IsWordChar(char32_t cp, const TokenizerRules &rules) {
  if (IsSpace(cp) || cp == 0xA0) return false;
  if (rules.attached_marks.count(cp)) return true;
  return !IsPunctOrSymbol(cp);
}

bool IsAlnum(char32_t cp) { return IsLetter(cp) || IsDigit(cp); }

char32_t PeekAt(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  return utf8::Next(s, pos);
}

char32_t PeekBefore(std::string_view s, std::size_t pos) {
  if (pos == 0) return 0;
  return utf8::Prev(s, pos);
}

// Abbreviations sorted longest first so "մ.թ.ա" wins over "մ".
std::vector<std::string> SortedAbbreviations(const TokenizerRules &rules) {
  std::vector<std::string> out(rules.abbreviations.begin(), rules.abbreviations.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const std::string &a, const std::string &b) { return a.size() > b.size(); });
  return out;
}

std::size_t MatchAbbreviation(std::string_view s, std::size_t pos,
                              const std::vector<std::string> &abbreviations) {
  for (const auto &abbr : abbreviations) {
    if (s.substr(pos, abbr.size()) != abbr) continue;
    std::size_t dot = pos + abbr.size();
    if (dot >= s.size() || s[dot] != '.') continue;
    if (IsLetter(PeekAt(s, dot + 1))) continue;
    // The abbreviation must not be the tail of a longer word.
    if (IsLetter(PeekBefore(s, pos))) continue;
    return dot + 1;
  }
  return 0;
}

std::string_view Field(std::string_view line, std::size_t &start) {
  std::size_t tab = line.find('\t', start);
  std::string_view f = line.substr(start, tab == std::string_view::npos ? tab : tab - start);
  start = tab == std::string_view::npos ? line.size() : tab + 1;
  return f;
}

}  // namespace

TokenizerRules ReadTokenizerRules(std::istream &in) {
  TokenizerRules rules;
  bool seen_abbrev = false, seen_joiner = false, seen_numeric = false, seen_mark = false;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view body = line;
    if (!body.empty() && body.back() == '\r') body.remove_suffix(1);
    if (Trim(body).empty() || body[0] == '#') continue;
    std::size_t pos = 0;
    std::string_view kind = Field(body, pos);
    std::string_view value = pos < body.size() ? Field(body, pos) : std::string_view();
    auto fail = [&](const std::string &what) {
      throw InputError("tokenizer rules line " + std::to_string(line_number) + ": " + what);
    };
    if (value.empty()) fail("missing value");
    auto single = [&]() {
      auto cps = utf8::Decode(value);
      if (cps.size() != 1) fail("expected a single character");
      return cps[0];
    };
    if (kind == "abbrev") {
      if (!seen_abbrev) rules.abbreviations.clear();
      seen_abbrev = true;
      std::string a(value);
      if (!a.empty() && a.back() == '.') a.pop_back();
      rules.abbreviations.insert(a);
    } else if (kind == "joiner") {
      if (!seen_joiner) rules.word_joiners.clear();
      seen_joiner = true;
      rules.word_joiners.insert(single());
    } else if (kind == "numeric") {
      if (!seen_numeric) rules.numeric_joiners.clear();
      seen_numeric = true;
      rules.numeric_joiners.insert(single());
    } else if (kind == "mark") {
      if (!seen_mark) rules.attached_marks.clear();
      seen_mark = true;
      rules.attached_marks.insert(single());
    } else if (kind == "initials") {
      if (value != "on" && value != "off") fail("initials must be on or off");
      rules.initials = value == "on";
    } else {
      fail("unknown rule kind '" + std::string(kind) + "'");
    }
  }
  return rules;
}

std::vector<Token> Tokenize(std::string_view s, const TokenizerRules &rules) {
  const std::vector<std::string> abbreviations = SortedAbbreviations(rules);
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = pos;
    char32_t cp = utf8::Next(s, next);
    if (IsSpace(cp) || cp == 0xA0) {
      pos = next;
      continue;
    }
    std::size_t start = pos;
    if (std::size_t end = MatchAbbreviation(s, pos, abbreviations)) {
      tokens.push_back(Token{std::string(s.substr(start, end - start)), start, end});
      pos = end;
      continue;
    }
    if (!IsWordChar(cp, rules)) {
      std::size_t end = next;
      if (cp == U'.') {
        // Ellipsis written as dots.
        while (end < s.size() && s[end] == '.') ++end;
      }
      tokens.push_back(Token{std::string(s.substr(start, end - start)), start, end});
      pos = end;
      continue;
    }
    char32_t prev = cp;
    std::size_t end = next;
    std::size_t letters = IsLetter(cp) ? 1 : 0;
    while (end < s.size()) {
      std::size_t after = end;
      char32_t c = utf8::Next(s, after);
      if (IsWordChar(c, rules)) {
        if (IsLetter(c)) ++letters;
        prev = c;
        end = after;
        continue;
      }
      char32_t following = PeekAt(s, after);
      bool joins = (rules.word_joiners.count(c) && IsAlnum(prev) && IsAlnum(following)) ||
                   (rules.numeric_joiners.count(c) && IsDigit(prev) && IsDigit(following));
      if (!joins) break;
      prev = c;
      end = after;
    }
    if (rules.initials && letters == 1 && end < s.size() && s[end] == '.' &&
        utf8::Length(s.substr(start, end - start)) == 1 && IsUpper(cp) &&
        !IsLetter(PeekAt(s, end + 1))) {
      ++end;
    }
    tokens.push_back(Token{std::string(s.substr(start, end - start)), start, end});
    pos = end;
  }
  return tokens;
}

namespace {

bool IsClosingPunct(std::string_view t) {
  static const std::set<std::string_view> kClosing = {"»", "”", "’", "\"", "'", ")", "]",
                                                      "}", "›"};
  return kClosing.count(t) > 0;
}

bool IsOpeningPunct(std::string_view t) {
  static const std::set<std::string_view> kOpening = {"«", "“", "„", "(", "[", "\"", "'", "‹"};
  return kOpening.count(t) > 0;
}

enum class Terminator { kNone, kHard, kSoft };

Terminator Classify(std::string_view token, const TokenizerRules &rules) {
  auto cps = utf8::Decode(token);
  if (cps.empty()) return Terminator::kNone;
  bool all_soft = true;
  for (char32_t c : cps) {
    if (rules.hard_terminators.count(c)) return Terminator::kHard;
    if (!rules.soft_terminators.count(c)) all_soft = false;
  }
  return all_soft ? Terminator::kSoft : Terminator::kNone;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> SegmentSentences(std::string_view text,
                                                                  const TokenizerRules &rules) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t nl = text.find('\n', line_start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(line_start, nl - line_start);
    std::vector<Token> tokens = Tokenize(line, rules);
    std::size_t first = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      Terminator kind = Classify(tokens[i].text, rules);
      if (kind == Terminator::kNone) continue;
      // Absorb runs of terminators and closing quotes/brackets glued to it.
      std::size_t last = i;
      while (last + 1 < tokens.size() && tokens[last + 1].start == tokens[last].end &&
             (IsClosingPunct(tokens[last + 1].text) ||
              Classify(tokens[last + 1].text, rules) != Terminator::kNone)) {
        ++last;
      }
      bool boundary = false;
      if (last + 1 >= tokens.size()) {
        boundary = true;
      } else if (kind == Terminator::kHard) {
        boundary = true;
      } else {
        const Token &next = tokens[last + 1];
        bool spaced = next.start > tokens[last].end;
        std::size_t word = last + 1;
        while (word < tokens.size() && IsOpeningPunct(tokens[word].text)) ++word;
        bool upper = word < tokens.size() && StartsUpper(tokens[word].text);
        boundary = spaced && upper;
      }
      if (boundary) {
        ranges.emplace_back(line_start + tokens[first].start, line_start + tokens[last].end);
        first = last + 1;
      }
      i = last;
    }
    if (first < tokens.size()) {
      ranges.emplace_back(line_start + tokens[first].start, line_start + tokens.back().end);
    }
    if (nl == text.size()) break;
    line_start = nl + 1;
  }
  return ranges;
}

}  // namespace silverner
