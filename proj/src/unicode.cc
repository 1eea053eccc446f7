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

#include "silverner/unicode.h"

#include <unicode/uchar.h>

namespace silverner {
namespace utf8 {

char32_t Next(std::string_view s, std::size_t &pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    ++pos;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

char32_t Prev(std::string_view s, std::size_t &pos) {
  std::size_t start = pos;
  int back = 0;
  do {
    --start;
    ++back;
  } while (start > 0 && back < 4 &&
           (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80);
  std::size_t probe = start;
  char32_t cp = Next(s, probe);
  if (probe != pos) {
    // Malformed tail; step back a single byte.
    pos = pos - 1;
    return 0xFFFD;
  }
  pos = start;
  return cp;
}

void Append(std::string &out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<char32_t> Decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) out.push_back(Next(s, pos));
  return out;
}

std::string Encode(const std::vector<char32_t> &cps) {
  std::string out;
  for (char32_t cp : cps) Append(out, cp);
  return out;
}

std::size_t Length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) Next(s, pos);
  return n;
}

std::string_view Prefix(std::string_view s, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n && pos < s.size(); ++i) Next(s, pos);
  return s.substr(0, pos);
}

std::string_view Suffix(std::string_view s, std::size_t n) {
  std::size_t pos = s.size();
  for (std::size_t i = 0; i < n && pos > 0; ++i) Prev(s, pos);
  return s.substr(pos);
}

}  // namespace utf8

bool IsUpper(char32_t cp) { return u_charType(cp) == U_UPPERCASE_LETTER; }
bool IsLower(char32_t cp) { return u_charType(cp) == U_LOWERCASE_LETTER; }
bool IsDigit(char32_t cp) { return u_charType(cp) == U_DECIMAL_DIGIT_NUMBER; }
bool IsLetter(char32_t cp) { return u_isalpha(cp); }
bool IsSpace(char32_t cp) { return u_isUWhiteSpace(cp); }

bool IsPunctOrSymbol(char32_t cp) {
  if (u_ispunct(cp)) return true;
  switch (u_charType(cp)) {
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return true;
    default:
      return false;
  }
}

char32_t ToUpper(char32_t cp) { return u_toupper(cp); }

bool StartsUpper(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  return IsUpper(utf8::Next(s, pos));
}

std::string UpperFirst(std::string_view s) {
  if (s.empty()) return {};
  std::size_t pos = 0;
  char32_t first = utf8::Next(s, pos);
  std::string out;
  utf8::Append(out, ToUpper(first));
  out.append(s.substr(pos));
  return out;
}

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size()) {
    std::size_t p = b;
    if (!IsSpace(utf8::Next(s, p))) break;
    b = p;
  }
  std::size_t e = s.size();
  while (e > b) {
    std::size_t p = e;
    if (!IsSpace(utf8::Prev(s, p))) break;
    e = p;
  }
  return s.substr(b, e - b);
}

}  // namespace silverner
