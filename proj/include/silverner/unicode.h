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

#ifndef SILVERNER_UNICODE_H_
#define SILVERNER_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace silverner {

// UTF-8 helpers. Malformed sequences decode as U+FFFD and advance one byte.
namespace utf8 {

// Decodes the code point starting at byte offset `pos` and advances `pos`.
char32_t Next(std::string_view s, std::size_t &pos);

// Decodes the code point ending just before byte offset `pos` and moves
// `pos` back to its first byte.
char32_t Prev(std::string_view s, std::size_t &pos);

void Append(std::string &out, char32_t cp);

std::vector<char32_t> Decode(std::string_view s);
std::string Encode(const std::vector<char32_t> &cps);

std::size_t Length(std::string_view s);

// First and last `n` code points (whole string when shorter).
std::string_view Prefix(std::string_view s, std::size_t n);
std::string_view Suffix(std::string_view s, std::size_t n);

}  // namespace utf8

// Unicode general-category predicates.
bool IsUpper(char32_t cp);  // Lu
bool IsLower(char32_t cp);  // Ll
bool IsDigit(char32_t cp);  // Nd
bool IsLetter(char32_t cp);
bool IsSpace(char32_t cp);
// Punctuation or symbol; these split into their own tokens.
bool IsPunctOrSymbol(char32_t cp);
char32_t ToUpper(char32_t cp);

// True if the first code point of `s` is an uppercase letter.
bool StartsUpper(std::string_view s);

// `s` with its first code point uppercased.
std::string UpperFirst(std::string_view s);

std::string_view Trim(std::string_view s);

}  // namespace silverner

#endif  // SILVERNER_UNICODE_H_
