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

// Helpers shared by the test binaries: random corpora and brute-force oracles
// written independently of the library code they check.
#ifndef SILVERNER_TESTS_TEST_SUPPORT_H_
#define SILVERNER_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "silverner/corpus.h"
#include "silverner/types.h"

namespace testing {

using silverner::AnnotatedCorpus;
using silverner::LabeledSentence;
using silverner::Tag;

inline std::string DataPath(const std::string &rel) {
  return std::string(SILVERNER_TEST_DATA) + "/" + rel;
}

inline std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Fresh scratch directory under the build tree.
inline std::string ScratchDir(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / ("silverner_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

// Tag names spelled out here rather than taken from the library.
inline const char *const kTagNames[7] = {"O", "B-PER", "I-PER", "B-ORG", "I-ORG", "B-LOC", "I-LOC"};

inline int TypeOf(int tag) { return tag == 0 ? -1 : (tag - 1) / 2; }
inline bool IsB(int tag) { return tag != 0 && (tag - 1) % 2 == 0; }
inline bool IsI(int tag) { return tag != 0 && (tag - 1) % 2 == 1; }

// IOB2 validity straight from the definition.
inline bool ValidIob2(const std::vector<int> &tags) {
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!IsI(tags[i])) continue;
    if (i == 0 || tags[i - 1] == 0 || TypeOf(tags[i - 1]) != TypeOf(tags[i])) return false;
  }
  return true;
}

// Random IOB2-valid tag sequence built by choosing chunks left to right.
inline std::vector<int> RandomValidTags(std::mt19937_64 &rng, std::size_t len) {
  std::vector<int> tags;
  while (tags.size() < len) {
    if (rng() % 2 == 0) {
      tags.push_back(0);
      continue;
    }
    int type = static_cast<int>(rng() % 3);
    std::size_t chunk = 1 + rng() % 3;
    tags.push_back(1 + 2 * type);
    for (std::size_t k = 1; k < chunk && tags.size() < len; ++k) tags.push_back(2 + 2 * type);
  }
  return tags;
}

// Arbitrary tag sequence, possibly IOB2-invalid.
inline std::vector<int> RandomAnyTags(std::mt19937_64 &rng, std::size_t len) {
  std::vector<int> tags(len);
  for (auto &t : tags) t = static_cast<int>(rng() % 7);
  return tags;
}

// (type, start, end) chunks by exhaustive enumeration of all spans: a span is a
// chunk iff it opens (B-X, or I-X not continuing an X run), every inner token
// is I-X, and it is not followed by I-X.
inline std::set<std::tuple<int, int, int>> BruteChunks(const std::vector<int> &tags) {
  std::set<std::tuple<int, int, int>> out;
  const int n = static_cast<int>(tags.size());
  for (int s = 0; s < n; ++s) {
    for (int e = s; e < n; ++e) {
      int x = TypeOf(tags[s]);
      if (x < 0) continue;
      bool opens = IsB(tags[s]) || s == 0 || TypeOf(tags[s - 1]) != x;
      if (!opens) continue;
      bool inner = true;
      for (int k = s + 1; k <= e; ++k) inner = inner && IsI(tags[k]) && TypeOf(tags[k]) == x;
      if (!inner) continue;
      bool closed = e + 1 == n || !(IsI(tags[e + 1]) && TypeOf(tags[e + 1]) == x);
      if (closed) out.insert({x, s, e});
    }
  }
  return out;
}

inline std::vector<Tag> ToTags(const std::vector<int> &v) {
  std::vector<Tag> out;
  for (int t : v) out.push_back(static_cast<Tag>(t));
  return out;
}

inline std::vector<int> FromTags(const std::vector<Tag> &v) {
  std::vector<int> out;
  for (Tag t : v) out.push_back(static_cast<int>(t));
  return out;
}

inline std::string RandomWord(std::mt19937_64 &rng) {
  static const std::vector<std::string> pieces = {"Ա", "բ", "գ", "Դ", "ե", "զ", "x", "Y", "7", "ու",
                                                   "Ք", "ֆ", "-", "é", "Ж", "ö", "ը", "Հ"};
  std::string w;
  std::size_t len = 1 + rng() % 4;
  for (std::size_t k = 0; k < len; ++k) w += pieces[rng() % pieces.size()];
  if (w == "-") w = "z";
  return w;
}

inline AnnotatedCorpus RandomCorpus(std::mt19937_64 &rng, std::size_t max_sentences = 12,
                                    std::size_t max_len = 15) {
  AnnotatedCorpus c;
  std::size_t n = rng() % (max_sentences + 1);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t len = 1 + rng() % max_len;
    std::vector<std::string> words;
    for (std::size_t k = 0; k < len; ++k) words.push_back(RandomWord(rng));
    LabeledSentence sentence;
    sentence.tokens = silverner::TokensFromTexts(words);
    sentence.tags = ToTags(RandomValidTags(rng, len));
    c.sentences.push_back(std::move(sentence));
  }
  return c;
}

inline std::vector<std::string> Texts(const LabeledSentence &s) {
  std::vector<std::string> out;
  for (const auto &t : s.tokens) out.push_back(t.text);
  return out;
}

// Content equality: token texts and tags per sentence.
inline bool SameContent(const AnnotatedCorpus &a, const AnnotatedCorpus &b) {
  if (a.sentences.size() != b.sentences.size()) return false;
  for (std::size_t i = 0; i < a.sentences.size(); ++i) {
    if (Texts(a.sentences[i]) != Texts(b.sentences[i])) return false;
    if (a.sentences[i].tags != b.sentences[i].tags) return false;
  }
  return true;
}

// Corpus whose entity vocabularies are disjoint per type, so a per-word
// classifier separates it.
inline AnnotatedCorpus SeparableCorpus(std::size_t sentences, std::uint64_t seed) {
  static const std::vector<std::string> per = {"Արամ", "Աննա", "Տիգրան", "Մարիամ", "Գևորգ", "Լուսինե"};
  static const std::vector<std::string> org = {"Ֆիֆա", "Յունեսկո", "Նասա", "Արմենտել", "Ակբա"};
  static const std::vector<std::string> loc = {"Երևան", "Գյումրի", "Սևան", "Դիլիջան", "Վանաձոր"};
  static const std::vector<std::string> other = {"և", "է", "մեջ", "հետ", "այսօր", "եկավ", "տեսավ",
                                                 "գնաց", "շատ", "մեծ", ",", "։"};
  std::mt19937_64 rng(seed);
  AnnotatedCorpus c;
  for (std::size_t s = 0; s < sentences; ++s) {
    std::vector<std::string> words;
    std::vector<int> tags;
    std::size_t parts = 2 + rng() % 5;
    for (std::size_t p = 0; p < parts; ++p) {
      int kind = static_cast<int>(rng() % 4);
      if (kind == 3) {
        words.push_back(other[rng() % other.size()]);
        tags.push_back(0);
        continue;
      }
      const auto &vocab = kind == 0 ? per : kind == 1 ? org : loc;
      std::size_t len = 1 + rng() % 2;
      for (std::size_t k = 0; k < len; ++k) {
        words.push_back(vocab[rng() % vocab.size()]);
        tags.push_back(k == 0 ? 1 + 2 * kind : 2 + 2 * kind);
      }
      // A separator keeps adjacent chunks of the same type apart.
      words.push_back(other[rng() % other.size()]);
      tags.push_back(0);
    }
    LabeledSentence sentence;
    sentence.tokens = silverner::TokensFromTexts(words);
    sentence.tags = ToTags(tags);
    c.sentences.push_back(std::move(sentence));
  }
  return c;
}

}  // namespace testing

#endif  // SILVERNER_TESTS_TEST_SUPPORT_H_
