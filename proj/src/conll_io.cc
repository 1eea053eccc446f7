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

#include "silverner/conll_io.h"

#include <algorithm>
#include <cmath>

#include "silverner/random.h"

namespace silverner {

std::vector<Token> TokensFromTexts(const std::vector<std::string> &texts) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  for (const auto &t : texts) {
    tokens.push_back(Token{t, pos, pos + t.size()});
    pos += t.size() + 1;
  }
  return tokens;
}

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

}  // namespace

void WriteConll(std::ostream &os, const AnnotatedCorpus &corpus, bool provenance) {
  if (provenance) {
    for (const auto &line : corpus.provenance) {
      auto fields = SplitFields(line);
      if (line.find('\n') != std::string::npos || (!fields.empty() && ParseTag(fields.back()))) {
        throw InvariantError("provenance line would read back as a token: " + line);
      }
      os << "# " << line << '\n';
    }
  }
  for (const auto &s : corpus.sentences) {
    if (s.tokens.empty() || s.tokens.size() != s.tags.size()) {
      throw InvariantError("sentence without tokens or with mismatched tags");
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const std::string &text = s.tokens[i].text;
      if (text.empty() || text.find_first_of(" \t\r\n") != std::string::npos) {
        throw InvariantError("token '" + text + "' cannot be written as one field");
      }
      os << text << ' ' << TagName(s.tags[i]) << '\n';
    }
    os << '\n';
  }
}

AnnotatedCorpus ReadConll(std::istream &in) {
  AnnotatedCorpus corpus;
  std::vector<std::string> texts;
  std::vector<Tag> tags;
  bool in_header = true;
  auto flush = [&]() {
    if (texts.empty()) return;
    LabeledSentence s;
    s.tokens = TokensFromTexts(texts);
    s.tags = std::move(tags);
    corpus.sentences.push_back(std::move(s));
    texts.clear();
    tags.clear();
  };
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = SplitFields(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (in_header && line.rfind("# ", 0) == 0 && !ParseTag(fields.back())) {
      corpus.provenance.push_back(line.substr(2));
      continue;
    }
    in_header = false;
    if (fields[0] == "-DOCSTART-") {
      flush();
      continue;
    }
    if (fields.size() < 2) {
      throw InputError("line " + std::to_string(line_number) + ": expected token and tag");
    }
    auto tag = ParseTag(fields.back());
    if (!tag) {
      throw InputError("line " + std::to_string(line_number) + ": unknown tag '" +
                       std::string(fields.back()) + "'");
    }
    texts.emplace_back(fields.front());
    tags.push_back(*tag);
  }
  flush();
  return corpus;
}

bool IsIobValid(const std::vector<Tag> &tags) {
  std::optional<Tag> prev;
  for (Tag t : tags) {
    if (!IsValidTransition(prev, t)) return false;
    prev = t;
  }
  return true;
}

std::vector<IobViolation> ValidateIob(const AnnotatedCorpus &corpus) {
  std::vector<IobViolation> out;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto &tags = corpus.sentences[s].tags;
    std::optional<Tag> prev;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (!IsValidTransition(prev, tags[i])) {
        std::string reason = std::string(TagName(tags[i])) + " after " +
                             (prev ? std::string(TagName(*prev)) : std::string("sentence start"));
        out.push_back(IobViolation{s, i, std::move(reason)});
      }
      prev = tags[i];
    }
  }
  return out;
}

CorpusStats &CorpusStats::operator+=(const CorpusStats &other) {
  sentences += other.sentences;
  tokens += other.tokens;
  for (const auto &[type, n] : other.entities) entities[type] += n;
  return *this;
}

CorpusStats ComputeStats(const AnnotatedCorpus &corpus) {
  CorpusStats stats;
  stats.sentences = static_cast<std::int64_t>(corpus.sentences.size());
  for (const auto &s : corpus.sentences) {
    stats.tokens += static_cast<std::int64_t>(s.tokens.size());
    for (Tag t : s.tags) {
      if (IsBegin(t)) ++stats.entities[*TagType(t)];
    }
  }
  return stats;
}

std::pair<AnnotatedCorpus, AnnotatedCorpus> SplitCorpus(const AnnotatedCorpus &corpus,
                                                        double train_fraction,
                                                        std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InputError("train fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = corpus.sentences.size();
  if (n == 0) throw InputError("cannot split an empty corpus");
  const auto train_size = static_cast<std::size_t>(std::llround(train_fraction * n));
  SeededShuffler shuffler(seed);
  std::vector<std::size_t> order = shuffler.Permutation(n);
  std::vector<bool> in_train(n, false);
  for (std::size_t k = 0; k < train_size; ++k) in_train[order[k]] = true;
  std::pair<AnnotatedCorpus, AnnotatedCorpus> parts;
  parts.first.provenance = corpus.provenance;
  parts.second.provenance = corpus.provenance;
  for (std::size_t i = 0; i < n; ++i) {
    (in_train[i] ? parts.first : parts.second).sentences.push_back(corpus.sentences[i]);
  }
  return parts;
}

}  // namespace silverner
