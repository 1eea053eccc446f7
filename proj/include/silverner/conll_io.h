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

#ifndef SILVERNER_CONLL_IO_H_
#define SILVERNER_CONLL_IO_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "silverner/corpus.h"
#include "silverner/types.h"

namespace silverner {

// One `token tag` line per token, a blank line after each sentence. With
// `provenance` set, header lines are written first as `# ` comments.
void WriteConll(std::ostream &os, const AnnotatedCorpus &corpus, bool provenance = true);

// Tolerant reader: fields split on runs of spaces/tabs, the first is the
// token and the last the tag. Leading `# ` comment lines become provenance
// and `-DOCSTART-` lines are skipped. Throws InputError naming the line on a
// short line or a tag outside the 7-tag set.
AnnotatedCorpus ReadConll(std::istream &in);

struct IobViolation {
  std::size_t sentence = 0;
  std::size_t token = 0;
  std::string reason;
};

std::vector<IobViolation> ValidateIob(const AnnotatedCorpus &corpus);
bool IsIobValid(const std::vector<Tag> &tags);

struct CorpusStats {
  std::int64_t sentences = 0;
  std::int64_t tokens = 0;
  std::map<NEType, std::int64_t> entities = {
      {NEType::kPER, 0}, {NEType::kORG, 0}, {NEType::kLOC, 0}};

  CorpusStats &operator+=(const CorpusStats &other);
  bool operator==(const CorpusStats &) const = default;
};

// Chunks are counted by B- tags.
CorpusStats ComputeStats(const AnnotatedCorpus &corpus);

// Sentence-level seeded split; |train| = round(fraction * N). Both parts
// keep corpus order. Throws InputError on an empty corpus or a fraction
// outside (0, 1).
std::pair<AnnotatedCorpus, AnnotatedCorpus> SplitCorpus(const AnnotatedCorpus &corpus,
                                                        double train_fraction,
                                                        std::uint64_t seed);

}  // namespace silverner

#endif  // SILVERNER_CONLL_IO_H_
