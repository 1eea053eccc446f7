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

#ifndef SILVERNER_EVALUATOR_H_
#define SILVERNER_EVALUATOR_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "silverner/corpus.h"
#include "silverner/types.h"

namespace silverner {

struct ChunkSpan {
  NEType type = NEType::kPER;
  std::size_t sentence = 0;
  std::size_t start = 0;
  // Inclusive.
  std::size_t end = 0;

  bool operator==(const ChunkSpan &) const = default;
  auto operator<=>(const ChunkSpan &) const = default;
};

// Maximal typed runs. A stray I-X opens a new X chunk, as conlleval does.
std::vector<ChunkSpan> ExtractChunks(const std::vector<Tag> &tags, std::size_t sentence = 0);

struct Metrics {
  std::int64_t correct = 0;
  std::int64_t predicted = 0;
  std::int64_t gold = 0;
  // Percentages; 0 when the denominator is 0.
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

Metrics MetricsFromCounts(std::int64_t correct, std::int64_t predicted, std::int64_t gold);

struct EvalReport {
  std::map<NEType, Metrics> per_type;
  // Micro-averaged over all chunks.
  Metrics overall;
};

// Exact-match chunk scoring. Throws InputError naming the first sentence or
// token where the two corpora are tokenized differently.
EvalReport Score(const AnnotatedCorpus &gold, const AnnotatedCorpus &pred);

// Aligned table with Precision/Recall/F1 columns at two decimals.
std::string RenderReport(const EvalReport &report);
// `type<TAB>P<TAB>R<TAB>F1` lines, per type then `overall`.
std::string RenderReportTsv(const EvalReport &report);

struct ConfusionMatrix {
  // counts[actual][predicted], indexed by TagIndex.
  std::array<std::array<std::int64_t, kNumTags>, kNumTags> counts{};

  std::int64_t Total() const;
  // Diagonal over column sum as a percentage; 0 for an empty column.
  double Precision(Tag predicted) const;
};

ConfusionMatrix Confusion(const AnnotatedCorpus &gold, const AnnotatedCorpus &pred);

// Rows and columns in the order O, B-PER, B-ORG, B-LOC, I-ORG, I-PER, I-LOC
// with a trailing precision row.
std::string RenderConfusion(const ConfusionMatrix &matrix);

}  // namespace silverner

#endif  // SILVERNER_EVALUATOR_H_
