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

#ifndef SILVERNER_BASELINE_TAGGER_H_
#define SILVERNER_BASELINE_TAGGER_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "silverner/corpus.h"
#include "silverner/tagger_kernels.h"
#include "silverner/types.h"

namespace silverner {

struct FeatureTemplateConfig {
  bool use_current_word = true;
  bool use_prev_next_words = true;
  // Longest prefix/suffix in code points; at least 1.
  int max_ngram = 6;
  bool use_word_shape = true;
  // Neighbouring words on each side.
  int window = 1;
  // Feature table size is 2^hash_bits buckets.
  int hash_bits = 22;

  bool operator==(const FeatureTemplateConfig &) const = default;
};

inline constexpr std::string_view kSentenceBegin = "<S>";
inline constexpr std::string_view kSentenceEnd = "</S>";

// Uppercase -> X, lowercase -> x, digit -> 9, anything else -> #, with runs
// collapsed: "ՀՀ" -> "X", "Աբո" -> "Xx".
std::string WordShape(std::string_view word);

std::vector<std::string> ExtractFeatures(const std::vector<std::string> &words,
                                         std::size_t position,
                                         const FeatureTemplateConfig &config = {});

std::uint64_t FeatureHash(std::string_view feature);

// Linear-chain model: one weight row per hashed feature and a transition
// table whose IOB2-invalid entries are fixed at -infinity.
class TaggerModel {
 public:
  static constexpr int kStartRow = kNumTags;

  explicit TaggerModel(FeatureTemplateConfig config = {});

  const FeatureTemplateConfig &config() const { return config_; }
  int epochs() const { return epochs_; }
  std::uint64_t seed() const { return seed_; }
  void set_training(int epochs, std::uint64_t seed) {
    epochs_ = epochs;
    seed_ = seed;
  }

  // Row index of a feature, creating it when asked. -1 if absent.
  int Row(std::string_view feature, bool create);
  int Row(std::string_view feature) const;
  std::size_t num_rows() const { return rows_.size(); }
  // Distinct feature strings that landed in an occupied bucket.
  std::int64_t collisions() const { return collisions_; }

  double &Weight(int row, Tag tag) { return rows_[row].v[TagIndex(tag)]; }
  double Weight(int row, Tag tag) const { return rows_[row].v[TagIndex(tag)]; }
  // `from` is a tag index or kStartRow.
  double &Transition(int from, Tag to) { return transitions_[from].v[TagIndex(to)]; }
  double Transition(int from, Tag to) const { return transitions_[from].v[TagIndex(to)]; }

  std::vector<kernels::ScoreRow> &rows() { return rows_; }
  const std::vector<kernels::ScoreRow> &rows() const { return rows_; }
  kernels::ScoreRow *transitions() { return transitions_; }
  const kernels::ScoreRow *transitions() const { return transitions_; }

  // Emission scores per position (lanes = tags).
  std::vector<kernels::ScoreRow> Emissions(const std::vector<std::string> &words,
                                           const kernels::KernelTable &k) const;

  // Highest-scoring IOB2-valid tag sequence; ties go to the lower tag index.
  std::vector<Tag> Decode(const std::vector<std::string> &words,
                          const kernels::KernelTable &k = kernels::ActiveKernels()) const;

  double SequenceScore(const std::vector<std::string> &words, const std::vector<Tag> &tags) const;

  // Header line, then TRANS lines and `feature<TAB>tag<TAB>weight` lines.
  void Save(std::ostream &os) const;
  static TaggerModel Load(std::istream &in);

 private:
  FeatureTemplateConfig config_;
  int epochs_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<kernels::ScoreRow> rows_;
  std::vector<std::string> names_;
  std::unordered_map<std::uint64_t, int> buckets_;
  std::unordered_set<std::string> colliding_;
  std::int64_t collisions_ = 0;
  kernels::ScoreRow transitions_[kNumTags + 1];
};

// Decodes with explicit emission scores; shared by the model and training.
std::vector<Tag> ViterbiDecode(const std::vector<kernels::ScoreRow> &emissions,
                               const kernels::ScoreRow *transitions,
                               const kernels::KernelTable &k);

struct TrainReport {
  std::int64_t updates = 0;
  std::int64_t features = 0;
  std::int64_t collisions = 0;
};

// Averaged structured perceptron. Throws InputError on epochs < 1, an empty
// corpus or an IOB-invalid sentence.
TaggerModel Train(const AnnotatedCorpus &corpus, int epochs, std::uint64_t seed,
                  const FeatureTemplateConfig &config = {}, TrainReport *report = nullptr);

// Same sentences and tokens, tags replaced by the model's.
AnnotatedCorpus TagCorpus(const TaggerModel &model, const AnnotatedCorpus &corpus);

std::vector<std::string> Words(const LabeledSentence &sentence);

}  // namespace silverner

#endif  // SILVERNER_BASELINE_TAGGER_H_
