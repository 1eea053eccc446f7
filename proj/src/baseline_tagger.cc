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

#include "silverner/baseline_tagger.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

#include "silverner/conll_io.h"
#include "silverner/random.h"
#include "silverner/unicode.h"

namespace silverner {

using kernels::kLanes;
using kernels::ScoreRow;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::string WordShape(std::string_view word) {
  std::string shape;
  for (std::size_t p = 0; p < word.size();) {
    char32_t cp = utf8::Next(word, p);
    char c = IsUpper(cp) ? 'X' : IsLower(cp) ? 'x' : IsDigit(cp) ? '9' : '#';
    if (shape.empty() || shape.back() != c) shape.push_back(c);
  }
  return shape;
}

std::vector<std::string> ExtractFeatures(const std::vector<std::string> &words,
                                         std::size_t position,
                                         const FeatureTemplateConfig &config) {
  std::vector<std::string> f;
  const std::string &w = words[position];
  f.emplace_back("bias");
  if (config.use_current_word) f.push_back("w=" + w);
  if (config.use_prev_next_words) {
    for (int k = 1; k <= config.window; ++k) {
      const std::size_t off = static_cast<std::size_t>(k);
      f.push_back("w-" + std::to_string(k) + "=" +
                  (position >= off ? words[position - off] : std::string(kSentenceBegin)));
      f.push_back("w+" + std::to_string(k) + "=" +
                  (position + off < words.size() ? words[position + off]
                                                 : std::string(kSentenceEnd)));
    }
  }
  const std::size_t len = utf8::Length(w);
  const std::size_t max_n = std::min<std::size_t>(len, static_cast<std::size_t>(config.max_ngram));
  for (std::size_t n = 1; n <= max_n; ++n) {
    f.push_back("p" + std::to_string(n) + "=" + std::string(utf8::Prefix(w, n)));
  }
  for (std::size_t n = 1; n <= max_n; ++n) {
    f.push_back("s" + std::to_string(n) + "=" + std::string(utf8::Suffix(w, n)));
  }
  if (config.use_word_shape) f.push_back("sh=" + WordShape(w));
  return f;
}

std::uint64_t FeatureHash(std::string_view feature) {
  // FNV-1a
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : feature) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

TaggerModel::TaggerModel(FeatureTemplateConfig config) : config_(config) {
  if (config_.max_ngram < 1) throw InputError("max_ngram must be at least 1");
  if (config_.window < 0) throw InputError("window must be non-negative");
  if (config_.hash_bits < 1 || config_.hash_bits > 40) {
    throw InputError("hash_bits must lie in [1, 40]");
  }
  for (int from = 0; from <= kNumTags; ++from) {
    for (int c = 0; c < kLanes; ++c) transitions_[from].v[c] = kNegInf;
    for (Tag to : kAllTags) {
      std::optional<Tag> prev;
      if (from < kNumTags) prev = kAllTags[from];
      if (IsValidTransition(prev, to)) transitions_[from].v[TagIndex(to)] = 0.0;
    }
  }
}

int TaggerModel::Row(std::string_view feature, bool create) {
  const std::uint64_t bucket = FeatureHash(feature) & ((1ULL << config_.hash_bits) - 1);
  auto it = buckets_.find(bucket);
  if (it != buckets_.end()) {
    if (create && names_[it->second] != feature &&
        colliding_.insert(std::string(feature)).second) {
      ++collisions_;
    }
    return it->second;
  }
  if (!create) return -1;
  const int row = static_cast<int>(rows_.size());
  rows_.push_back(ScoreRow{});
  names_.emplace_back(feature);
  buckets_.emplace(bucket, row);
  return row;
}

int TaggerModel::Row(std::string_view feature) const {
  const std::uint64_t bucket = FeatureHash(feature) & ((1ULL << config_.hash_bits) - 1);
  auto it = buckets_.find(bucket);
  return it == buckets_.end() ? -1 : it->second;
}

std::vector<ScoreRow> TaggerModel::Emissions(const std::vector<std::string> &words,
                                             const kernels::KernelTable &k) const {
  std::vector<ScoreRow> em(words.size());
  std::vector<const ScoreRow *> active;
  for (std::size_t i = 0; i < words.size(); ++i) {
    active.clear();
    for (const auto &f : ExtractFeatures(words, i, config_)) {
      int r = Row(f);
      if (r >= 0) active.push_back(&rows_[r]);
    }
    k.accumulate_rows(active.data(), active.size(), &em[i]);
  }
  return em;
}

std::vector<Tag> ViterbiDecode(const std::vector<ScoreRow> &emissions,
                               const ScoreRow *transitions, const kernels::KernelTable &k) {
  const std::size_t n = emissions.size();
  if (n == 0) return {};
  std::vector<std::array<std::uint8_t, kLanes>> back(n);
  ScoreRow delta;
  for (int c = 0; c < kLanes; ++c) {
    delta.v[c] = transitions[TaggerModel::kStartRow].v[c] + emissions[0].v[c];
  }
  for (std::size_t i = 1; i < n; ++i) {
    ScoreRow next;
    k.viterbi_step(delta, transitions, kNumTags, emissions[i], &next, back[i].data());
    delta = next;
  }
  int best = 0;
  for (int c = 1; c < kNumTags; ++c) {
    if (delta.v[c] > delta.v[best]) best = c;
  }
  std::vector<Tag> tags(n);
  for (std::size_t i = n; i-- > 0;) {
    tags[i] = kAllTags[best];
    if (i > 0) best = back[i][best];
  }
  return tags;
}

std::vector<Tag> TaggerModel::Decode(const std::vector<std::string> &words,
                                     const kernels::KernelTable &k) const {
  return ViterbiDecode(Emissions(words, k), transitions_, k);
}

double TaggerModel::SequenceScore(const std::vector<std::string> &words,
                                  const std::vector<Tag> &tags) const {
  const auto em = Emissions(words, kernels::ScalarKernels());
  double score = 0.0;
  int prev = kStartRow;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    score += transitions_[prev].v[TagIndex(tags[i])] + em[i].v[TagIndex(tags[i])];
    prev = TagIndex(tags[i]);
  }
  return score;
}

namespace {

constexpr std::string_view kMagic = "silverner-tagger";
constexpr std::string_view kVersion = "v1";

std::string FormatWeight(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> f;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    f.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return f;
}

std::string FromName(int from) {
  return from == TaggerModel::kStartRow ? std::string(kSentenceBegin)
                                        : std::string(TagName(kAllTags[from]));
}

}  // namespace

void TaggerModel::Save(std::ostream &os) const {
  os << kMagic << '\t' << kVersion << "\tcurrent_word=" << config_.use_current_word
     << "\tprev_next=" << config_.use_prev_next_words << "\tmax_ngram=" << config_.max_ngram
     << "\tshape=" << config_.use_word_shape << "\twindow=" << config_.window
     << "\thash_bits=" << config_.hash_bits << "\tepochs=" << epochs_ << "\tseed=" << seed_
     << '\n';
  for (int from = 0; from <= kNumTags; ++from) {
    for (Tag to : kAllTags) {
      double w = transitions_[from].v[TagIndex(to)];
      if (w == kNegInf) continue;
      os << "TRANS\t" << FromName(from) << '\t' << TagName(to) << '\t' << FormatWeight(w) << '\n';
    }
  }
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names_[a] < names_[b]; });
  for (int r : order) {
    for (Tag t : kAllTags) {
      double w = rows_[r].v[TagIndex(t)];
      if (w == 0.0) continue;
      os << names_[r] << '\t' << TagName(t) << '\t' << FormatWeight(w) << '\n';
    }
  }
}

TaggerModel TaggerModel::Load(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("model file is empty");
  auto header = SplitTabs(line);
  if (header.size() < 2 || header[0] != kMagic) throw InputError("not a tagger model file");
  if (header[1] != kVersion) throw InputError("unsupported model version '" + header[1] + "'");
  FeatureTemplateConfig config;
  int epochs = 0;
  std::uint64_t seed = 0;
  for (std::size_t i = 2; i < header.size(); ++i) {
    std::size_t eq = header[i].find('=');
    if (eq == std::string::npos) throw InputError("bad model header field '" + header[i] + "'");
    std::string key = header[i].substr(0, eq);
    std::string value = header[i].substr(eq + 1);
    char *end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || *end != '\0') throw InputError("bad model header value '" + header[i] + "'");
    if (key == "current_word") config.use_current_word = v != 0;
    else if (key == "prev_next") config.use_prev_next_words = v != 0;
    else if (key == "max_ngram") config.max_ngram = static_cast<int>(v);
    else if (key == "shape") config.use_word_shape = v != 0;
    else if (key == "window") config.window = static_cast<int>(v);
    else if (key == "hash_bits") config.hash_bits = static_cast<int>(v);
    else if (key == "epochs") epochs = static_cast<int>(v);
    else if (key == "seed") seed = static_cast<std::uint64_t>(v);
    else throw InputError("unknown model header field '" + key + "'");
  }
  TaggerModel model(config);
  model.set_training(epochs, seed);
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto f = SplitTabs(line);
    auto fail = [&](const std::string &what) {
      throw InputError("model line " + std::to_string(line_number) + ": " + what);
    };
    auto weight = [&](const std::string &s) {
      char *end = nullptr;
      double w = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0') fail("bad weight '" + s + "'");
      return w;
    };
    if (f[0] == "TRANS") {
      if (f.size() != 4) fail("expected TRANS<TAB>tag<TAB>tag<TAB>weight");
      int from = -1;
      if (f[1] == kSentenceBegin) {
        from = kStartRow;
      } else if (auto t = ParseTag(f[1])) {
        from = TagIndex(*t);
      }
      auto to = ParseTag(f[2]);
      if (from < 0 || !to) fail("bad transition tags");
      if (model.transitions_[from].v[TagIndex(*to)] == kNegInf) fail("forbidden transition");
      model.transitions_[from].v[TagIndex(*to)] = weight(f[3]);
    } else {
      if (f.size() != 3) fail("expected feature<TAB>tag<TAB>weight");
      auto tag = ParseTag(f[1]);
      if (!tag) fail("unknown tag '" + f[1] + "'");
      int r = model.Row(f[0], true);
      model.rows_[r].v[TagIndex(*tag)] += weight(f[2]);
    }
  }
  return model;
}

std::vector<std::string> Words(const LabeledSentence &sentence) {
  std::vector<std::string> words;
  words.reserve(sentence.tokens.size());
  for (const auto &t : sentence.tokens) words.push_back(t.text);
  return words;
}

TaggerModel Train(const AnnotatedCorpus &corpus, int epochs, std::uint64_t seed,
                  const FeatureTemplateConfig &config, TrainReport *report) {
  if (epochs < 1) throw InputError("epochs must be at least 1");
  if (corpus.sentences.empty()) throw InputError("cannot train on an empty corpus");
  if (auto v = ValidateIob(corpus); !v.empty()) {
    throw InputError("training corpus is not IOB2-valid: sentence " +
                     std::to_string(v[0].sentence) + " token " + std::to_string(v[0].token));
  }
  TaggerModel model(config);
  model.set_training(epochs, seed);
  const auto &k = kernels::ActiveKernels();

  // Feature rows per sentence and token.
  std::vector<std::vector<std::vector<int>>> features(corpus.sentences.size());
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto words = Words(corpus.sentences[s]);
    features[s].resize(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (const auto &f : ExtractFeatures(words, i, config)) {
        features[s][i].push_back(model.Row(f, true));
      }
    }
  }

  auto &weights = model.rows();
  ScoreRow *trans = model.transitions();
  std::vector<ScoreRow> sums(weights.size(), ScoreRow{});
  ScoreRow trans_sums[kNumTags + 1] = {};
  double step = 1.0;
  std::int64_t updates = 0;

  SeededShuffler shuffler(seed);
  std::vector<ScoreRow> em;
  std::vector<const ScoreRow *> active;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t s : shuffler.Permutation(corpus.sentences.size())) {
      const auto &gold = corpus.sentences[s].tags;
      const auto &feats = features[s];
      em.assign(feats.size(), ScoreRow{});
      for (std::size_t i = 0; i < feats.size(); ++i) {
        active.clear();
        for (int r : feats[i]) active.push_back(&weights[r]);
        k.accumulate_rows(active.data(), active.size(), &em[i]);
      }
      const std::vector<Tag> pred = ViterbiDecode(em, trans, k);
      if (pred != gold) {
        ++updates;
        for (std::size_t i = 0; i < gold.size(); ++i) {
          const int g = TagIndex(gold[i]);
          const int p = TagIndex(pred[i]);
          if (g != p) {
            for (int r : feats[i]) {
              weights[r].v[g] += 1.0;
              sums[r].v[g] += step;
              weights[r].v[p] -= 1.0;
              sums[r].v[p] -= step;
            }
          }
          const int gp = i > 0 ? TagIndex(gold[i - 1]) : TaggerModel::kStartRow;
          const int pp = i > 0 ? TagIndex(pred[i - 1]) : TaggerModel::kStartRow;
          if (gp != pp || g != p) {
            trans[gp].v[g] += 1.0;
            trans_sums[gp].v[g] += step;
            trans[pp].v[p] -= 1.0;
            trans_sums[pp].v[p] -= step;
          }
        }
      }
      step += 1.0;
    }
  }
  for (std::size_t r = 0; r < weights.size(); ++r) {
    for (int c = 0; c < kNumTags; ++c) weights[r].v[c] -= sums[r].v[c] / step;
  }
  for (int from = 0; from <= kNumTags; ++from) {
    for (int c = 0; c < kNumTags; ++c) {
      if (trans[from].v[c] != kNegInf) trans[from].v[c] -= trans_sums[from].v[c] / step;
    }
  }
  if (report) {
    report->updates = updates;
    report->features = static_cast<std::int64_t>(model.num_rows());
    report->collisions = model.collisions();
  }
  return model;
}

AnnotatedCorpus TagCorpus(const TaggerModel &model, const AnnotatedCorpus &corpus) {
  AnnotatedCorpus out = corpus;
  const auto &k = kernels::ActiveKernels();
  for (auto &s : out.sentences) s.tags = model.Decode(Words(s), k);
  return out;
}

}  // namespace silverner
