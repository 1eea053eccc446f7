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

#include "silverner/evaluator.h"

#include <algorithm>
#include <cstdio>
#include <set>

namespace silverner {

std::vector<ChunkSpan> ExtractChunks(const std::vector<Tag> &tags, std::size_t sentence) {
  std::vector<ChunkSpan> chunks;
  bool open = false;
  ChunkSpan cur;
  auto close = [&](std::size_t end) {
    if (!open) return;
    cur.end = end;
    chunks.push_back(cur);
    open = false;
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    Tag t = tags[i];
    if (t == Tag::kO) {
      if (i > 0) close(i - 1);
      continue;
    }
    NEType type = *TagType(t);
    if (IsBegin(t) || !open || cur.type != type) {
      if (i > 0) close(i - 1);
      cur = ChunkSpan{type, sentence, i, i};
      open = true;
    }
  }
  if (!tags.empty()) close(tags.size() - 1);
  return chunks;
}

Metrics MetricsFromCounts(std::int64_t correct, std::int64_t predicted, std::int64_t gold) {
  Metrics m;
  m.correct = correct;
  m.predicted = predicted;
  m.gold = gold;
  m.precision = predicted > 0 ? 100.0 * static_cast<double>(correct) / predicted : 0.0;
  m.recall = gold > 0 ? 100.0 * static_cast<double>(correct) / gold : 0.0;
  m.f1 = m.precision + m.recall > 0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

namespace {

void CheckAligned(const AnnotatedCorpus &gold, const AnnotatedCorpus &pred) {
  if (gold.sentences.size() != pred.sentences.size()) {
    throw InputError("tokenization mismatch: gold has " + std::to_string(gold.sentences.size()) +
                     " sentences, prediction has " + std::to_string(pred.sentences.size()));
  }
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto &g = gold.sentences[s].tokens;
    const auto &p = pred.sentences[s].tokens;
    for (std::size_t i = 0; i < std::max(g.size(), p.size()); ++i) {
      if (i >= g.size() || i >= p.size() || g[i].text != p[i].text) {
        std::string gt = i < g.size() ? g[i].text : "<end>";
        std::string pt = i < p.size() ? p[i].text : "<end>";
        throw InputError("tokenization mismatch at sentence " + std::to_string(s) + " token " +
                         std::to_string(i) + ": gold '" + gt + "', prediction '" + pt + "'");
      }
    }
  }
}

}  // namespace

EvalReport Score(const AnnotatedCorpus &gold, const AnnotatedCorpus &pred) {
  CheckAligned(gold, pred);
  std::map<NEType, std::array<std::int64_t, 3>> tally;  // correct, predicted, gold
  for (NEType t : kAllNETypes) tally[t] = {0, 0, 0};
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    auto g = ExtractChunks(gold.sentences[s].tags, s);
    auto p = ExtractChunks(pred.sentences[s].tags, s);
    std::set<ChunkSpan> gold_set(g.begin(), g.end());
    for (const auto &c : g) ++tally[c.type][2];
    for (const auto &c : p) {
      ++tally[c.type][1];
      if (gold_set.count(c)) ++tally[c.type][0];
    }
  }
  EvalReport report;
  std::int64_t c = 0, p = 0, g = 0;
  for (const auto &[type, t] : tally) {
    report.per_type[type] = MetricsFromCounts(t[0], t[1], t[2]);
    c += t[0];
    p += t[1];
    g += t[2];
  }
  report.overall = MetricsFromCounts(c, p, g);
  return report;
}

namespace {

std::string Fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string PadLeft(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string PadRight(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string RenderReport(const EvalReport &report) {
  std::string out = PadRight("Type", 9) + PadLeft("Precision", 10) + PadLeft("Recall", 9) +
                    PadLeft("F1", 9) + PadLeft("Support", 9) + "\n";
  auto row = [&](const std::string &name, const Metrics &m) {
    out += PadRight(name, 9) + PadLeft(Fixed2(m.precision), 10) + PadLeft(Fixed2(m.recall), 9) +
           PadLeft(Fixed2(m.f1), 9) + PadLeft(std::to_string(m.gold), 9) + "\n";
  };
  for (NEType t : kAllNETypes) row(std::string(NETypeName(t)), report.per_type.at(t));
  row("overall", report.overall);
  return out;
}

std::string RenderReportTsv(const EvalReport &report) {
  std::string out;
  auto row = [&](const std::string &name, const Metrics &m) {
    out += name + "\t" + Fixed2(m.precision) + "\t" + Fixed2(m.recall) + "\t" + Fixed2(m.f1) +
           "\n";
  };
  for (NEType t : kAllNETypes) row(std::string(NETypeName(t)), report.per_type.at(t));
  row("overall", report.overall);
  return out;
}

std::int64_t ConfusionMatrix::Total() const {
  std::int64_t total = 0;
  for (const auto &row : counts) {
    for (auto v : row) total += v;
  }
  return total;
}

double ConfusionMatrix::Precision(Tag predicted) const {
  const int p = TagIndex(predicted);
  std::int64_t column = 0;
  for (int a = 0; a < kNumTags; ++a) column += counts[a][p];
  return column > 0 ? 100.0 * static_cast<double>(counts[p][p]) / column : 0.0;
}

ConfusionMatrix Confusion(const AnnotatedCorpus &gold, const AnnotatedCorpus &pred) {
  CheckAligned(gold, pred);
  ConfusionMatrix m;
  for (std::size_t s = 0; s < gold.sentences.size(); ++s) {
    const auto &g = gold.sentences[s].tags;
    const auto &p = pred.sentences[s].tags;
    for (std::size_t i = 0; i < g.size(); ++i) ++m.counts[TagIndex(g[i])][TagIndex(p[i])];
  }
  return m;
}

std::string RenderConfusion(const ConfusionMatrix &matrix) {
  static constexpr std::array<Tag, kNumTags> kOrder = {
      Tag::kO, Tag::kBPER, Tag::kBORG, Tag::kBLOC, Tag::kIORG, Tag::kIPER, Tag::kILOC};
  const std::size_t w = 9;
  std::string out = PadRight("Actual", 14);
  for (Tag p : kOrder) out += PadLeft(std::string(TagName(p)), w);
  out += "\n";
  for (Tag a : kOrder) {
    out += PadRight(std::string(TagName(a)), 14);
    for (Tag p : kOrder) {
      out += PadLeft(std::to_string(matrix.counts[TagIndex(a)][TagIndex(p)]), w);
    }
    out += "\n";
  }
  out += PadRight("Precision (%)", 14);
  for (Tag p : kOrder) out += PadLeft(Fixed2(matrix.Precision(p)), w);
  out += "\n";
  return out;
}

}  // namespace silverner
