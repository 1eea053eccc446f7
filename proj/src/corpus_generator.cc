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

#include "silverner/corpus_generator.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "silverner/unicode.h"

namespace silverner {
namespace {

std::string Surface(const SentenceDraft &s, std::size_t first, std::size_t last) {
  return s.text.substr(s.tokens[first].start, s.tokens[last].end - s.tokens[first].start);
}

}  // namespace

std::vector<LinkSpan> LabelLinks(const SentenceDraft &sentence, const KnowledgeIndex &index,
                                 Counters *counters) {
  std::vector<LinkSpan> spans;
  const auto &tokens = sentence.tokens;
  for (const auto &link : sentence.links) {
    std::size_t first = tokens.size(), last = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].start < link.end && tokens[i].end > link.begin) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == tokens.size()) continue;
    if (tokens[first].start != link.begin || tokens[last].end != link.end) {
      if (counters) counters->Add("links.snapped");
    }
    if (!spans.empty() && spans.back().end_token >= first) {
      if (counters) counters->Add("links.overlapping_dropped");
      continue;
    }
    LinkSpan span;
    span.start_token = first;
    span.end_token = last;
    span.target = link.target;
    span.anchor = Surface(sentence, first, last);
    span.origin = SpanOrigin::kExplicit;
    span.netype = index.Classify(link.target, counters);
    if (counters) counters->Add(span.netype ? "links.typed" : "links.untyped");
    spans.push_back(std::move(span));
  }
  return spans;
}

std::vector<bool> Coverage(std::size_t num_tokens, const std::vector<LinkSpan> &spans) {
  std::vector<bool> covered(num_tokens, false);
  for (const auto &s : spans) {
    for (std::size_t i = s.start_token; i <= s.end_token && i < num_tokens; ++i) {
      covered[i] = true;
    }
  }
  return covered;
}

std::vector<LinkSpan> InferAliasLinks(const SentenceDraft &sentence,
                                      const std::vector<LinkSpan> &existing,
                                      const AliasDictionary &dict) {
  std::vector<LinkSpan> added;
  const std::size_t n = sentence.tokens.size();
  std::vector<bool> covered = Coverage(n, existing);
  std::size_t i = 0;
  while (i < n) {
    if (covered[i]) {
      ++i;
      continue;
    }
    std::size_t limit = 0;
    while (i + limit < n && !covered[i + limit]) ++limit;
    auto match = dict.LookupLongest(sentence.tokens, i, limit);
    if (!match) {
      ++i;
      continue;
    }
    LinkSpan span;
    span.start_token = i;
    span.end_token = i + match->length - 1;
    span.target = match->entry->target;
    span.anchor = Surface(sentence, span.start_token, span.end_token);
    span.origin = SpanOrigin::kInferred;
    span.netype = match->entry->netype;
    added.push_back(std::move(span));
    i += match->length;
  }
  return added;
}

std::vector<LinkSpan> AdjustBoundaries(const LinkSpan &span, const SentenceDraft &sentence,
                                       const AliasDictionary &dict, bool split_commas,
                                       Counters *counters) {
  const auto &tokens = sentence.tokens;
  std::size_t begin = span.start_token;
  // Exclusive end.
  std::size_t end = span.end_token + 1;
  for (std::size_t k = begin; k < end; ++k) {
    if (tokens[k].text == "(") {
      end = k;
      if (counters) counters->Add("boundaries.parenthesis_removed");
      break;
    }
  }
  auto make = [&](std::size_t b, std::size_t e, const AliasEntry *entry) {
    LinkSpan out = span;
    out.start_token = b;
    out.end_token = e - 1;
    out.anchor = Surface(sentence, b, e - 1);
    if (entry) {
      out.netype = entry->netype;
      out.target = entry->target;
    }
    return out;
  };
  std::vector<std::size_t> commas;
  for (std::size_t k = begin; k < end; ++k) {
    if (tokens[k].text == ",") commas.push_back(k);
  }
  if (commas.empty()) {
    if (begin == end) {
      if (counters) counters->Add("boundaries.dropped_empty");
      return {};
    }
    return {make(begin, end, nullptr)};
  }
  if (split_commas) {
    std::vector<LinkSpan> parts;
    std::size_t seg = begin;
    bool all_known = true;
    for (std::size_t k = 0; k <= commas.size() && all_known; ++k) {
      std::size_t seg_end = k < commas.size() ? commas[k] : end;
      const AliasEntry *entry = dict.MatchExact(tokens, seg, seg_end);
      if (!entry) {
        all_known = false;
        break;
      }
      parts.push_back(make(seg, seg_end, entry));
      seg = seg_end + 1;
    }
    if (all_known) {
      if (counters) counters->Add("boundaries.comma_split");
      return parts;
    }
  }
  if (counters) counters->Add("boundaries.comma_truncated");
  end = commas.front();
  if (begin == end) {
    if (counters) counters->Add("boundaries.dropped_empty");
    return {};
  }
  return {make(begin, end, nullptr)};
}

bool SelectSentence(const std::vector<Token> &tokens, const std::vector<LinkSpan> &spans,
                    const SelectionConfig &config, const std::vector<bool> *linked) {
  bool has_entity = std::any_of(spans.begin(), spans.end(),
                                [](const LinkSpan &s) { return s.netype.has_value(); });
  if (!has_entity) return false;
  std::vector<bool> covered = Coverage(tokens.size(), spans);
  if (linked) {
    for (std::size_t i = 0; i < covered.size() && i < linked->size(); ++i) {
      if ((*linked)[i]) covered[i] = true;
    }
  }
  std::size_t first_word = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::size_t p = 0;
    bool word = false;
    while (!word && p < tokens[i].text.size()) word = IsLetter(utf8::Next(tokens[i].text, p));
    if (word) {
      first_word = i;
      break;
    }
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (covered[i] || !StartsUpper(tokens[i].text)) continue;
    if (config.exempt_sentence_initial && i == first_word) continue;
    if (config.stoplist.count(tokens[i].text)) continue;
    return false;
  }
  return true;
}

LabeledSentence EmitIob(const std::vector<Token> &tokens, const std::vector<LinkSpan> &spans,
                        std::string source_article) {
  LabeledSentence out;
  out.tokens = tokens;
  out.tags.assign(tokens.size(), Tag::kO);
  out.source_article = std::move(source_article);
  std::vector<bool> used(tokens.size(), false);
  for (const auto &span : spans) {
    if (!span.netype) continue;
    if (span.start_token > span.end_token || span.end_token >= tokens.size()) {
      throw InvariantError("span out of range");
    }
    for (std::size_t i = span.start_token; i <= span.end_token; ++i) {
      if (used[i]) throw InvariantError("overlapping spans at token " + std::to_string(i));
      used[i] = true;
      out.tags[i] = i == span.start_token ? BeginTag(*span.netype) : InsideTag(*span.netype);
    }
  }
  return out;
}

std::vector<SentenceDraft> SplitSentences(const CleanText &clean, const TokenizerRules &rules,
                                          Counters *counters) {
  std::vector<SentenceDraft> drafts;
  for (const auto &[b, e] : SegmentSentences(clean.text, rules)) {
    SentenceDraft d;
    d.text = clean.text.substr(b, e - b);
    d.tokens = Tokenize(d.text, rules);
    for (const auto &link : clean.links) {
      if (link.end <= b || link.begin >= e) continue;
      if (link.begin < b || link.end > e) {
        if (counters) counters->Add("links.clipped_at_sentence_boundary");
      }
      CharLink rel = link;
      rel.begin = std::max(link.begin, b) - b;
      rel.end = std::min(link.end, e) - b;
      d.links.push_back(std::move(rel));
    }
    drafts.push_back(std::move(d));
  }
  return drafts;
}

std::vector<LabeledSentence> ProcessArticle(const RawArticle &article,
                                            const KnowledgeIndex &index,
                                            const AliasDictionary &dict,
                                            const GeneratorConfig &config, Counters *counters) {
  std::vector<LabeledSentence> out;
  CleanText clean = ParseWikitext(article.wikitext, config.wikitext, counters);
  for (const auto &draft : SplitSentences(clean, config.tokenizer, counters)) {
    if (counters) counters->Add("sentences.candidates");
    std::vector<LinkSpan> spans = LabelLinks(draft, index, counters);
    if (config.infer_aliases) {
      auto inferred = InferAliasLinks(draft, spans, dict);
      if (counters && !inferred.empty()) counters->Add("links.inferred", inferred.size());
      spans.insert(spans.end(), inferred.begin(), inferred.end());
      std::sort(spans.begin(), spans.end(), [](const LinkSpan &a, const LinkSpan &b) {
        return a.start_token < b.start_token;
      });
    }
    const std::vector<bool> linked = Coverage(draft.tokens.size(), spans);
    std::vector<LinkSpan> adjusted;
    for (const auto &span : spans) {
      if (!span.netype) {
        adjusted.push_back(span);
        continue;
      }
      for (auto &part : AdjustBoundaries(span, draft, dict, config.split_comma_aliases, counters)) {
        adjusted.push_back(std::move(part));
      }
    }
    if (!SelectSentence(draft.tokens, adjusted, config.selection, &linked)) {
      if (counters) counters->Add("sentences.rejected");
      continue;
    }
    out.push_back(EmitIob(draft.tokens, adjusted, article.title));
    if (counters) counters->Add("sentences.selected");
  }
  return out;
}

namespace {

bool Eligible(const RawArticle &a, const KnowledgeIndex &index) {
  return a.ns == 0 && !a.redirect_target && !index.IsDisambiguation(a.title);
}

}  // namespace

AnnotatedCorpus GenerateCorpus(const std::vector<RawArticle> &articles,
                               const KnowledgeIndex &index, const AliasDictionary &dict,
                               const GeneratorConfig &config, Counters *counters) {
  const std::size_t n = articles.size();
  std::vector<std::vector<LabeledSentence>> results(n);
  std::vector<Counters> local(n);
  auto work = [&](std::size_t i) {
    if (!Eligible(articles[i], index)) return;
    local[i].Add("articles.processed");
    results[i] = ProcessArticle(articles[i], index, dict, config, &local[i]);
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t]() {
        try {
          for (std::size_t i = next++; i < n; i = next++) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = n;
        }
      });
    }
    for (auto &th : pool) th.join();
    for (auto &e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  AnnotatedCorpus corpus;
  for (std::size_t i = 0; i < n; ++i) {
    if (counters) counters->Merge(local[i]);
    for (auto &s : results[i]) corpus.sentences.push_back(std::move(s));
  }
  if (counters) {
    std::int64_t tokens = 0;
    for (const auto &s : corpus.sentences) {
      tokens += static_cast<std::int64_t>(s.tokens.size());
      for (Tag t : s.tags) {
        if (IsBegin(t)) counters->Add("corpus.entities_" + std::string(NETypeName(*TagType(t))));
      }
    }
    counters->Add("corpus.sentences", static_cast<std::int64_t>(corpus.sentences.size()));
    counters->Add("corpus.tokens", tokens);
  }
  return corpus;
}

}  // namespace silverner
