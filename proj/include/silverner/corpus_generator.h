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

#ifndef SILVERNER_CORPUS_GENERATOR_H_
#define SILVERNER_CORPUS_GENERATOR_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "silverner/alias_dictionary.h"
#include "silverner/corpus.h"
#include "silverner/diagnostics.h"
#include "silverner/dump_ingest.h"
#include "silverner/entity_classifier.h"
#include "silverner/text_segmentation.h"
#include "silverner/wikitext.h"

namespace silverner {

enum class SpanOrigin : std::uint8_t { kExplicit, kInferred };

// A labeled token range [start_token, end_token], both inclusive.
struct LinkSpan {
  std::size_t start_token = 0;
  std::size_t end_token = 0;
  std::string target;
  std::string anchor;
  SpanOrigin origin = SpanOrigin::kExplicit;
  std::optional<NEType> netype;

  bool operator==(const LinkSpan &) const = default;
};

// A sentence being labeled: clean text, its tokens and the links that fall
// inside it (byte offsets relative to `text`).
struct SentenceDraft {
  std::string text;
  std::vector<Token> tokens;
  std::vector<CharLink> links;
};

struct SelectionConfig {
  // The first word of a sentence may be capitalized without a link.
  bool exempt_sentence_initial = true;
  // Capitalized words that never need a link.
  std::set<std::string> stoplist;
};

struct GeneratorConfig {
  SelectionConfig selection;
  TokenizerRules tokenizer;
  WikitextOptions wikitext;
  bool infer_aliases = true;
  // Split comma-separated anchors whose parts are all known aliases.
  bool split_comma_aliases = true;
  std::size_t jobs = 1;
};

// Maps character links to token spans (snapping outward) and types them by
// their target article. Spans with an unclassified target keep netype unset.
std::vector<LinkSpan> LabelLinks(const SentenceDraft &sentence, const KnowledgeIndex &index,
                                 Counters *counters = nullptr);

// Left-to-right longest-match alias tagging over tokens no span covers.
std::vector<LinkSpan> InferAliasLinks(const SentenceDraft &sentence,
                                      const std::vector<LinkSpan> &existing,
                                      const AliasDictionary &dict);

// Drops a parenthesized suffix, then splits or truncates at commas. Never
// widens the span; an emptied span yields nothing.
std::vector<LinkSpan> AdjustBoundaries(const LinkSpan &span, const SentenceDraft &sentence,
                                       const AliasDictionary &dict, bool split_commas = true,
                                       Counters *counters = nullptr);

// Token i is linked when some span (typed or not) covers it.
std::vector<bool> Coverage(std::size_t num_tokens, const std::vector<LinkSpan> &spans);

// Keeps a sentence with at least one typed span whose capitalized words are
// all linked. `linked` defaults to the coverage of `spans`.
bool SelectSentence(const std::vector<Token> &tokens, const std::vector<LinkSpan> &spans,
                    const SelectionConfig &config = {},
                    const std::vector<bool> *linked = nullptr);

// IOB2 tags for the typed spans. Throws InvariantError on overlap.
LabeledSentence EmitIob(const std::vector<Token> &tokens, const std::vector<LinkSpan> &spans,
                        std::string source_article = {});

// Clean text -> sentence drafts with their links.
std::vector<SentenceDraft> SplitSentences(const CleanText &clean, const TokenizerRules &rules,
                                          Counters *counters = nullptr);

// All selected sentences of one article.
std::vector<LabeledSentence> ProcessArticle(const RawArticle &article,
                                            const KnowledgeIndex &index,
                                            const AliasDictionary &dict,
                                            const GeneratorConfig &config,
                                            Counters *counters = nullptr);

// Runs every namespace-0, non-redirect, non-disambiguation article and
// concatenates the results in dump order. With jobs > 1 articles are
// processed in parallel; output is identical.
AnnotatedCorpus GenerateCorpus(const std::vector<RawArticle> &articles,
                               const KnowledgeIndex &index, const AliasDictionary &dict,
                               const GeneratorConfig &config, Counters *counters = nullptr);

}  // namespace silverner

#endif  // SILVERNER_CORPUS_GENERATOR_H_
