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

#ifndef SILVERNER_ALIAS_DICTIONARY_H_
#define SILVERNER_ALIAS_DICTIONARY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "silverner/diagnostics.h"
#include "silverner/dump_ingest.h"
#include "silverner/entity_classifier.h"
#include "silverner/text_segmentation.h"
#include "silverner/types.h"
#include "silverner/wikitext.h"

namespace silverner {

enum class AliasSource : std::uint8_t {
  kTitle = 0,
  kDisambiguationTitle = 1,
  kAnchorText = 2,
  kRedirectTitle = 3,
};

std::string_view AliasSourceName(AliasSource source);
std::optional<AliasSource> ParseAliasSource(std::string_view name);

struct AliasEntry {
  std::string alias;
  std::string target;
  NEType netype = NEType::kPER;
  AliasSource source = AliasSource::kTitle;
  std::int64_t frequency = 1;

  bool operator==(const AliasEntry &) const = default;
};

// Maps a token to the form used for matching.
using MatchNormalizer = std::function<std::string(std::string_view)>;

// Repeatedly strips the longest listed suffix while at least `min_stem` code points
// remain. Meant for inflected mentions ("Հայաստանի" -> "Հայաստան").
MatchNormalizer SuffixStripper(std::vector<std::string> suffixes, std::size_t min_stem = 3);

// Common Armenian case and article endings.
const std::vector<std::string> &DefaultArmenianSuffixes();

struct AliasConfig {
  // In code points.
  std::size_t min_alias_length = 2;
  // Aliases must start with an uppercase letter.
  bool require_capital = true;
  bool include_redirects = true;
  // Also add disambiguation titles with their "(...)" qualifier removed.
  bool strip_disambiguation_qualifier = true;
  TokenizerRules tokenizer;
  // Identity when empty.
  MatchNormalizer normalizer;
};

struct AliasMatch {
  const AliasEntry *entry = nullptr;
  std::size_t length = 0;
};

// Alias -> entry, with a token trie for longest-match lookup. Immutable
// after construction.
class AliasDictionary {
 public:
  explicit AliasDictionary(AliasConfig config = {});
  AliasDictionary(AliasDictionary &&) noexcept;
  AliasDictionary &operator=(AliasDictionary &&) noexcept;
  ~AliasDictionary();

  // Replaces any entry with the same alias. Returns false if the alias
  // tokenizes to nothing.
  bool Insert(AliasEntry entry);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, AliasEntry> &entries() const { return entries_; }
  const AliasEntry *Find(std::string_view alias) const;
  const AliasConfig &config() const { return config_; }

  // Longest alias matching tokens[start...], using at most `limit` tokens.
  std::optional<AliasMatch> LookupLongest(const std::vector<Token> &tokens, std::size_t start,
                                          std::size_t limit = SIZE_MAX) const;

  // Entry whose alias is exactly tokens[begin, end).
  const AliasEntry *MatchExact(const std::vector<Token> &tokens, std::size_t begin,
                               std::size_t end) const;

  // `alias<TAB>target<TAB>netype<TAB>source<TAB>frequency`, sorted by alias.
  void Write(std::ostream &os) const;
  static AliasDictionary Read(std::istream &in, AliasConfig config = {});

 private:
  struct Node;
  std::string Normalize(std::string_view token) const;

  AliasConfig config_;
  std::map<std::string, AliasEntry> entries_;
  std::unique_ptr<Node> root_;
};

// (anchor text, link target) -> occurrences.
using AnchorCounts = std::map<std::pair<std::string, std::string>, std::int64_t>;

AnchorCounts CollectLinkAnchors(const std::vector<RawArticle> &articles,
                                const WikitextOptions &wikitext = {});

AliasDictionary BuildAliasDictionary(const AnchorCounts &anchors,
                                     const std::vector<RawArticle> &articles,
                                     const KnowledgeIndex &index, AliasConfig config = {},
                                     const WikitextOptions &wikitext = {},
                                     Counters *counters = nullptr);

}  // namespace silverner

#endif  // SILVERNER_ALIAS_DICTIONARY_H_
