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

#ifndef SILVERNER_DUMP_INGEST_H_
#define SILVERNER_DUMP_INGEST_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "silverner/diagnostics.h"

namespace silverner {

// One page from a Wikipedia XML export.
struct RawArticle {
  std::string title;
  int ns = 0;
  std::optional<std::string> redirect_target;
  // Empty for redirects.
  std::string wikitext;

  bool operator==(const RawArticle &) const = default;
};

// One Wikidata item, reduced to what classification needs.
struct EntityRecord {
  std::string id;
  std::vector<std::string> instance_of;
  std::vector<std::string> subclass_of;
  std::optional<std::string> sitelink;
  bool is_disambiguation = false;

  bool operator==(const EntityRecord &) const = default;
};

// Underscores become spaces; surrounding whitespace is dropped. Case is kept.
std::string NormalizeTitle(std::string_view title);

// True for "Q" followed by one or more digits.
bool IsItemId(std::string_view id);

struct PageStreamOptions {
  // Namespaces to yield; empty means all.
  std::set<int> namespaces = {0};
  // A page larger than this many bytes of markup is an error. 0 = no cap.
  std::size_t max_record_bytes = 0;
};

// Pull reader over a decompressed export dump. Only the current page is held
// in memory.
class PageStream {
 public:
  PageStream(std::istream &in, PageStreamOptions options = {});
  ~PageStream();
  PageStream(const PageStream &) = delete;
  PageStream &operator=(const PageStream &) = delete;

  // Next page in a requested namespace, or nullopt at end of dump. Throws
  // InputError on malformed or truncated markup.
  std::optional<RawArticle> Next();

  const Counters &counters() const { return counters_; }

 private:
  class Lexer;
  std::optional<RawArticle> ReadPage(std::uint64_t page_offset);

  PageStreamOptions options_;
  std::unique_ptr<Lexer> lexer_;
  Counters counters_;
};

// Reads every requested page into memory. Convenience for small inputs.
std::vector<RawArticle> ReadAllArticles(std::istream &in,
                                        PageStreamOptions options = {},
                                        Counters *counters = nullptr);

// The well-known Wikimedia disambiguation page class.
inline const std::set<std::string> kDefaultDisambiguationClasses = {"Q4167410"};

struct EntityStreamOptions {
  // Site identifier whose sitelink is kept, e.g. "hywiki".
  std::string wiki_code = "hywiki";
  std::set<std::string> disambiguation_classes = kDefaultDisambiguationClasses;
  std::size_t max_record_bytes = 0;
};

// Pull reader over a line-delimited entity JSON dump (the `[`, `]` wrapper
// lines and trailing commas of the official dumps are accepted).
class EntityStream {
 public:
  EntityStream(std::istream &in, EntityStreamOptions options = {});

  // Next item, or nullopt at end. Unparseable lines are skipped and counted;
  // throws InputError at end of input if no line parsed at all.
  std::optional<EntityRecord> Next();

  const Counters &counters() const { return counters_; }

 private:
  std::istream &in_;
  EntityStreamOptions options_;
  Counters counters_;
  std::int64_t line_number_ = 0;
  std::int64_t parsed_ = 0;
};

// Parses one entity JSON object. Returns nullopt for entities that are not
// items (properties, lexemes). Throws InputError when the text is not JSON.
std::optional<EntityRecord> ParseEntityJson(std::string_view json,
                                            const EntityStreamOptions &options);

std::vector<EntityRecord> ReadAllEntities(std::istream &in,
                                          EntityStreamOptions options = {},
                                          Counters *counters = nullptr);

using SiteIndex = std::unordered_map<std::string, std::string>;

// Article title to entity id for every entity with a sitelink. A title
// claimed twice keeps the last entity and bumps
// `site_index.duplicate_titles`.
SiteIndex BuildSiteIndex(const std::vector<EntityRecord> &entities,
                         Counters *counters = nullptr);

}  // namespace silverner

#endif  // SILVERNER_DUMP_INGEST_H_
