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

#ifndef SILVERNER_ENTITY_CLASSIFIER_H_
#define SILVERNER_ENTITY_CLASSIFIER_H_

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "silverner/diagnostics.h"
#include "silverner/dump_ingest.h"
#include "silverner/types.h"

namespace silverner {

struct MappingEntry {
  NEType type;
  std::string label;
};

// Taxonomy class id -> entity type, plus the order used when several types
// match the same entity.
struct TypeMapping {
  std::map<std::string, MappingEntry> entries;
  std::array<NEType, 3> priority = {NEType::kPER, NEType::kORG, NEType::kLOC};

  std::optional<NEType> Lookup(std::string_view id) const {
    auto it = entries.find(std::string(id));
    if (it == entries.end()) return std::nullopt;
    return it->second.type;
  }
};

// Reads `id<TAB>TYPE<TAB># label` lines; blank and `#` lines are skipped.
// Throws InputError with the line number on a bad id, type or duplicate id.
TypeMapping ReadTypeMapping(std::istream &in);

// Parses "PER,ORG,LOC"-style priority lists; throws unless a permutation.
std::array<NEType, 3> ParsePriority(std::string_view text);

// The reference "subclass of" label rows, one list per entity type.
const std::map<NEType, std::vector<std::string>> &ReferenceTaxonomyRows();

// Problems with a mapping file: labels that belong to no row or to the row
// of a different type. Empty means clean.
std::vector<std::string> LintTypeMapping(const TypeMapping &mapping);

using Taxonomy = std::unordered_map<std::string, const EntityRecord *>;

// Id -> record index over `entities`; pointers stay valid while they live.
Taxonomy BuildTaxonomy(const std::vector<EntityRecord> &entities);

// Looks only at the first `instance of` value: its `subclass of` list is
// matched against the mapping and the best-priority hit wins.
std::optional<NEType> ClassifyEntity(const EntityRecord &entity, const Taxonomy &taxonomy,
                                     const TypeMapping &mapping);

using ClassMap = std::unordered_map<std::string, NEType>;

ClassMap ClassifyAll(const std::vector<EntityRecord> &entities, const TypeMapping &mapping);

using RedirectMap = std::unordered_map<std::string, std::string>;

RedirectMap BuildRedirectMap(const std::vector<RawArticle> &articles);

// Everything needed to go from an article title to its entity type.
struct KnowledgeIndex {
  SiteIndex site;
  RedirectMap redirects;
  ClassMap classes;
  // Article titles of disambiguation pages.
  std::unordered_map<std::string, bool> disambiguation_titles;

  // Resolves one redirect hop and the first-letter case folding that wiki
  // links allow. Returns the canonical article title, or nullopt on a
  // redirect cycle.
  std::optional<std::string> Resolve(std::string_view title, Counters *counters = nullptr) const;

  // Entity type of the article a title leads to, or nullopt.
  std::optional<NEType> Classify(std::string_view title, Counters *counters = nullptr) const;

  bool IsDisambiguation(std::string_view title) const;
};

KnowledgeIndex BuildKnowledgeIndex(const std::vector<EntityRecord> &entities,
                                   const std::vector<RawArticle> &articles,
                                   const TypeMapping &mapping, Counters *counters = nullptr);

// Writes `id<TAB>TYPE<TAB>title` lines sorted by id.
void WriteClassMap(std::ostream &os, const ClassMap &classes, const SiteIndex &site);

}  // namespace silverner

#endif  // SILVERNER_ENTITY_CLASSIFIER_H_
