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

#include "silverner/entity_classifier.h"

#include <algorithm>
#include <set>

#include "silverner/unicode.h"

namespace silverner {

TypeMapping ReadTypeMapping(std::istream &in) {
  TypeMapping mapping;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view body = Trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = body.find('\t', start);
      fields.push_back(body.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    auto fail = [&](const std::string &what) {
      throw InputError("mapping line " + std::to_string(line_number) + ": " + what);
    };
    if (fields.size() < 2) fail("expected id<TAB>type");
    std::string id(Trim(fields[0]));
    if (!IsItemId(id)) fail("bad entity id '" + id + "'");
    auto type = ParseNEType(Trim(fields[1]));
    if (!type) fail("bad entity type '" + std::string(fields[1]) + "'");
    std::string label;
    if (fields.size() > 2) {
      std::string_view l = Trim(fields[2]);
      if (!l.empty() && l[0] == '#') l.remove_prefix(1);
      label = std::string(Trim(l));
    }
    if (mapping.entries.count(id)) fail("duplicate entity id '" + id + "'");
    mapping.entries.emplace(id, MappingEntry{*type, std::move(label)});
  }
  return mapping;
}

std::array<NEType, 3> ParsePriority(std::string_view text) {
  std::array<NEType, 3> out{};
  std::size_t n = 0;
  std::set<NEType> seen;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string_view part =
        Trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    auto type = ParseNEType(part);
    if (!type || n >= 3 || !seen.insert(*type).second) {
      throw InputError("priority must be a permutation of PER,ORG,LOC: '" +
                       std::string(text) + "'");
    }
    out[n++] = *type;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != 3) {
    throw InputError("priority must be a permutation of PER,ORG,LOC: '" +
                     std::string(text) + "'");
  }
  return out;
}

const std::map<NEType, std::vector<std::string>> &ReferenceTaxonomyRows() {
  static const std::map<NEType, std::vector<std::string>> kRows = {
      {NEType::kORG,
       {"company", "business enterprise", "juridical person", "air carrier",
        "political organization", "government organization", "secret service",
        "political party", "international organization", "alliance",
        "armed organization", "higher education institution", "educational institution",
        "university", "educational organization", "school", "fictional magic school",
        "broadcaster", "newspaper", "periodical literature", "religious organization",
        "football club", "sports team", "musical ensemble", "music organisation",
        "vocal-musical ensemble", "sports organization", "criminal organization",
        "museum of culture", "scientific organisation", "non-governmental organization",
        "nonprofit organization", "national sports team", "legal person",
        "scholarly publication", "academic journal", "association", "band", "sports club",
        "institution", "medical facility"}},
      {NEType::kLOC,
       {"state", "disputed territory", "country", "occupied territory",
        "political territorial entity", "city", "town", "village", "rural area",
        "rural settlement", "urban-type settlement", "geographical object",
        "geographic location", "geographic region", "community",
        "administrative territorial entity", "former administrative territorial entity",
        "human settlement", "county", "province", "federated state", "district",
        "county-equivalent", "municipal formation", "raion", "nahiyah", "mintaqah",
        "muhafazah", "realm", "principality", "historical country", "watercourse", "lake",
        "sea", "still waters", "body of water", "landmass", "minor planet", "landform",
        "natural geographic object", "mountain range", "mountain", "protected area",
        "national park", "arena", "bridge", "airport", "stadium",
        "performing arts center", "public building", "venue", "sports venue", "church",
        "temple", "place of worship", "retail building"}},
      {NEType::kPER,
       {"person", "fictional character", "fictional humanoid", "human who may be fictional",
        "given name", "fictional human", "magician in fantasy"}},
  };
  return kRows;
}

std::vector<std::string> LintTypeMapping(const TypeMapping &mapping) {
  std::vector<std::string> problems;
  const auto &rows = ReferenceTaxonomyRows();
  for (const auto &[id, entry] : mapping.entries) {
    std::vector<NEType> owners;
    for (const auto &[type, labels] : rows) {
      if (std::find(labels.begin(), labels.end(), entry.label) != labels.end()) {
        owners.push_back(type);
      }
    }
    if (owners.empty()) {
      problems.push_back(id + ": label '" + entry.label + "' matches no reference row");
    } else if (owners.size() > 1) {
      problems.push_back(id + ": label '" + entry.label + "' matches several rows");
    } else if (owners[0] != entry.type) {
      problems.push_back(id + ": label '" + entry.label + "' belongs to the " +
                         std::string(NETypeName(owners[0])) + " row, mapped as " +
                         std::string(NETypeName(entry.type)));
    }
  }
  return problems;
}

Taxonomy BuildTaxonomy(const std::vector<EntityRecord> &entities) {
  Taxonomy taxonomy;
  taxonomy.reserve(entities.size());
  for (const auto &e : entities) taxonomy[e.id] = &e;
  return taxonomy;
}

std::optional<NEType> ClassifyEntity(const EntityRecord &entity, const Taxonomy &taxonomy,
                                     const TypeMapping &mapping) {
  if (entity.instance_of.empty()) return std::nullopt;
  auto it = taxonomy.find(entity.instance_of.front());
  if (it == taxonomy.end()) return std::nullopt;
  std::array<bool, 3> hit{};
  for (const auto &parent : it->second->subclass_of) {
    if (auto type = mapping.Lookup(parent)) hit[static_cast<int>(*type)] = true;
  }
  for (NEType type : mapping.priority) {
    if (hit[static_cast<int>(type)]) return type;
  }
  return std::nullopt;
}

ClassMap ClassifyAll(const std::vector<EntityRecord> &entities, const TypeMapping &mapping) {
  Taxonomy taxonomy = BuildTaxonomy(entities);
  ClassMap classes;
  for (const auto &e : entities) {
    if (auto type = ClassifyEntity(e, taxonomy, mapping)) classes[e.id] = *type;
  }
  return classes;
}

RedirectMap BuildRedirectMap(const std::vector<RawArticle> &articles) {
  RedirectMap redirects;
  for (const auto &a : articles) {
    if (a.redirect_target) redirects[a.title] = *a.redirect_target;
  }
  return redirects;
}

namespace {

// Drops a "#section" anchor from a link target.
std::string StripSection(std::string_view title) {
  std::size_t hash = title.find('#');
  return NormalizeTitle(hash == std::string_view::npos ? title : title.substr(0, hash));
}

}  // namespace

std::optional<std::string> KnowledgeIndex::Resolve(std::string_view raw_title,
                                                   Counters *counters) const {
  auto known = [&](const std::string &t) {
    return site.count(t) > 0 || redirects.count(t) > 0 || disambiguation_titles.count(t) > 0;
  };
  auto canonical = [&](std::string t) {
    if (known(t)) return t;
    std::string upper = UpperFirst(t);
    return known(upper) ? upper : t;
  };
  std::string title = canonical(StripSection(raw_title));
  auto r = redirects.find(title);
  if (r == redirects.end()) return title;
  std::string target = canonical(StripSection(r->second));
  auto back = redirects.find(target);
  if (target == title || (back != redirects.end() && back->second == title)) {
    if (counters) counters->Add("classify.redirect_cycles");
    return std::nullopt;
  }
  return target;
}

std::optional<NEType> KnowledgeIndex::Classify(std::string_view title,
                                               Counters *counters) const {
  auto resolved = Resolve(title, counters);
  if (!resolved) return std::nullopt;
  auto id = site.find(*resolved);
  if (id == site.end()) return std::nullopt;
  auto cls = classes.find(id->second);
  if (cls == classes.end()) return std::nullopt;
  return cls->second;
}

bool KnowledgeIndex::IsDisambiguation(std::string_view title) const {
  return disambiguation_titles.count(std::string(title)) > 0;
}

KnowledgeIndex BuildKnowledgeIndex(const std::vector<EntityRecord> &entities,
                                   const std::vector<RawArticle> &articles,
                                   const TypeMapping &mapping, Counters *counters) {
  KnowledgeIndex index;
  index.site = BuildSiteIndex(entities, counters);
  index.redirects = BuildRedirectMap(articles);
  index.classes = ClassifyAll(entities, mapping);
  for (const auto &e : entities) {
    if (e.is_disambiguation && e.sitelink) index.disambiguation_titles[*e.sitelink] = true;
  }
  if (counters) {
    for (const auto &[id, type] : index.classes) {
      counters->Add("classify.entities_" + std::string(NETypeName(type)));
    }
  }
  return index;
}

void WriteClassMap(std::ostream &os, const ClassMap &classes, const SiteIndex &site) {
  std::unordered_map<std::string, std::string> titles;
  for (const auto &[title, id] : site) titles[id] = title;
  std::vector<std::pair<std::string, NEType>> rows(classes.begin(), classes.end());
  // Numeric id order.
  std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  for (const auto &[id, type] : rows) {
    os << id << '\t' << NETypeName(type) << '\t';
    if (auto t = titles.find(id); t != titles.end()) os << t->second;
    os << '\n';
  }
}

}  // namespace silverner
