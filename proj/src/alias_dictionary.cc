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

#include "silverner/alias_dictionary.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "silverner/unicode.h"

namespace silverner {

std::string_view AliasSourceName(AliasSource source) {
  switch (source) {
    case AliasSource::kTitle: return "title";
    case AliasSource::kDisambiguationTitle: return "disambiguation_title";
    case AliasSource::kAnchorText: return "anchor_text";
    case AliasSource::kRedirectTitle: return "redirect_title";
  }
  return "?";
}

std::optional<AliasSource> ParseAliasSource(std::string_view name) {
  for (auto s : {AliasSource::kTitle, AliasSource::kDisambiguationTitle,
                 AliasSource::kAnchorText, AliasSource::kRedirectTitle}) {
    if (AliasSourceName(s) == name) return s;
  }
  return std::nullopt;
}

MatchNormalizer SuffixStripper(std::vector<std::string> suffixes, std::size_t min_stem) {
  std::sort(suffixes.begin(), suffixes.end(),
            [](const std::string &a, const std::string &b) { return a.size() > b.size(); });
  // Strips repeatedly so that "Երևանում" and "Երևան" land on the same stem.
  return [suffixes = std::move(suffixes), min_stem](std::string_view token) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto &suffix : suffixes) {
        if (token.size() <= suffix.size() ||
            token.substr(token.size() - suffix.size()) != suffix) {
          continue;
        }
        std::string_view stem = token.substr(0, token.size() - suffix.size());
        if (utf8::Length(stem) >= min_stem) {
          token = stem;
          changed = true;
          break;
        }
      }
    }
    return std::string(token);
  };
}

const std::vector<std::string> &DefaultArmenianSuffixes() {
  static const std::vector<std::string> kSuffixes = {
      "ը", "ն", "ի", "ից", "ում", "ով", "ին", "ու", "ները", "երը", "ների", "երի", "ներ", "եր",
      "ներում", "երում", "ներից", "երից", "ներով", "երով", "ուց",
  };
  return kSuffixes;
}

struct AliasDictionary::Node {
  std::map<std::string, std::unique_ptr<Node>> children;
  const AliasEntry *entry = nullptr;
};

AliasDictionary::AliasDictionary(AliasConfig config)
    : config_(std::move(config)), root_(std::make_unique<Node>()) {}
AliasDictionary::AliasDictionary(AliasDictionary &&) noexcept = default;
AliasDictionary &AliasDictionary::operator=(AliasDictionary &&) noexcept = default;
AliasDictionary::~AliasDictionary() = default;

std::string AliasDictionary::Normalize(std::string_view token) const {
  return config_.normalizer ? config_.normalizer(token) : std::string(token);
}

bool AliasDictionary::Insert(AliasEntry entry) {
  std::vector<Token> tokens = Tokenize(entry.alias, config_.tokenizer);
  if (tokens.empty()) return false;
  auto [it, inserted] = entries_.insert_or_assign(entry.alias, std::move(entry));
  Node *node = root_.get();
  for (const auto &t : tokens) {
    auto &child = node->children[Normalize(t.text)];
    if (!child) child = std::make_unique<Node>();
    node = child.get();
  }
  // Aliases sharing a token path: the more frequent one wins, then the smaller string.
  const AliasEntry *incumbent = node->entry;
  const AliasEntry *candidate = &it->second;
  if (!incumbent || incumbent == candidate || candidate->frequency > incumbent->frequency ||
      (candidate->frequency == incumbent->frequency && candidate->alias < incumbent->alias)) {
    node->entry = candidate;
  }
  return true;
}

const AliasEntry *AliasDictionary::Find(std::string_view alias) const {
  auto it = entries_.find(std::string(alias));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<AliasMatch> AliasDictionary::LookupLongest(const std::vector<Token> &tokens,
                                                         std::size_t start,
                                                         std::size_t limit) const {
  std::optional<AliasMatch> best;
  const Node *node = root_.get();
  for (std::size_t i = start; i < tokens.size() && i - start < limit; ++i) {
    auto it = node->children.find(Normalize(tokens[i].text));
    if (it == node->children.end()) break;
    node = it->second.get();
    if (node->entry) best = AliasMatch{node->entry, i - start + 1};
  }
  return best;
}

const AliasEntry *AliasDictionary::MatchExact(const std::vector<Token> &tokens,
                                              std::size_t begin, std::size_t end) const {
  const Node *node = root_.get();
  for (std::size_t i = begin; i < end; ++i) {
    auto it = node->children.find(Normalize(tokens[i].text));
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return begin < end ? node->entry : nullptr;
}

void AliasDictionary::Write(std::ostream &os) const {
  for (const auto &[alias, e] : entries_) {
    os << e.alias << '\t' << e.target << '\t' << NETypeName(e.netype) << '\t'
       << AliasSourceName(e.source) << '\t' << e.frequency << '\n';
  }
}

AliasDictionary AliasDictionary::Read(std::istream &in, AliasConfig config) {
  AliasDictionary dict(std::move(config));
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    auto fail = [&](const std::string &what) {
      throw InputError("alias dictionary line " + std::to_string(line_number) + ": " + what);
    };
    std::vector<std::string_view> f;
    std::string_view body = line;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = body.find('\t', start);
      f.push_back(body.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (f.size() != 5) fail("expected 5 tab-separated fields");
    AliasEntry e;
    e.alias = std::string(f[0]);
    e.target = std::string(f[1]);
    if (e.alias.empty() || e.target.empty()) fail("empty alias or target");
    auto type = ParseNEType(f[2]);
    if (!type) fail("bad entity type");
    e.netype = *type;
    auto source = ParseAliasSource(f[3]);
    if (!source) fail("bad alias source");
    e.source = *source;
    auto [p, ec] = std::from_chars(f[4].data(), f[4].data() + f[4].size(), e.frequency);
    if (ec != std::errc() || p != f[4].data() + f[4].size() || e.frequency < 1) {
      fail("bad frequency");
    }
    if (dict.Find(e.alias)) fail("duplicate alias '" + e.alias + "'");
    if (!dict.Insert(std::move(e))) fail("alias has no tokens");
  }
  return dict;
}

AnchorCounts CollectLinkAnchors(const std::vector<RawArticle> &articles,
                                const WikitextOptions &wikitext) {
  AnchorCounts counts;
  for (const auto &article : articles) {
    if (article.redirect_target) continue;
    CleanText clean = ParseWikitext(article.wikitext, wikitext);
    for (const auto &link : clean.links) {
      ++counts[{link.anchor, NormalizeTitle(link.target)}];
    }
  }
  return counts;
}

namespace {

std::string StripQualifier(std::string_view title) {
  std::size_t paren = title.rfind(" (");
  if (paren == std::string_view::npos || title.back() != ')') return std::string(title);
  return std::string(Trim(title.substr(0, paren)));
}

struct Candidate {
  std::int64_t frequency = 0;
  std::set<AliasSource> sources;
};

}  // namespace

AliasDictionary BuildAliasDictionary(const AnchorCounts &anchors,
                                     const std::vector<RawArticle> &articles,
                                     const KnowledgeIndex &index, AliasConfig config,
                                     const WikitextOptions &wikitext, Counters *counters) {
  // alias -> canonical target -> candidate
  std::map<std::string, std::map<std::string, Candidate>> candidates;
  auto add = [&](std::string_view alias, const std::string &target, AliasSource source,
                 std::int64_t n) {
    std::string a(Trim(alias));
    if (a.empty()) return;
    auto &c = candidates[a][target];
    c.frequency += n;
    c.sources.insert(source);
  };
  auto classified_target = [&](std::string_view title) -> std::optional<std::string> {
    auto resolved = index.Resolve(title, counters);
    if (!resolved) return std::nullopt;
    auto id = index.site.find(*resolved);
    if (id == index.site.end() || !index.classes.count(id->second)) return std::nullopt;
    return resolved;
  };

  for (const auto &[title, id] : index.site) {
    if (index.classes.count(id)) add(title, title, AliasSource::kTitle, 1);
  }
  for (const auto &article : articles) {
    if (article.redirect_target) {
      if (!config.include_redirects) continue;
      if (auto target = classified_target(article.title)) {
        add(article.title, *target, AliasSource::kRedirectTitle, 1);
      }
      continue;
    }
    if (!index.IsDisambiguation(article.title)) continue;
    CleanText clean = ParseWikitext(article.wikitext, wikitext);
    std::set<std::string> targets;
    for (const auto &link : clean.links) {
      if (auto target = classified_target(link.target)) targets.insert(*target);
    }
    for (const auto &target : targets) {
      add(article.title, target, AliasSource::kDisambiguationTitle, 1);
      if (config.strip_disambiguation_qualifier) {
        std::string bare = StripQualifier(article.title);
        if (bare != article.title) add(bare, target, AliasSource::kDisambiguationTitle, 1);
      }
    }
  }
  for (const auto &[key, n] : anchors) {
    if (auto target = classified_target(key.second)) {
      add(key.first, *target, AliasSource::kAnchorText, n);
    }
  }

  AliasDictionary dict(std::move(config));
  const AliasConfig &cfg = dict.config();
  for (const auto &[alias, targets] : candidates) {
    if (utf8::Length(alias) < cfg.min_alias_length) {
      if (counters) counters->Add("aliases.too_short");
      continue;
    }
    if (cfg.require_capital && !StartsUpper(alias)) {
      if (counters) counters->Add("aliases.not_capitalized");
      continue;
    }
    const std::string *best = nullptr;
    std::int64_t best_freq = 0;
    bool tie = false;
    for (const auto &[target, c] : targets) {
      if (c.frequency > best_freq) {
        best = &target;
        best_freq = c.frequency;
        tie = false;
      } else if (c.frequency == best_freq) {
        tie = true;
      }
    }
    if (tie) {
      if (counters) counters->Add("aliases.ambiguous_dropped");
      continue;
    }
    const Candidate &c = targets.at(*best);
    AliasEntry entry;
    entry.alias = alias;
    entry.target = *best;
    entry.netype = index.classes.at(index.site.at(*best));
    entry.source = *c.sources.begin();
    entry.frequency = c.frequency;
    if (!dict.Insert(std::move(entry))) {
      if (counters) counters->Add("aliases.no_tokens");
      continue;
    }
    if (counters) counters->Add("aliases.kept");
  }
  return dict;
}

}  // namespace silverner
