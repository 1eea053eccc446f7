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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "silverner/alias_dictionary.h"
#include "test_support.h"

using namespace silverner;

namespace {

EntityRecord Item(std::string id, std::vector<std::string> p31, std::vector<std::string> p279 = {},
                  std::optional<std::string> title = std::nullopt, bool disambiguation = false) {
  return EntityRecord{std::move(id), std::move(p31), std::move(p279), std::move(title),
                      disambiguation};
}

TypeMapping Mapping() {
  std::istringstream in("Q515\tLOC\t# city\nQ215627\tPER\t# person\nQ43229\tORG\t# organization\n");
  return ReadTypeMapping(in);
}

struct World {
  std::vector<EntityRecord> entities;
  std::vector<RawArticle> articles;
  KnowledgeIndex index;
};

// Saint Petersburg fixture following the Leningrad / Petrograd / Peterburg example.
World SaintPetersburg() {
  World w;
  w.entities = {
      Item("Q1549591", {}, {"Q515"}),
      Item("Q5", {}, {"Q215627"}),
      Item("Q656", {"Q1549591"}, {}, "Սանկտ Պետերբուրգ"),
      Item("Q7200", {"Q5"}, {}, "Պետրոս Առաջին"),
      Item("Q9000", {"Q4167410"}, {}, "Պետրոգրադ (այլ կիրառումներ)", true),
  };
  w.articles = {
      {"Սանկտ Պետերբուրգ", 0, std::nullopt, "'''Սանկտ Պետերբուրգ''' քաղաք։"},
      {"Պետերբուրգ", 0, "Սանկտ Պետերբուրգ", ""},
      {"Պետրոգրադ (այլ կիրառումներ)", 0, std::nullopt,
       "'''Պետրոգրադ''' կարող է նշանակել՝\n* [[Սանկտ Պետերբուրգ]]\n* [[Պետրոգրադ (նավ)]]"},
      {"Պատմություն", 0, std::nullopt,
       "[[Սանկտ Պետերբուրգ|Լենինգրադ]]ի պաշարում։ [[Սանկտ Պետերբուրգ|Լենինգրադ]] և "
       "[[Սանկտ Պետերբուրգ|Լենինգրադ]]։ [[Պետրոս Առաջին|Պետրոսը]] և [[Պետրոս Առաջին|ցար]]։"},
  };
  w.index = BuildKnowledgeIndex(w.entities, w.articles, Mapping());
  return w;
}

std::vector<Token> Toks(const std::string &text) { return Tokenize(text); }

}  // namespace

TEST_CASE("collect link anchors") {
  std::vector<RawArticle> a = {{"X", 0, std::nullopt, "[[A|b]] և [[A]]"}};
  AnchorCounts counts = CollectLinkAnchors(a);
  CHECK(counts.size() == 2);
  CHECK(counts.at({"b", "A"}) == 1);
  CHECK(counts.at({"A", "A"}) == 1);
}

TEST_CASE("three Leningrad links are counted three times") {
  World w = SaintPetersburg();
  AnchorCounts counts = CollectLinkAnchors(w.articles);
  CHECK(counts.at({"Լենինգրադ", "Սանկտ Պետերբուրգ"}) == 2);
  CHECK(counts.at({"Լենինգրադի", "Սանկտ Պետերբուրգ"}) == 1);
  std::int64_t total = 0;
  for (const auto &[key, n] : counts) {
    if (key.first.rfind("Լենինգրադ", 0) == 0) total += n;
  }
  CHECK(total == 3);
}

TEST_CASE("Saint Petersburg aliases") {
  World w = SaintPetersburg();
  Counters c;
  AliasDictionary d =
      BuildAliasDictionary(CollectLinkAnchors(w.articles), w.articles, w.index, {}, {}, &c);
  for (const char *alias : {"Սանկտ Պետերբուրգ", "Լենինգրադ", "Պետրոգրադ", "Պետերբուրգ",
                            "Պետրոգրադ (այլ կիրառումներ)"}) {
    CAPTURE(alias);
    const AliasEntry *e = d.Find(alias);
    REQUIRE(e != nullptr);
    CHECK(e->target == "Սանկտ Պետերբուրգ");
    CHECK(e->netype == NEType::kLOC);
  }
  CHECK(d.Find("Լենինգրադ")->source == AliasSource::kAnchorText);
  CHECK(d.Find("Լենինգրադ")->frequency == 2);
  CHECK(d.Find("Պետերբուրգ")->source == AliasSource::kRedirectTitle);
  CHECK(d.Find("Պետրոգրադ")->source == AliasSource::kDisambiguationTitle);
  CHECK(d.Find("Սանկտ Պետերբուրգ")->source == AliasSource::kTitle);
  // Lowercase anchor "ցար" fails the capitalization requirement.
  CHECK(d.Find("ցար") == nullptr);
  CHECK(c.Get("aliases.not_capitalized") == 1);
  CHECK(d.Find("Պետրոսը")->target == "Պետրոս Առաջին");
}

TEST_CASE("every classified title is its own alias; entry types match the classification") {
  World w = SaintPetersburg();
  AliasDictionary d = BuildAliasDictionary(CollectLinkAnchors(w.articles), w.articles, w.index);
  for (const auto &[title, id] : w.index.site) {
    if (!w.index.classes.count(id)) continue;
    REQUIRE(d.Find(title) != nullptr);
    CHECK(d.Find(title)->target == title);
  }
  for (const auto &[alias, e] : d.entries()) {
    CHECK(e.netype == w.index.classes.at(w.index.site.at(e.target)));
  }
}

TEST_CASE("redirect aliases can be switched off; qualifier stripping can be switched off") {
  World w = SaintPetersburg();
  AliasConfig cfg;
  cfg.include_redirects = false;
  cfg.strip_disambiguation_qualifier = false;
  AliasDictionary d = BuildAliasDictionary(CollectLinkAnchors(w.articles), w.articles, w.index, cfg);
  CHECK(d.Find("Պետերբուրգ") == nullptr);
  CHECK(d.Find("Պետրոգրադ") == nullptr);
  CHECK(d.Find("Պետրոգրադ (այլ կիրառումներ)") != nullptr);
}

TEST_CASE("ambiguous alias: ties are dropped, a clear winner is kept") {
  std::vector<EntityRecord> entities = {Item("Q1549591", {}, {"Q515"}),
                                        Item("Q1", {"Q1549591"}, {}, "Ա"),
                                        Item("Q2", {"Q1549591"}, {}, "Բ")};
  KnowledgeIndex idx = BuildKnowledgeIndex(entities, {}, Mapping());
  AnchorCounts tie = {{{"XY", "Ա"}, 5}, {{"XY", "Բ"}, 5}};
  Counters c;
  AliasDictionary d = BuildAliasDictionary(tie, {}, idx, {}, {}, &c);
  CHECK(d.Find("XY") == nullptr);
  CHECK(c.Get("aliases.ambiguous_dropped") == 1);
  AnchorCounts lead = {{{"XY", "Ա"}, 5}, {{"XY", "Բ"}, 4}};
  AliasDictionary d2 = BuildAliasDictionary(lead, {}, idx);
  REQUIRE(d2.Find("XY") != nullptr);
  CHECK(d2.Find("XY")->target == "Ա");
  CHECK(d2.Find("XY")->frequency == 5);
}

TEST_CASE("minimum alias length") {
  std::vector<EntityRecord> entities = {Item("Q1549591", {}, {"Q515"}),
                                        Item("Q1", {"Q1549591"}, {}, "Ամերիկա")};
  KnowledgeIndex idx = BuildKnowledgeIndex(entities, {}, Mapping());
  AnchorCounts anchors = {{{"Ա", "Ամերիկա"}, 3}, {{"ԱՄ", "Ամերիկա"}, 1}};
  AliasDictionary d = BuildAliasDictionary(anchors, {}, idx);
  CHECK(d.Find("Ա") == nullptr);
  CHECK(d.Find("ԱՄ") != nullptr);
  AliasConfig one;
  one.min_alias_length = 1;
  CHECK(BuildAliasDictionary(anchors, {}, idx, one).Find("Ա") != nullptr);
}

TEST_CASE("lookup_longest") {
  AliasDictionary d;
  d.Insert({"Ազգերի լիգա", "Ազգերի լիգա", NEType::kORG, AliasSource::kTitle, 1});
  auto m = d.LookupLongest(Toks("Ազգերի լիգա հիմնադրվեց"), 0);
  REQUIRE(m.has_value());
  CHECK(m->length == 2);
  CHECK(m->entry->netype == NEType::kORG);
  CHECK_FALSE(d.LookupLongest(Toks("Ազգերի"), 0).has_value());
  CHECK_FALSE(d.LookupLongest(Toks("Ազգերի լիգա"), 0, 1).has_value());

  AliasDictionary empty;
  CHECK_FALSE(empty.LookupLongest(Toks("Ա Բ"), 0).has_value());

  AliasDictionary nested;
  nested.Insert({"A", "A", NEType::kLOC, AliasSource::kTitle, 1});
  nested.Insert({"A B", "A B", NEType::kORG, AliasSource::kTitle, 1});
  auto n = nested.LookupLongest(Toks("A B"), 0);
  REQUIRE(n.has_value());
  CHECK(n->length == 2);
  CHECK(n->entry->alias == "A B");
  CHECK(nested.LookupLongest(Toks("A C"), 0)->length == 1);
}

TEST_CASE("longest match agrees with brute force over random dictionaries") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"Ա", "Բ", "Գ", "Դ"};
  for (int round = 0; round < 300; ++round) {
    AliasDictionary d;
    std::vector<std::vector<std::string>> aliases;
    std::size_t n = rng() % 8;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::string> a;
      std::size_t len = 1 + rng() % 3;
      for (std::size_t j = 0; j < len; ++j) a.push_back(words[rng() % words.size()]);
      std::string text;
      for (const auto &w : a) text += (text.empty() ? "" : " ") + w;
      d.Insert({text, text, NEType::kLOC, AliasSource::kTitle, 1});
      aliases.push_back(a);
    }
    std::vector<std::string> sent;
    std::size_t len = 1 + rng() % 6;
    for (std::size_t j = 0; j < len; ++j) sent.push_back(words[rng() % words.size()]);
    auto tokens = TokensFromTexts(sent);
    for (std::size_t start = 0; start < len; ++start) {
      std::size_t best = 0;
      for (const auto &a : aliases) {
        if (start + a.size() > len) continue;
        if (std::equal(a.begin(), a.end(), sent.begin() + start)) best = std::max(best, a.size());
      }
      auto m = d.LookupLongest(tokens, start);
      CHECK((m ? m->length : 0) == best);
    }
  }
}

TEST_CASE("exact match over a token range") {
  AliasDictionary d;
  d.Insert({"Երևան", "Երևան", NEType::kLOC, AliasSource::kTitle, 1});
  auto t = Toks("Երևան , Հայաստան");
  CHECK(d.MatchExact(t, 0, 1) != nullptr);
  CHECK(d.MatchExact(t, 0, 2) == nullptr);
  CHECK(d.MatchExact(t, 2, 3) == nullptr);
  CHECK(d.MatchExact(t, 1, 1) == nullptr);
}

TEST_CASE("suffix stripping is off by default and optional") {
  AliasDictionary exact;
  exact.Insert({"Երևան", "Երևան", NEType::kLOC, AliasSource::kTitle, 1});
  CHECK_FALSE(exact.LookupLongest(Toks("Երևանում"), 0).has_value());
  AliasConfig cfg;
  cfg.normalizer = SuffixStripper(DefaultArmenianSuffixes());
  AliasDictionary stemmed(cfg);
  stemmed.Insert({"Երևան", "Երևան", NEType::kLOC, AliasSource::kTitle, 1});
  CHECK(stemmed.LookupLongest(Toks("Երևանում"), 0).has_value());
  CHECK(stemmed.LookupLongest(Toks("Երևանի"), 0).has_value());
  // Stems shorter than the minimum are left alone.
  CHECK(SuffixStripper({"ում"})("Հում") == "Հում");
}

TEST_CASE("aliases sharing a token path resolve independently of insertion order") {
  auto build = [](bool reversed) {
    AliasDictionary d;
    std::vector<AliasEntry> es = {{"Երևան, Հայաստան", "Ա", NEType::kLOC, AliasSource::kTitle, 1},
                                  {"Երևան ,Հայաստան", "Բ", NEType::kLOC, AliasSource::kTitle, 3}};
    if (reversed) std::reverse(es.begin(), es.end());
    for (auto &e : es) d.Insert(e);
    return d.LookupLongest(Toks("Երևան , Հայաստան"), 0)->entry->target;
  };
  CHECK(build(false) == "Բ");
  CHECK(build(true) == "Բ");
}

TEST_CASE("dictionary file round trip") {
  World w = SaintPetersburg();
  AliasDictionary d = BuildAliasDictionary(CollectLinkAnchors(w.articles), w.articles, w.index);
  std::ostringstream os;
  d.Write(os);
  std::istringstream in(os.str());
  AliasDictionary back = AliasDictionary::Read(in);
  CHECK(back.entries() == d.entries());
  std::ostringstream again;
  back.Write(again);
  CHECK(again.str() == os.str());
  // Sorted by alias.
  std::vector<std::string> lines;
  std::istringstream scan(os.str());
  for (std::string l; std::getline(scan, l);) lines.push_back(l.substr(0, l.find('\t')));
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  std::istringstream bad("Ա\tԲ\tMISC\ttitle\t1\n");
  CHECK_THROWS_AS(AliasDictionary::Read(bad), InputError);
  std::istringstream zero("Ա\tԲ\tLOC\ttitle\t0\n");
  CHECK_THROWS_AS(AliasDictionary::Read(zero), InputError);
}

TEST_CASE("build is independent of article order") {
  World w = SaintPetersburg();
  auto render = [&](std::vector<RawArticle> articles) {
    KnowledgeIndex idx = BuildKnowledgeIndex(w.entities, articles, Mapping());
    std::ostringstream os;
    BuildAliasDictionary(CollectLinkAnchors(articles), articles, idx).Write(os);
    return os.str();
  };
  std::string base = render(w.articles);
  auto shuffled = w.articles;
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(render(shuffled) == base);
}
