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

#include <fstream>
#include <random>
#include <sstream>

#include "silverner/conll_io.h"
#include "silverner/corpus_generator.h"
#include "test_support.h"

using namespace silverner;

namespace {

EntityRecord Item(std::string id, std::vector<std::string> p31, std::vector<std::string> p279 = {},
                  std::optional<std::string> title = std::nullopt) {
  return EntityRecord{std::move(id), std::move(p31), std::move(p279), std::move(title), false};
}

// Cities, people and clubs by title.
KnowledgeIndex SmallIndex(const std::vector<RawArticle> &articles = {}) {
  std::istringstream m("Q515\tLOC\t# city\nQ215627\tPER\t# person\nQ476028\tORG\t# club\n");
  std::vector<EntityRecord> entities = {
      Item("Q1549591", {}, {"Q515"}), Item("Q5", {}, {"Q215627"}),
      Item("Q847017", {}, {"Q476028"}),
      Item("Q1", {"Q1549591"}, {}, "Երևան"),
      Item("Q2", {"Q1549591"}, {}, "Աբովյան"),
      Item("Q3", {"Q1549591"}, {}, "Հայաստան"),
      Item("Q4", {"Q5"}, {}, "Արամ Խաչատրյան"),
      Item("Q6", {"Q847017"}, {}, "Արարատ"),
      Item("Q7", {}, {}, "Ֆուտբոլ"),
  };
  return BuildKnowledgeIndex(entities, articles, ReadTypeMapping(m));
}

SentenceDraft Draft(const std::string &text,
                    const std::vector<std::pair<std::string, std::string>> &links = {}) {
  SentenceDraft d;
  d.text = text;
  d.tokens = Tokenize(text);
  std::size_t from = 0;
  for (const auto &[anchor, target] : links) {
    std::size_t at = text.find(anchor, from);
    REQUIRE(at != std::string::npos);
    d.links.push_back(CharLink{at, at + anchor.size(), target, anchor});
    from = at + anchor.size();
  }
  return d;
}

AliasDictionary Dict(const std::vector<std::pair<std::string, NEType>> &aliases) {
  AliasDictionary d;
  for (const auto &[alias, type] : aliases) d.Insert({alias, alias, type, AliasSource::kTitle, 1});
  return d;
}

LinkSpan Span(std::size_t b, std::size_t e, std::optional<NEType> type = NEType::kLOC) {
  LinkSpan s;
  s.start_token = b;
  s.end_token = e;
  s.netype = type;
  s.target = "T";
  return s;
}

std::vector<Tag> TagsOf(const std::vector<Token> &tokens, const std::vector<LinkSpan> &spans) {
  return EmitIob(tokens, spans).tags;
}

}  // namespace

TEST_CASE("explicit links are typed by their target") {
  KnowledgeIndex idx = SmallIndex();
  SentenceDraft d = Draft("Արամ Խաչատրյանը ծնվել է Թիֆլիսում։",
                          {{"Արամ Խաչատրյանը", "Արամ Խաչատրյան"}, {"Թիֆլիսում", "Թիֆլիս"}});
  Counters c;
  auto spans = LabelLinks(d, idx, &c);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].start_token == 0);
  CHECK(spans[0].end_token == 1);
  CHECK(spans[0].netype == NEType::kPER);
  CHECK(spans[0].origin == SpanOrigin::kExplicit);
  CHECK(spans[1].start_token == 4);
  CHECK_FALSE(spans[1].netype.has_value());
  CHECK(c.Get("links.typed") == 1);
  CHECK(c.Get("links.untyped") == 1);
}

TEST_CASE("links through redirects and with a lowercase first letter are typed") {
  std::vector<RawArticle> articles = {{"Երեւան", 0, "Երևան", ""}};
  KnowledgeIndex idx = SmallIndex(articles);
  auto spans = LabelLinks(Draft("Երեւանը և երևանը։", {{"Երեւանը", "Երեւան"}, {"երևանը", "երևան"}}),
                          idx);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].netype == NEType::kLOC);
  CHECK(spans[1].netype == NEType::kLOC);
}

TEST_CASE("a link covering part of a token snaps to the whole token") {
  KnowledgeIndex idx = SmallIndex();
  SentenceDraft d = Draft("Երևանում ենք։");
  d.links.push_back(CharLink{0, std::string("Երևան").size(), "Երևան", "Երևան"});
  Counters c;
  auto spans = LabelLinks(d, idx, &c);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start_token == 0);
  CHECK(spans[0].end_token == 0);
  CHECK(spans[0].anchor == "Երևանում");
  CHECK(c.Get("links.snapped") == 1);
}

TEST_CASE("second mention is inferred from the alias dictionary") {
  KnowledgeIndex idx = SmallIndex();
  AliasDictionary dict = Dict({{"Երևան", NEType::kLOC}, {"Արամ Խաչատրյան", NEType::kPER}});
  SentenceDraft d = Draft("Երևան քաղաքը և Արամ Խաչատրյան ։", {{"Երևան", "Երևան"}});
  auto spans = LabelLinks(d, idx);
  auto inferred = InferAliasLinks(d, spans, dict);
  REQUIRE(inferred.size() == 1);
  CHECK(inferred[0].start_token == 3);
  CHECK(inferred[0].end_token == 4);
  CHECK(inferred[0].netype == NEType::kPER);
  CHECK(inferred[0].origin == SpanOrigin::kInferred);
}

TEST_CASE("a fully linked sentence gets nothing inferred") {
  KnowledgeIndex idx = SmallIndex();
  AliasDictionary dict = Dict({{"Երևան", NEType::kLOC}});
  SentenceDraft d = Draft("Երևան", {{"Երևան", "Երևան"}});
  CHECK(InferAliasLinks(d, LabelLinks(d, idx), dict).empty());
}

TEST_CASE("inference never reaches into linked tokens") {
  AliasDictionary dict = Dict({{"Ա Բ", NEType::kLOC}, {"Բ", NEType::kORG}});
  SentenceDraft d = Draft("Ա Բ Գ");
  std::vector<LinkSpan> existing = {Span(0, 0)};
  auto inferred = InferAliasLinks(d, existing, dict);
  REQUIRE(inferred.size() == 1);
  CHECK(inferred[0].start_token == 1);
  CHECK(inferred[0].netype == NEType::kORG);
}

TEST_CASE("inference matches a brute-force greedy longest match") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"Ա", "Բ", "Գ", "դ"};
  for (int round = 0; round < 400; ++round) {
    std::set<std::vector<std::string>> aliases;
    AliasDictionary dict;
    for (std::size_t k = 0, n = rng() % 7; k < n; ++k) {
      std::vector<std::string> a;
      for (std::size_t j = 0, len = 1 + rng() % 3; j < len; ++j) a.push_back(words[rng() % 4]);
      std::string text;
      for (const auto &w : a) text += (text.empty() ? "" : " ") + w;
      dict.Insert({text, text, NEType::kLOC, AliasSource::kTitle, 1});
      aliases.insert(a);
    }
    std::vector<std::string> sent;
    for (std::size_t j = 0, len = 1 + rng() % 8; j < len; ++j) sent.push_back(words[rng() % 4]);
    std::string text;
    for (const auto &w : sent) text += (text.empty() ? "" : " ") + w;
    SentenceDraft d = Draft(text);
    std::vector<LinkSpan> existing;
    std::vector<bool> covered(sent.size(), false);
    for (std::size_t i = 0; i < sent.size(); ++i) {
      if (rng() % 5 == 0) {
        existing.push_back(Span(i, i));
        covered[i] = true;
      }
    }
    // Oracle.
    std::vector<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t i = 0; i < sent.size();) {
      std::size_t best = 0;
      for (std::size_t len = 1; i + len <= sent.size(); ++len) {
        if (covered[i + len - 1]) break;
        if (aliases.count(std::vector<std::string>(sent.begin() + i, sent.begin() + i + len))) {
          best = len;
        }
      }
      if (best) {
        expected.emplace_back(i, i + best - 1);
        i += best;
      } else {
        ++i;
      }
    }
    auto got = InferAliasLinks(d, existing, dict);
    std::vector<std::pair<std::size_t, std::size_t>> actual;
    for (const auto &s : got) actual.emplace_back(s.start_token, s.end_token);
    CHECK(actual == expected);
  }
}

TEST_CASE("parenthesized qualifier is removed") {
  SentenceDraft d = Draft("Աբովյան (քաղաք) ։");
  auto out = AdjustBoundaries(Span(0, 3), d, AliasDictionary());
  REQUIRE(out.size() == 1);
  CHECK(out[0].start_token == 0);
  CHECK(out[0].end_token == 0);
  CHECK(out[0].anchor == "Աբովյան");
  CHECK(TagsOf(d.tokens, out) == std::vector<Tag>{Tag::kBLOC, Tag::kO, Tag::kO, Tag::kO, Tag::kO});
}

TEST_CASE("a clean span passes through unchanged") {
  SentenceDraft d = Draft("Արամ Խաչատրյան");
  LinkSpan s = Span(0, 1, NEType::kPER);
  auto out = AdjustBoundaries(s, d, AliasDictionary());
  REQUIRE(out.size() == 1);
  CHECK(out[0].start_token == 0);
  CHECK(out[0].end_token == 1);
  CHECK(out[0].netype == NEType::kPER);
}

TEST_CASE("comma anchors split when every part is an alias, otherwise truncate") {
  AliasDictionary dict = Dict({{"Երևան", NEType::kLOC}, {"Հայաստան", NEType::kLOC}});
  SentenceDraft d = Draft("Երևան , Հայաստան");
  Counters c;
  auto split = AdjustBoundaries(Span(0, 2), d, dict, true, &c);
  REQUIRE(split.size() == 2);
  CHECK(split[0].start_token == 0);
  CHECK(split[0].end_token == 0);
  CHECK(split[1].start_token == 2);
  CHECK(split[1].end_token == 2);
  CHECK(split[1].target == "Հայաստան");
  CHECK(c.Get("boundaries.comma_split") == 1);

  SentenceDraft unknown = Draft("Երևան , Ավան");
  auto cut = AdjustBoundaries(Span(0, 2), unknown, dict, true, &c);
  REQUIRE(cut.size() == 1);
  CHECK(cut[0].end_token == 0);
  CHECK(c.Get("boundaries.comma_truncated") == 1);

  auto off = AdjustBoundaries(Span(0, 2), d, dict, false);
  REQUIRE(off.size() == 1);
  CHECK(off[0].end_token == 0);

  // Nothing left before the comma.
  CHECK(AdjustBoundaries(Span(0, 1), Draft(", Ավան"), dict).empty());
}

TEST_CASE("boundary adjustment never widens a span") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> words = {"Ա", "Բ", ",", "(", ")", "Գ"};
  AliasDictionary dict = Dict({{"Ա", NEType::kLOC}, {"Բ", NEType::kORG}});
  for (int round = 0; round < 2000; ++round) {
    std::vector<std::string> sent;
    for (std::size_t j = 0, len = 1 + rng() % 8; j < len; ++j) sent.push_back(words[rng() % 6]);
    std::string text;
    for (const auto &w : sent) text += (text.empty() ? "" : " ") + w;
    SentenceDraft d = Draft(text);
    REQUIRE(d.tokens.size() == sent.size());
    std::size_t b = rng() % sent.size();
    std::size_t e = b + rng() % (sent.size() - b);
    auto out = AdjustBoundaries(Span(b, e), d, dict, rng() % 2 == 0);
    std::size_t prev_end = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      CHECK(out[k].start_token >= b);
      CHECK(out[k].end_token <= e);
      CHECK(out[k].start_token <= out[k].end_token);
      if (k) CHECK(out[k].start_token > prev_end);
      prev_end = out[k].end_token;
      for (std::size_t i = out[k].start_token; i <= out[k].end_token; ++i) {
        CHECK(sent[i] != ",");
        CHECK(sent[i] != "(");
      }
    }
  }
}

TEST_CASE("sentence selection") {
  auto tokens = Tokenize("Նա ապրում է Երևանում։");
  // Sentence-initial capital is exempt.
  CHECK(SelectSentence(tokens, {Span(3, 3)}));
  SelectionConfig strict;
  strict.exempt_sentence_initial = false;
  CHECK_FALSE(SelectSentence(tokens, {Span(3, 3)}, strict));
  SelectionConfig stop = strict;
  stop.stoplist = {"Նա"};
  CHECK(SelectSentence(tokens, {Span(3, 3)}, stop));

  // An unlinked capitalized word rejects the sentence.
  auto unlinked = Tokenize("Նա ապրում է Երևանում և Գյումրիում։");
  CHECK_FALSE(SelectSentence(unlinked, {Span(3, 3)}));
  // Untyped links still count as linked.
  CHECK(SelectSentence(unlinked, {Span(3, 3), Span(5, 5, std::nullopt)}));
  // No typed entity at all.
  CHECK_FALSE(SelectSentence(unlinked, {Span(3, 3, std::nullopt), Span(5, 5, std::nullopt)}));
  CHECK_FALSE(SelectSentence(Tokenize("նա ապրում է։"), {}));

  // Coverage from before boundary adjustment counts as linked.
  auto paren = Tokenize("Նա Աբովյան (Քաղաք) է։");
  CHECK_FALSE(SelectSentence(paren, {Span(1, 1)}));
  std::vector<bool> linked = Coverage(paren.size(), {Span(1, 4)});
  CHECK(SelectSentence(paren, {Span(1, 1)}, {}, &linked));

  // Leading punctuation: the first word is still exempt.
  CHECK(SelectSentence(Tokenize("« Նա Երևանում է"), {Span(2, 2)}));
}

TEST_CASE("IOB2 emission") {
  auto tokens = Tokenize("Ազգերի լիգա է");
  CHECK(TagsOf(tokens, {Span(0, 1, NEType::kORG)}) ==
        std::vector<Tag>{Tag::kBORG, Tag::kIORG, Tag::kO});
  CHECK(TagsOf(tokens, {}) == std::vector<Tag>{Tag::kO, Tag::kO, Tag::kO});
  CHECK(TagsOf(tokens, {Span(0, 1, std::nullopt)}) == std::vector<Tag>{Tag::kO, Tag::kO, Tag::kO});
  auto adjacent = Tokenize("Երևան Գյումրի");
  CHECK(TagsOf(adjacent, {Span(0, 0), Span(1, 1)}) == std::vector<Tag>{Tag::kBLOC, Tag::kBLOC});
  CHECK_THROWS_AS(EmitIob(tokens, {Span(0, 1), Span(1, 2)}), InvariantError);
  CHECK_THROWS_AS(EmitIob(tokens, {Span(2, 3)}), InvariantError);
}

TEST_CASE("emitted tags are always valid IOB2 and mark exactly the typed spans") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 1000; ++round) {
    std::size_t n = 1 + rng() % 12;
    std::vector<std::string> words(n, "բառ");
    auto tokens = TokensFromTexts(words);
    std::vector<LinkSpan> spans;
    for (std::size_t i = 0; i < n;) {
      std::size_t len = 1 + rng() % 3;
      if (i + len > n) len = n - i;
      if (rng() % 2) {
        int t = static_cast<int>(rng() % 4);
        spans.push_back(Span(i, i + len - 1,
                             t == 3 ? std::nullopt : std::optional<NEType>(kAllNETypes[t])));
      }
      i += len + rng() % 2;
    }
    auto tags = TagsOf(tokens, spans);
    CHECK(IsIobValid(tags));
    std::size_t begins = 0, typed = 0;
    for (Tag t : tags) begins += IsBegin(t);
    for (const auto &s : spans) typed += s.netype.has_value();
    CHECK(begins == typed);
  }
}

TEST_CASE("empty input gives an empty corpus") {
  KnowledgeIndex idx = SmallIndex();
  Counters c;
  AnnotatedCorpus corpus = GenerateCorpus({}, idx, AliasDictionary(), {}, &c);
  CHECK(corpus.sentences.empty());
  CHECK(c.Get("corpus.sentences") == 0);
}

namespace {

AnnotatedCorpus GenerateMiniWiki(std::size_t jobs, Counters *c) {
  std::ifstream pages(testing::DataPath("miniwiki/pages.xml"));
  std::ifstream ents(testing::DataPath("miniwiki/entities.jsonl"));
  std::ifstream map(testing::DataPath("miniwiki/mapping.tsv"));
  auto articles = ReadAllArticles(pages);
  auto entities = ReadAllEntities(ents);
  KnowledgeIndex idx = BuildKnowledgeIndex(entities, articles, ReadTypeMapping(map));
  AliasDictionary dict = BuildAliasDictionary(CollectLinkAnchors(articles), articles, idx);
  GeneratorConfig gc;
  gc.jobs = jobs;
  return GenerateCorpus(articles, idx, dict, gc, c);
}

}  // namespace

TEST_CASE("mini-wiki generation matches the hand-checked corpus") {
  Counters c;
  AnnotatedCorpus corpus = GenerateMiniWiki(1, &c);
  std::ostringstream os;
  WriteConll(os, corpus);
  CHECK(os.str() == testing::ReadFile(testing::DataPath("miniwiki/expected.conll")));
  CHECK(c.Get("sentences.candidates") == 21);
  CHECK(c.Get("sentences.rejected") == 6);
  CHECK(c.Get("boundaries.comma_split") == 1);
  CHECK(c.Get("boundaries.comma_truncated") == 1);
  CHECK(c.Get("boundaries.parenthesis_removed") == 1);
  CHECK(ValidateIob(corpus).empty());
}

TEST_CASE("parallel generation is identical to serial") {
  Counters serial, parallel;
  std::ostringstream a, b;
  WriteConll(a, GenerateMiniWiki(1, &serial));
  WriteConll(b, GenerateMiniWiki(4, &parallel));
  CHECK(a.str() == b.str());
  CHECK(serial.values() == parallel.values());
}
