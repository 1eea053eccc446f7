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

#include "silverner/dump_ingest.h"

#include <charconv>
#include <map>
#include <utility>

#include "json.hpp"
#include "silverner/types.h"
#include "silverner/unicode.h"

namespace silverner {

std::string NormalizeTitle(std::string_view title) {
  std::string out;
  out.reserve(title.size());
  for (char c : Trim(title)) {
    if (c == '_') c = ' ';
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  return std::string(Trim(out));
}

bool IsItemId(std::string_view id) {
  if (id.size() < 2 || id[0] != 'Q') return false;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return false;
  }
  return true;
}

// Minimal pull lexer for the export markup: elements, attributes, character
// data, the five predefined entities and numeric references, CDATA, comments
// and processing instructions. Byte offsets are absolute stream positions.
class PageStream::Lexer {
 public:
  enum class Kind { kStart, kEnd, kText, kEof };

  struct Event {
    Kind kind = Kind::kEof;
    std::string name;
    std::map<std::string, std::string> attrs;
    bool self_closing = false;
    std::string text;
    std::uint64_t offset = 0;
  };

  explicit Lexer(std::istream &in) : in_(in) {}

  std::uint64_t offset() const { return base_ + pos_; }

  Event Next() {
    Event ev;
    ev.offset = offset();
    if (!Ensure(1)) {
      ev.kind = Kind::kEof;
      return ev;
    }
    if (buf_[pos_] != '<') {
      ev.kind = Kind::kText;
      ev.text = ReadText();
      return ev;
    }
    if (StartsWith("<!--")) {
      Skip(4);
      SkipPast("-->", ev.offset);
      return Next();
    }
    if (StartsWith("<![CDATA[")) {
      Skip(9);
      ev.kind = Kind::kText;
      ev.text = ReadUntil("]]>", ev.offset);
      return ev;
    }
    if (StartsWith("<?")) {
      Skip(2);
      SkipPast("?>", ev.offset);
      return Next();
    }
    if (StartsWith("<!")) {
      Skip(2);
      SkipPast(">", ev.offset);
      return Next();
    }
    Skip(1);
    if (Peek() == '/') {
      Skip(1);
      ev.kind = Kind::kEnd;
      ev.name = ReadName(ev.offset);
      SkipSpace();
      Expect('>', ev.offset);
      return ev;
    }
    ev.kind = Kind::kStart;
    ev.name = ReadName(ev.offset);
    for (;;) {
      SkipSpace();
      int c = Peek();
      if (c == '/') {
        Skip(1);
        Expect('>', ev.offset);
        ev.self_closing = true;
        return ev;
      }
      if (c == '>') {
        Skip(1);
        return ev;
      }
      std::string key = ReadName(ev.offset);
      SkipSpace();
      Expect('=', ev.offset);
      SkipSpace();
      int quote = Peek();
      if (quote != '"' && quote != '\'') Malformed("expected quoted attribute value");
      Skip(1);
      std::string raw = ReadUntil(std::string(1, static_cast<char>(quote)), ev.offset);
      ev.attrs[key] = DecodeEntities(raw, ev.offset);
    }
  }

  [[noreturn]] void Malformed(const std::string &what) const {
    throw InputError("malformed markup at byte " + std::to_string(offset()) + ": " + what);
  }

 private:
  bool Ensure(std::size_t n) {
    while (buf_.size() - pos_ < n) {
      if (pos_ > 0 && pos_ * 2 > buf_.size()) {
        base_ += pos_;
        buf_.erase(0, pos_);
        pos_ = 0;
      }
      char chunk[1 << 16];
      in_.read(chunk, sizeof(chunk));
      std::streamsize got = in_.gcount();
      if (got <= 0) return false;
      buf_.append(chunk, static_cast<std::size_t>(got));
    }
    return true;
  }

  int Peek() {
    if (!Ensure(1)) Truncated();
    return static_cast<unsigned char>(buf_[pos_]);
  }

  void Skip(std::size_t n) { pos_ += n; }

  bool StartsWith(std::string_view s) {
    if (!Ensure(s.size())) return false;
    return std::string_view(buf_).substr(pos_, s.size()) == s;
  }

  [[noreturn]] void Truncated() const {
    throw InputError("truncated stream at byte " + std::to_string(offset()));
  }

  void Expect(char c, std::uint64_t) {
    if (Peek() != static_cast<unsigned char>(c)) {
      Malformed(std::string("expected '") + c + "'");
    }
    Skip(1);
  }

  void SkipSpace() {
    for (;;) {
      int c = Peek();
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') return;
      Skip(1);
    }
  }

  std::string ReadName(std::uint64_t) {
    std::string name;
    for (;;) {
      int c = Peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '>' || c == '/' ||
          c == '=') {
        break;
      }
      if (c == '<' || c == '"' || c == '\'') Malformed("bad character in name");
      name.push_back(static_cast<char>(c));
      Skip(1);
    }
    if (name.empty()) Malformed("empty name");
    return name;
  }

  // Raw bytes up to (not including) `terminator`, which is consumed.
  std::string ReadUntil(const std::string &terminator, std::uint64_t) {
    std::string out;
    for (;;) {
      if (!Ensure(terminator.size())) Truncated();
      std::size_t hit = buf_.find(terminator, pos_);
      if (hit != std::string::npos) {
        out.append(buf_, pos_, hit - pos_);
        pos_ = hit + terminator.size();
        return out;
      }
      // Keep a possible partial terminator in the buffer.
      std::size_t keep = terminator.size() - 1;
      std::size_t take = buf_.size() - pos_ - keep;
      out.append(buf_, pos_, take);
      pos_ += take;
      if (!Ensure(terminator.size() + 1)) Truncated();
    }
  }

  void SkipPast(const std::string &terminator, std::uint64_t start) {
    ReadUntil(terminator, start);
  }

  std::string ReadText() {
    std::uint64_t start = offset();
    std::string raw;
    while (Ensure(1) && buf_[pos_] != '<') {
      std::size_t stop = buf_.find('<', pos_);
      if (stop == std::string::npos) stop = buf_.size();
      raw.append(buf_, pos_, stop - pos_);
      pos_ = stop;
    }
    return DecodeEntities(raw, start);
  }

  std::string DecodeEntities(const std::string &raw, std::uint64_t start) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      std::size_t semi = raw.find(';', i);
      if (semi == std::string::npos || semi - i > 12) {
        throw InputError("malformed markup at byte " + std::to_string(start + i) +
                         ": unterminated entity reference");
      }
      std::string_view name(raw.data() + i + 1, semi - i - 1);
      if (name == "lt") {
        out.push_back('<');
      } else if (name == "gt") {
        out.push_back('>');
      } else if (name == "amp") {
        out.push_back('&');
      } else if (name == "quot") {
        out.push_back('"');
      } else if (name == "apos") {
        out.push_back('\'');
      } else if (name.size() > 1 && name[0] == '#') {
        bool hex = name[1] == 'x' || name[1] == 'X';
        std::string_view digits = name.substr(hex ? 2 : 1);
        std::uint32_t cp = 0;
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp,
                                       hex ? 16 : 10);
        if (ec != std::errc() || p != digits.data() + digits.size() || cp > 0x10FFFF) {
          throw InputError("malformed markup at byte " + std::to_string(start + i) +
                           ": bad character reference");
        }
        utf8::Append(out, cp);
      } else {
        throw InputError("malformed markup at byte " + std::to_string(start + i) +
                         ": unknown entity '" + std::string(name) + "'");
      }
      i = semi;
    }
    return out;
  }

  std::istream &in_;
  std::string buf_;
  std::size_t pos_ = 0;
  std::uint64_t base_ = 0;
};

PageStream::PageStream(std::istream &in, PageStreamOptions options)
    : options_(std::move(options)), lexer_(std::make_unique<Lexer>(in)) {}

PageStream::~PageStream() = default;

std::optional<RawArticle> PageStream::Next() {
  for (;;) {
    Lexer::Event ev = lexer_->Next();
    switch (ev.kind) {
      case Lexer::Kind::kEof:
        return std::nullopt;
      case Lexer::Kind::kStart:
        if (ev.name == "page" && !ev.self_closing) {
          auto page = ReadPage(ev.offset);
          if (page) return page;
        }
        break;
      case Lexer::Kind::kEnd:
      case Lexer::Kind::kText:
        break;
    }
  }
}

std::optional<RawArticle> PageStream::ReadPage(std::uint64_t page_offset) {
  RawArticle article;
  bool have_ns = false;
  std::vector<std::string> stack = {"page"};
  std::string text_buffer;
  bool in_revision_text = false;

  auto partial = [&]() {
    std::string d = "page at byte " + std::to_string(page_offset);
    if (!article.title.empty()) d += " (title '" + article.title + "')";
    return d;
  };

  for (;;) {
    Lexer::Event ev;
    try {
      ev = lexer_->Next();
    } catch (const InputError &e) {
      throw InputError(std::string(e.what()) + "; incomplete " + partial());
    }
    if (options_.max_record_bytes > 0 &&
        lexer_->offset() - page_offset > options_.max_record_bytes) {
      throw InputError(partial() + " exceeds record size cap of " +
                       std::to_string(options_.max_record_bytes) + " bytes");
    }
    switch (ev.kind) {
      case Lexer::Kind::kEof:
        throw InputError("truncated stream at byte " + std::to_string(ev.offset) +
                         "; incomplete " + partial() + " inside <" + stack.back() + ">");
      case Lexer::Kind::kStart:
        if (stack.size() == 1 && ev.name == "redirect") {
          auto it = ev.attrs.find("title");
          if (it == ev.attrs.end()) lexer_->Malformed("redirect without title");
          article.redirect_target = NormalizeTitle(it->second);
        }
        if (!ev.self_closing) {
          stack.push_back(ev.name);
          if (ev.name == "text" && stack.size() == 3 && stack[1] == "revision") {
            in_revision_text = true;
            text_buffer.clear();
          }
        } else if (ev.name == "text" && stack.size() == 2 && stack[1] == "revision") {
          text_buffer.clear();
          article.wikitext.clear();
        }
        break;
      case Lexer::Kind::kEnd: {
        if (ev.name != stack.back()) {
          throw InputError("malformed markup at byte " + std::to_string(ev.offset) +
                           ": expected </" + stack.back() + ">, found </" + ev.name + ">");
        }
        stack.pop_back();
        if (in_revision_text && ev.name == "text") {
          // Later revisions replace earlier ones.
          article.wikitext = std::move(text_buffer);
          text_buffer.clear();
          in_revision_text = false;
        }
        if (stack.empty()) {
          if (article.title.empty()) {
            throw InputError("malformed markup: " + partial() + " has no title");
          }
          if (!have_ns) article.ns = 0;
          if (article.redirect_target) article.wikitext.clear();
          if (!options_.namespaces.empty() && !options_.namespaces.count(article.ns)) {
            counters_.Add("pages.skipped_namespace");
            return std::nullopt;
          }
          counters_.Add("pages.read");
          if (article.redirect_target) counters_.Add("pages.redirects");
          return article;
        }
        break;
      }
      case Lexer::Kind::kText:
        if (stack.size() == 2 && stack[1] == "title") {
          article.title = NormalizeTitle(ev.text);
        } else if (stack.size() == 2 && stack[1] == "ns") {
          std::string_view v = Trim(ev.text);
          int ns = 0;
          auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), ns);
          if (ec != std::errc() || p != v.data() + v.size() || ns < 0) {
            throw InputError("malformed markup at byte " + std::to_string(ev.offset) +
                             ": bad namespace '" + std::string(v) + "'");
          }
          article.ns = ns;
          have_ns = true;
        } else if (in_revision_text) {
          text_buffer += ev.text;
        }
        break;
    }
  }
}

std::vector<RawArticle> ReadAllArticles(std::istream &in, PageStreamOptions options,
                                        Counters *counters) {
  PageStream stream(in, std::move(options));
  std::vector<RawArticle> out;
  while (auto a = stream.Next()) out.push_back(std::move(*a));
  if (counters) counters->Merge(stream.counters());
  return out;
}

namespace {

using nlohmann::json;

void AppendClaimTargets(const json &claims, const char *property,
                        std::vector<std::string> &out) {
  auto it = claims.find(property);
  if (it == claims.end() || !it->is_array()) return;
  for (const json &claim : *it) {
    const json *value = nullptr;
    auto snak = claim.find("mainsnak");
    if (snak == claim.end()) continue;
    auto dv = snak->find("datavalue");
    if (dv == snak->end()) continue;
    auto v = dv->find("value");
    if (v == dv->end() || !v->is_object()) continue;
    value = &*v;
    std::string id;
    if (auto idv = value->find("id"); idv != value->end() && idv->is_string()) {
      id = idv->get<std::string>();
    } else if (auto num = value->find("numeric-id");
               num != value->end() && num->is_number_integer()) {
      id = "Q" + std::to_string(num->get<std::int64_t>());
    }
    if (!IsItemId(id)) continue;
    bool seen = false;
    for (const auto &x : out) seen = seen || x == id;
    if (!seen) out.push_back(std::move(id));
  }
}

}  // namespace

std::optional<EntityRecord> ParseEntityJson(std::string_view text,
                                            const EntityStreamOptions &options) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw InputError("not a JSON object");
  auto id = doc.find("id");
  if (id == doc.end() || !id->is_string()) throw InputError("entity without id");
  EntityRecord rec;
  rec.id = id->get<std::string>();
  if (!IsItemId(rec.id)) return std::nullopt;
  if (auto claims = doc.find("claims"); claims != doc.end() && claims->is_object()) {
    AppendClaimTargets(*claims, "P31", rec.instance_of);
    AppendClaimTargets(*claims, "P279", rec.subclass_of);
  }
  if (auto links = doc.find("sitelinks"); links != doc.end() && links->is_object()) {
    auto site = links->find(options.wiki_code);
    if (site != links->end() && site->is_object()) {
      auto title = site->find("title");
      if (title != site->end() && title->is_string()) {
        rec.sitelink = NormalizeTitle(title->get<std::string>());
      }
    }
  }
  for (const auto &cls : rec.instance_of) {
    if (options.disambiguation_classes.count(cls)) rec.is_disambiguation = true;
  }
  return rec;
}

EntityStream::EntityStream(std::istream &in, EntityStreamOptions options)
    : in_(in), options_(std::move(options)) {}

std::optional<EntityRecord> EntityStream::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (options_.max_record_bytes > 0 && line.size() > options_.max_record_bytes) {
      throw InputError("entity line " + std::to_string(line_number_) +
                       " exceeds record size cap of " +
                       std::to_string(options_.max_record_bytes) + " bytes");
    }
    std::string_view body = Trim(line);
    if (body.empty() || body == "[" || body == "]") continue;
    if (body.back() == ',') body.remove_suffix(1);
    try {
      auto rec = ParseEntityJson(body, options_);
      ++parsed_;
      if (!rec) {
        counters_.Add("entities.non_item");
        continue;
      }
      counters_.Add("entities.read");
      return rec;
    } catch (const InputError &) {
      counters_.Add("entities.unparseable_lines");
    }
  }
  if (parsed_ == 0) {
    throw InputError("entity dump contains no parseable entity lines (" +
                     std::to_string(counters_.Get("entities.unparseable_lines")) +
                     " unparseable)");
  }
  return std::nullopt;
}

std::vector<EntityRecord> ReadAllEntities(std::istream &in, EntityStreamOptions options,
                                          Counters *counters) {
  EntityStream stream(in, std::move(options));
  std::vector<EntityRecord> out;
  while (auto e = stream.Next()) out.push_back(std::move(*e));
  if (counters) counters->Merge(stream.counters());
  return out;
}

SiteIndex BuildSiteIndex(const std::vector<EntityRecord> &entities, Counters *counters) {
  SiteIndex index;
  for (const auto &e : entities) {
    if (!e.sitelink) continue;
    auto [it, inserted] = index.insert_or_assign(*e.sitelink, e.id);
    if (!inserted && counters) counters->Add("site_index.duplicate_titles");
  }
  return index;
}

}  // namespace silverner
