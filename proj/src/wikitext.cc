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

#include "silverner/wikitext.h"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "silverner/unicode.h"

namespace silverner {
namespace {

bool StartsAt(std::string_view s, std::size_t i, std::string_view prefix) {
  return s.substr(i, prefix.size()) == prefix;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Case-insensitive find of ASCII `needle` at or after `from`.
std::size_t FindNoCase(std::string_view hay, std::string_view needle, std::size_t from) {
  std::string lower_hay = Lower(hay.substr(from));
  std::size_t hit = lower_hay.find(Lower(needle));
  return hit == std::string::npos ? std::string_view::npos : from + hit;
}

// End (exclusive) of the balanced `open`...`close` run starting at `i`, or
// npos. Comments inside are skipped.
std::size_t MatchNested(std::string_view s, std::size_t i, std::string_view open,
                        std::string_view close) {
  int depth = 0;
  std::size_t j = i;
  while (j < s.size()) {
    if (StartsAt(s, j, "<!--")) {
      std::size_t end = s.find("-->", j + 4);
      if (end == std::string_view::npos) return std::string_view::npos;
      j = end + 3;
    } else if (StartsAt(s, j, open)) {
      ++depth;
      j += open.size();
    } else if (StartsAt(s, j, close)) {
      --depth;
      j += close.size();
      if (depth == 0) return j;
    } else {
      ++j;
    }
  }
  return std::string_view::npos;
}

bool AtLineStart(std::string_view s, std::size_t i) {
  while (i > 0 && (s[i - 1] == ' ' || s[i - 1] == '\t')) --i;
  return i == 0 || s[i - 1] == '\n';
}

// End of a `{| ... |}` table starting at `i`; both markers count only at
// line start.
std::size_t MatchTable(std::string_view s, std::size_t i) {
  int depth = 0;
  std::size_t j = i;
  while (j < s.size()) {
    if (StartsAt(s, j, "{|") && AtLineStart(s, j)) {
      ++depth;
      j += 2;
    } else if (StartsAt(s, j, "|}") && AtLineStart(s, j)) {
      --depth;
      j += 2;
      if (depth == 0) return j;
    } else {
      ++j;
    }
  }
  return std::string_view::npos;
}

class BlockStripper {
 public:
  BlockStripper(std::string_view raw, const WikitextOptions &options, Counters *counters)
      : raw_(raw), options_(options), counters_(counters) {}

  std::string Run() {
    std::size_t i = 0;
    while (i < raw_.size()) {
      if (StartsAt(raw_, i, "<!--")) {
        std::size_t end = raw_.find("-->", i + 4);
        if (end == std::string_view::npos) {
          i = Unbalanced(i);
        } else {
          i = end + 3;
        }
      } else if (StartsAt(raw_, i, "{{")) {
        std::size_t end = MatchNested(raw_, i, "{{", "}}");
        i = end == std::string_view::npos ? Unbalanced(i) : end;
      } else if (StartsAt(raw_, i, "{|") && AtLineStart(raw_, i)) {
        std::size_t end = MatchTable(raw_, i);
        i = end == std::string_view::npos ? Unbalanced(i) : end;
      } else if (raw_[i] == '<' && IsTagStart(i)) {
        i = Tag(i);
      } else {
        out_.push_back(raw_[i++]);
      }
    }
    return std::move(out_);
  }

 private:
  bool IsTagStart(std::size_t i) const {
    std::size_t j = i + 1;
    if (j < raw_.size() && raw_[j] == '/') ++j;
    return j < raw_.size() && std::isalpha(static_cast<unsigned char>(raw_[j]));
  }

  std::size_t Tag(std::size_t i) {
    std::size_t close = raw_.find('>', i);
    std::size_t next_open = raw_.find('<', i + 1);
    if (close == std::string_view::npos || (next_open != std::string_view::npos && next_open < close)) {
      out_.push_back(raw_[i]);
      return i + 1;
    }
    bool closing = raw_[i + 1] == '/';
    std::size_t name_start = i + (closing ? 2 : 1);
    std::size_t name_end = name_start;
    while (name_end < close && std::isalnum(static_cast<unsigned char>(raw_[name_end]))) {
      ++name_end;
    }
    std::string name = Lower(raw_.substr(name_start, name_end - name_start));
    bool self_closing = raw_[close - 1] == '/';
    if (closing || self_closing || !options_.dropped_elements.count(name)) {
      return close + 1;
    }
    std::size_t end = FindNoCase(raw_, "</" + name, close + 1);
    if (end == std::string_view::npos) return Unbalanced(i);
    std::size_t gt = raw_.find('>', end);
    return gt == std::string_view::npos ? Unbalanced(i) : gt + 1;
  }

  // Drops the paragraph holding the construct at `i`; returns where to
  // resume reading.
  std::size_t Unbalanced(std::size_t i) {
    if (counters_) counters_->Add("wikitext.unbalanced_paragraphs");
    std::size_t para = out_.rfind("\n\n");
    out_.resize(para == std::string::npos ? 0 : para + 2);
    std::size_t next = raw_.find("\n\n", i);
    return next == std::string_view::npos ? raw_.size() : next + 2;
  }

  std::string_view raw_;
  const WikitextOptions &options_;
  Counters *counters_;
  std::string out_;
};

struct Rendered {
  std::string text;
  std::vector<CharLink> links;
};

bool IsLanguagePrefix(std::string_view ns) {
  if (ns.size() < 2 || ns.size() > 12) return false;
  for (char c : ns) {
    if (!(c >= 'a' && c <= 'z') && c != '-') return false;
  }
  return true;
}

bool DecodeHtmlEntity(std::string_view s, std::size_t i, std::string &out, std::size_t &next) {
  std::size_t semi = s.find(';', i);
  if (semi == std::string_view::npos || semi - i > 10) return false;
  std::string_view name = s.substr(i + 1, semi - i - 1);
  static const std::pair<std::string_view, char32_t> kNamed[] = {
      {"nbsp", U' '},  {"ndash", U'–'}, {"mdash", U'—'}, {"amp", U'&'},   {"lt", U'<'},
      {"gt", U'>'},    {"quot", U'"'},  {"laquo", U'«'}, {"raquo", U'»'}, {"minus", U'−'},
      {"thinsp", U' '}, {"apos", U'\''},
  };
  for (const auto &[n, cp] : kNamed) {
    if (n == name) {
      utf8::Append(out, cp);
      next = semi + 1;
      return true;
    }
  }
  if (name.size() > 1 && name[0] == '#') {
    bool hex = name[1] == 'x' || name[1] == 'X';
    std::string_view digits = name.substr(hex ? 2 : 1);
    std::uint32_t cp = 0;
    auto [p, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
    if (ec == std::errc() && p == digits.data() + digits.size() && cp > 0 && cp <= 0x10FFFF) {
      utf8::Append(out, cp == 0xA0 ? U' ' : static_cast<char32_t>(cp));
      next = semi + 1;
      return true;
    }
  }
  return false;
}

// Inline renderer for one paragraph.
class InlineRenderer {
 public:
  explicit InlineRenderer(const WikitextOptions &options) : options_(options) {}

  // False when the paragraph is malformed.
  bool Render(std::string_view s, bool record_links, Rendered &out) {
    std::size_t i = 0;
    while (i < s.size()) {
      if (StartsAt(s, i, "[[")) {
        std::size_t end = MatchNested(s, i, "[[", "]]");
        if (end == std::string_view::npos) return false;
        std::string_view inner = s.substr(i + 2, end - i - 4);
        i = end;
        if (!Link(s, inner, i, record_links, out)) return false;
      } else if (StartsAt(s, i, "]]") || StartsAt(s, i, "}}")) {
        return false;
      } else if (s[i] == '[' && IsExternalLinkStart(s, i)) {
        std::size_t close = s.find(']', i);
        if (close == std::string_view::npos) {
          Emit(out, "[");
          ++i;
          continue;
        }
        std::string_view body = s.substr(i + 1, close - i - 1);
        std::size_t space = body.find(' ');
        if (space != std::string_view::npos) {
          Rendered label;
          if (!Render(body.substr(space + 1), false, label)) return false;
          Emit(out, label.text);
        }
        i = close + 1;
      } else if (StartsAt(s, i, "''")) {
        while (i < s.size() && s[i] == '\'') ++i;
      } else if (StartsAt(s, i, "__") && MagicWordEnd(s, i) != 0) {
        i = MagicWordEnd(s, i);
      } else if (s[i] == '&') {
        std::string decoded;
        std::size_t next = i;
        if (DecodeHtmlEntity(s, i, decoded, next)) {
          Emit(out, decoded);
          i = next;
        } else {
          Emit(out, "&");
          ++i;
        }
      } else {
        std::size_t p = i;
        utf8::Next(s, p);
        Emit(out, s.substr(i, p - i));
        i = p;
      }
    }
    return true;
  }

 private:
  static bool IsExternalLinkStart(std::string_view s, std::size_t i) {
    for (std::string_view scheme : {"[http://", "[https://", "[//", "[ftp://", "[mailto:"}) {
      if (StartsAt(s, i, scheme)) return true;
    }
    return false;
  }

  static std::size_t MagicWordEnd(std::string_view s, std::size_t i) {
    std::size_t j = i + 2;
    while (j < s.size() && s[j] >= 'A' && s[j] <= 'Z') ++j;
    if (j == i + 2 || !StartsAt(s, j, "__")) return 0;
    return j + 2;
  }

  // Appends text, collapsing whitespace runs to one space and never leading
  // with a space.
  static void Emit(Rendered &out, std::string_view text) {
    for (std::size_t p = 0; p < text.size();) {
      std::size_t q = p;
      char32_t cp = utf8::Next(text, q);
      if (IsSpace(cp) || cp == 0xA0) {
        if (!out.text.empty() && out.text.back() != ' ') out.text.push_back(' ');
      } else {
        out.text.append(text.substr(p, q - p));
      }
      p = q;
    }
  }

  bool Link(std::string_view s, std::string_view inner, std::size_t &i, bool record_links,
            Rendered &out) {
    // Split at the first pipe outside nested links.
    std::size_t pipe = std::string_view::npos;
    for (std::size_t j = 0, depth = 0; j < inner.size(); ++j) {
      if (StartsAt(inner, j, "[[")) {
        ++depth;
        ++j;
      } else if (StartsAt(inner, j, "]]")) {
        if (depth > 0) --depth;
        ++j;
      } else if (inner[j] == '|' && depth == 0) {
        pipe = j;
        break;
      }
    }
    std::string_view target = Trim(inner.substr(0, pipe));
    bool leading_colon = !target.empty() && target[0] == ':';
    if (leading_colon) target = Trim(target.substr(1));
    bool plain = false;
    if (std::size_t colon = target.find(':'); colon != std::string_view::npos) {
      std::string_view ns = Trim(target.substr(0, colon));
      if (options_.hidden_namespaces.count(UpperFirst(ns)) || IsLanguagePrefix(ns)) {
        if (!leading_colon) return true;
        plain = true;
      }
    }
    std::string anchor_source;
    if (pipe == std::string_view::npos) {
      anchor_source = std::string(target);
    } else {
      anchor_source = std::string(inner.substr(pipe + 1));
      if (Trim(anchor_source).empty()) {
        // Pipe trick: drop a trailing parenthetical qualifier.
        std::string_view t = target;
        std::size_t paren = t.rfind(" (");
        if (paren != std::string_view::npos && t.back() == ')') t = t.substr(0, paren);
        anchor_source = std::string(t);
      }
    }
    Rendered anchor;
    if (!Render(anchor_source, false, anchor)) return false;
    std::string text(Trim(anchor.text));
    // Link trail: letters glued to the closing brackets join the anchor.
    while (i < s.size()) {
      std::size_t p = i;
      char32_t cp = utf8::Next(s, p);
      if (!IsLetter(cp)) break;
      text.append(s.substr(i, p - i));
      i = p;
    }
    if (text.empty()) return true;
    std::size_t begin = out.text.size();
    Emit(out, text);
    if (record_links && !plain && !target.empty()) {
      out.links.push_back(CharLink{begin, out.text.size(), std::string(target), text});
    }
    return true;
  }

  const WikitextOptions &options_;
};

bool IsHeading(std::string_view line) {
  return line.size() >= 2 && line.front() == '=' && line.back() == '=';
}

bool IsListItem(std::string_view line) {
  return !line.empty() && (line[0] == '*' || line[0] == '#' || line[0] == ':' || line[0] == ';');
}

}  // namespace

CleanText ParseWikitext(std::string_view raw, const WikitextOptions &options,
                        Counters *counters) {
  std::string stripped = BlockStripper(raw, options, counters).Run();
  CleanText result;
  InlineRenderer renderer(options);

  auto flush = [&](const std::string &paragraph) {
    std::string_view body = Trim(paragraph);
    if (body.empty()) return;
    Rendered rendered;
    if (!renderer.Render(body, true, rendered)) {
      if (counters) counters->Add("wikitext.unbalanced_paragraphs");
      return;
    }
    while (!rendered.text.empty() && rendered.text.back() == ' ') rendered.text.pop_back();
    if (rendered.text.empty()) return;
    if (!result.text.empty()) result.text.push_back('\n');
    std::size_t base = result.text.size();
    result.text += rendered.text;
    for (auto &link : rendered.links) {
      link.begin += base;
      link.end += base;
      result.links.push_back(std::move(link));
    }
  };

  std::string paragraph;
  std::size_t pos = 0;
  while (pos <= stripped.size()) {
    std::size_t nl = stripped.find('\n', pos);
    if (nl == std::string::npos) nl = stripped.size();
    std::string_view line = Trim(std::string_view(stripped).substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || IsHeading(line) || line.find_first_not_of('-') == std::string_view::npos) {
      flush(paragraph);
      paragraph.clear();
      continue;
    }
    if (IsListItem(line)) {
      flush(paragraph);
      paragraph.clear();
      std::size_t k = 0;
      while (k < line.size() && IsListItem(line.substr(k))) ++k;
      flush(std::string(line.substr(k)));
      continue;
    }
    if (!paragraph.empty()) paragraph.push_back(' ');
    paragraph.append(line);
  }
  flush(paragraph);
  return result;
}

}  // namespace silverner
