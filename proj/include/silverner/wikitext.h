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

#ifndef SILVERNER_WIKITEXT_H_
#define SILVERNER_WIKITEXT_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "silverner/diagnostics.h"

namespace silverner {

// An internal link in clean text: byte range [begin, end) of its anchor.
struct CharLink {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string target;
  std::string anchor;

  bool operator==(const CharLink &) const = default;
};

struct CleanText {
  // One paragraph or list item per line, separated by '\n'.
  std::string text;
  std::vector<CharLink> links;
};

struct WikitextOptions {
  // Link namespaces whose links are dropped with their text (files,
  // categories, templates...). Compared case-sensitively after the first
  // letter is uppercased.
  std::set<std::string> hidden_namespaces = {
      "File",      "Image",     "Media",      "Category",  "Template", "Wikipedia",
      "Portal",    "Help",      "User",       "Special",   "Module",   "Draft",
      "Պատկեր",    "Նիշք",      "Մեդիա",      "Կատեգորիա", "Կաղապար",  "Վիքիպեդիա",
      "Պորտալ",    "Օգնություն", "Մասնակից",   "Սպասարկող", "Մոդուլ",   "Файл",
      "Категория",
  };
  // Elements removed together with their content.
  std::set<std::string> dropped_elements = {
      "ref",  "math", "gallery", "timeline", "syntaxhighlight", "source", "pre",
      "score", "imagemap", "references", "chem", "hiero", "graph", "templatedata",
  };
};

// Strips markup and keeps the text of internal links with their targets.
// Malformed constructs discard the enclosing paragraph and bump
// `wikitext.unbalanced_paragraphs`.
CleanText ParseWikitext(std::string_view raw, const WikitextOptions &options = {},
                        Counters *counters = nullptr);

}  // namespace silverner

#endif  // SILVERNER_WIKITEXT_H_
