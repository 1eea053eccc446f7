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

#include "silverner/types.h"

namespace silverner {

std::string_view NETypeName(NEType type) {
  switch (type) {
    case NEType::kPER: return "PER";
    case NEType::kORG: return "ORG";
    case NEType::kLOC: return "LOC";
  }
  return "?";
}

std::optional<NEType> ParseNEType(std::string_view name) {
  if (name == "PER") return NEType::kPER;
  if (name == "ORG") return NEType::kORG;
  if (name == "LOC") return NEType::kLOC;
  return std::nullopt;
}

std::string_view TagName(Tag tag) {
  static constexpr std::array<std::string_view, kNumTags> kNames = {
      "O", "B-PER", "I-PER", "B-ORG", "I-ORG", "B-LOC", "I-LOC"};
  return kNames[TagIndex(tag)];
}

std::optional<Tag> ParseTag(std::string_view name) {
  for (Tag t : kAllTags) {
    if (TagName(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<NEType> TagType(Tag tag) {
  switch (tag) {
    case Tag::kO: return std::nullopt;
    case Tag::kBPER:
    case Tag::kIPER: return NEType::kPER;
    case Tag::kBORG:
    case Tag::kIORG: return NEType::kORG;
    case Tag::kBLOC:
    case Tag::kILOC: return NEType::kLOC;
  }
  return std::nullopt;
}

Tag BeginTag(NEType type) {
  switch (type) {
    case NEType::kPER: return Tag::kBPER;
    case NEType::kORG: return Tag::kBORG;
    case NEType::kLOC: return Tag::kBLOC;
  }
  return Tag::kO;
}

Tag InsideTag(NEType type) {
  switch (type) {
    case NEType::kPER: return Tag::kIPER;
    case NEType::kORG: return Tag::kIORG;
    case NEType::kLOC: return Tag::kILOC;
  }
  return Tag::kO;
}

bool IsValidTransition(std::optional<Tag> prev, Tag cur) {
  if (!IsInside(cur)) return true;
  if (!prev || *prev == Tag::kO) return false;
  return TagType(*prev) == TagType(cur);
}

}  // namespace silverner
