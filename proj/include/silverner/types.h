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

#ifndef SILVERNER_TYPES_H_
#define SILVERNER_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace silverner {

// Bad user input: malformed files, unknown tags, missing paths.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant, i.e. a bug in the pipeline.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class NEType : std::uint8_t { kPER = 0, kORG = 1, kLOC = 2 };

inline constexpr std::array<NEType, 3> kAllNETypes = {NEType::kPER, NEType::kORG,
                                                      NEType::kLOC};

std::string_view NETypeName(NEType type);
std::optional<NEType> ParseNEType(std::string_view name);

// The closed 7-tag IOB2 tag set. Numeric order is the decoder's tie-break
// order, so O comes first.
enum class Tag : std::uint8_t {
  kO = 0,
  kBPER = 1,
  kIPER = 2,
  kBORG = 3,
  kIORG = 4,
  kBLOC = 5,
  kILOC = 6,
};

inline constexpr int kNumTags = 7;

inline constexpr std::array<Tag, kNumTags> kAllTags = {
    Tag::kO, Tag::kBPER, Tag::kIPER, Tag::kBORG, Tag::kIORG, Tag::kBLOC, Tag::kILOC};

inline constexpr int TagIndex(Tag t) { return static_cast<int>(t); }

std::string_view TagName(Tag tag);
std::optional<Tag> ParseTag(std::string_view name);

inline bool IsBegin(Tag t) {
  return t == Tag::kBPER || t == Tag::kBORG || t == Tag::kBLOC;
}
inline bool IsInside(Tag t) {
  return t == Tag::kIPER || t == Tag::kIORG || t == Tag::kILOC;
}

// Entity type carried by a B-/I- tag; nullopt for O.
std::optional<NEType> TagType(Tag tag);
Tag BeginTag(NEType type);
Tag InsideTag(NEType type);

// IOB2 transition rule: I-X may only follow B-X or I-X. `prev` is nullopt at
// sentence start.
bool IsValidTransition(std::optional<Tag> prev, Tag cur);

}  // namespace silverner

#endif  // SILVERNER_TYPES_H_
