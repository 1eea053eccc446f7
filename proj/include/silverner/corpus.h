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

#ifndef SILVERNER_CORPUS_H_
#define SILVERNER_CORPUS_H_

#include <string>
#include <vector>

#include "silverner/text_segmentation.h"
#include "silverner/types.h"

namespace silverner {

struct LabeledSentence {
  std::vector<Token> tokens;
  // One tag per token.
  std::vector<Tag> tags;
  std::string source_article;
};

struct AnnotatedCorpus {
  std::vector<LabeledSentence> sentences;
  // Free-text header lines (tool version, config digest).
  std::vector<std::string> provenance;
};

// Tokens with offsets laid out as if joined by single spaces.
std::vector<Token> TokensFromTexts(const std::vector<std::string> &texts);

}  // namespace silverner

#endif  // SILVERNER_CORPUS_H_
