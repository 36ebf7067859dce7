// Copyright 2026 The crec Authors
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

#ifndef CREC_MULTISET_DIFF_H_
#define CREC_MULTISET_DIFF_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crec/lexer.h"

namespace crec {

enum class IdentifierClass { kNone, kVariable, kMethod, kType };

// Classifies lexemes[index] from its neighbours.
IdentifierClass classify_identifier(std::span<const Lexeme> lexemes,
                                    std::size_t index);

struct DiffToken {
  std::string text;
  IdentifierClass cls = IdentifierClass::kNone;

  friend bool operator==(const DiffToken&, const DiffToken&) = default;
};

// Keywords, identifiers and literals of a lexeme run, classified.
std::vector<DiffToken> diff_tokens(std::span<const Lexeme> lexemes);

// One alignment column: an entry per member, nullopt for a gap.
struct DiffColumn {
  std::vector<std::optional<DiffToken>> entries;
  bool matched = false;
  bool partially_same = false;
  bool has_variable = false;
  bool has_method = false;
  bool has_type = false;
};

struct TokenMultisetDiff {
  std::vector<DiffColumn> columns;

  std::vector<const DiffColumn*> matched() const;
  std::vector<const DiffColumn*> differential() const;
};

// Progressive LCS alignment: sequence k is aligned against the column
// consensus of sequences 0..k-1. Unmatched runs between LCS anchors pair up
// position by position before any gap is opened.
TokenMultisetDiff multiset_diff(std::span<const std::vector<DiffToken>> sequences);

}  // namespace crec

#endif  // CREC_MULTISET_DIFF_H_
