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
#ifndef CREC_CLONE_DETECTOR_H_
#define CREC_CLONE_DETECTOR_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crec/lexer.h"

namespace crec {

// A block position within one version: path plus inclusive line span.
struct Location {
  std::string path;
  int start_line = 0;
  int end_line = 0;

  std::string to_string() const;
  // Parses "path:start-end"; the path may itself contain ':'.
  static Location parse(std::string_view text);

  friend bool operator==(const Location&, const Location&) = default;
  friend auto operator<=>(const Location&, const Location&) = default;
};

// Sorted multiset of token texts.
using TokenBag = std::vector<std::string>;

TokenBag make_bag(std::span<const Token> tokens);

// |a ∩ b| for sorted multisets.
std::size_t bag_intersection(const TokenBag& a, const TokenBag& b);

// a minus b (multiset difference), sorted.
TokenBag bag_difference(const TokenBag& a, const TokenBag& b);

// |a ∩ b| / max(|a|, |b|); 0 when either side is empty.
double overlap_coefficient(const TokenBag& a, const TokenBag& b);

struct CodeBlock {
  std::string path;
  int start_line = 0;  // line of the opening brace
  int end_line = 0;    // line of the closing brace
  std::vector<Token> tokens;
  TokenBag token_bag;
  std::optional<std::string> enclosing_method_name;
  std::optional<int> enclosing_method_line_count;
  std::optional<int> enclosing_method_start_line;
  bool is_method_body = false;
  int depth = 0;  // brace nesting depth, 0 for top-level blocks

  // The lexemes strictly inside the braces, shared with the whole file.
  std::shared_ptr<const std::vector<Lexeme>> file_lexemes;
  std::size_t lexeme_begin = 0;
  std::size_t lexeme_end = 0;

  std::span<const Lexeme> lexemes() const;
  int line_span() const { return end_line - start_line + 1; }
  Location location() const { return {path, start_line, end_line}; }
  // True when this block lies strictly inside other in the same file.
  bool nested_in(const CodeBlock& other) const;
};

struct BlockExtraction {
  std::vector<CodeBlock> blocks;
  std::vector<std::string> diagnostics;
};

// One block per balanced brace pair, ordered by opening-brace position.
// Unbalanced input yields the balanced blocks plus diagnostics.
BlockExtraction extract_blocks(std::string_view source, const std::string& path);
BlockExtraction extract_blocks(
    std::shared_ptr<const std::vector<Lexeme>> lexemes, const std::string& path);

// A block covering all of text, for tests and ad-hoc analysis.
CodeBlock block_from_text(std::string path, std::string_view text,
                          int first_line = 1);

double similarity(const CodeBlock& a, const CodeBlock& b);

struct DetectOptions {
  std::size_t min_tokens = 30;
  int min_lines = 6;
  double theta = 0.8;
  // Token and line thresholds combine with OR when true, AND otherwise.
  bool disjunctive = true;
};

bool qualifies(const CodeBlock& block, const DetectOptions& options);

struct CloneGroup {
  std::size_t version = 0;
  std::vector<CodeBlock> members;  // sorted by location
  std::string group_id;
};

std::string make_group_id(std::size_t version,
                          std::span<const Location> members);

// Connected components of the pairwise relation similarity >= theta over
// qualifying blocks, with blocks nested inside another member of the same
// component dropped. Candidate pairs come from a prefix-filtered inverted
// index; results equal the all-pairs definition.
std::vector<CloneGroup> detect_clones(std::span<const CodeBlock> blocks,
                                      const DetectOptions& options = {},
                                      std::size_t version = 0);

}  // namespace crec

#endif  // CREC_CLONE_DETECTOR_H_
