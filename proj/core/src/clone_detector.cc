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

#include "crec/clone_detector.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "crec/common.h"
#include "crec/line_diff.h"

namespace crec {

std::string Location::to_string() const {
  return path + ":" + std::to_string(start_line) + "-" +
         std::to_string(end_line);
}

Location Location::parse(std::string_view text) {
  auto colon = text.rfind(':');
  auto dash = text.rfind('-');
  if (colon == std::string_view::npos || dash == std::string_view::npos ||
      dash < colon || colon == 0) {
    throw Error(ErrorCode::kParseError,
                "bad location '" + std::string(text) + "'");
  }
  Location loc;
  loc.path = std::string(text.substr(0, colon));
  try {
    loc.start_line = std::stoi(std::string(text.substr(colon + 1, dash - colon - 1)));
    loc.end_line = std::stoi(std::string(text.substr(dash + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError,
                "bad location '" + std::string(text) + "'");
  }
  return loc;
}

TokenBag make_bag(std::span<const Token> tokens) {
  TokenBag bag;
  bag.reserve(tokens.size());
  for (const auto& t : tokens) bag.push_back(t.text);
  std::sort(bag.begin(), bag.end());
  return bag;
}

std::size_t bag_intersection(const TokenBag& a, const TokenBag& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

TokenBag bag_difference(const TokenBag& a, const TokenBag& b) {
  TokenBag out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

double overlap_coefficient(const TokenBag& a, const TokenBag& b) {
  if (a.empty() || b.empty()) return 0.0;
  return static_cast<double>(bag_intersection(a, b)) /
         static_cast<double>(std::max(a.size(), b.size()));
}

std::span<const Lexeme> CodeBlock::lexemes() const {
  if (!file_lexemes) return {};
  return std::span<const Lexeme>(*file_lexemes)
      .subspan(lexeme_begin, lexeme_end - lexeme_begin);
}

bool CodeBlock::nested_in(const CodeBlock& other) const {
  if (path != other.path) return false;
  if (file_lexemes && file_lexemes == other.file_lexemes) {
    return lexeme_begin >= other.lexeme_begin &&
           lexeme_end <= other.lexeme_end &&
           !(lexeme_begin == other.lexeme_begin &&
             lexeme_end == other.lexeme_end);
  }
  return start_line >= other.start_line && end_line <= other.end_line &&
         !(start_line == other.start_line && end_line == other.end_line);
}

BlockExtraction extract_blocks(std::string_view source,
                               const std::string& path) {
  return extract_blocks(std::make_shared<const std::vector<Lexeme>>(lex(source)),
                        path);
}

BlockExtraction extract_blocks(
    std::shared_ptr<const std::vector<Lexeme>> lexemes,
    const std::string& path) {
  BlockExtraction result;
  const auto& lx = *lexemes;

  struct Pair {
    std::size_t open;
    std::size_t close;
    int depth;
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> open_stack;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (lx[i].is("{")) {
      open_stack.push_back(i);
    } else if (lx[i].is("}")) {
      if (open_stack.empty()) {
        result.diagnostics.push_back("UnbalancedBraces: unmatched '}' at " +
                                     path + ":" + std::to_string(lx[i].line));
        continue;
      }
      std::size_t open = open_stack.back();
      open_stack.pop_back();
      pairs.push_back({open, i, static_cast<int>(open_stack.size())});
    }
  }
  for (std::size_t open : open_stack) {
    result.diagnostics.push_back("UnbalancedBraces: unclosed '{' at " + path +
                                 ":" + std::to_string(lx[open].line));
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.open < b.open; });

  struct Method {
    std::size_t close;
    std::string name;
    int start_line;
    int line_count;
  };
  std::vector<Method> method_stack;
  for (const Pair& p : pairs) {
    while (!method_stack.empty() && method_stack.back().close < p.open) {
      method_stack.pop_back();
    }
    BraceInfo info = classify_brace(lx, p.open);
    const int close_line = lx[p.close].line;
    if (info.kind == BraceKind::kMethodBody) {
      method_stack.push_back(
          {p.close, info.name, info.name_line, close_line - info.name_line + 1});
    }

    CodeBlock block;
    block.path = path;
    block.start_line = lx[p.open].line;
    block.end_line = close_line;
    block.depth = p.depth;
    block.is_method_body = info.kind == BraceKind::kMethodBody;
    block.file_lexemes = lexemes;
    block.lexeme_begin = p.open + 1;
    block.lexeme_end = p.close;
    for (std::size_t i = p.open + 1; i < p.close; ++i) {
      if (lx[i].is_token()) block.tokens.push_back(to_token(lx[i]));
    }
    block.token_bag = make_bag(block.tokens);
    if (!method_stack.empty()) {
      const Method& m = method_stack.back();
      block.enclosing_method_name = m.name;
      block.enclosing_method_line_count = m.line_count;
      block.enclosing_method_start_line = m.start_line;
    }
    result.blocks.push_back(std::move(block));
  }
  return result;
}

CodeBlock block_from_text(std::string path, std::string_view text,
                          int first_line) {
  std::vector<Lexeme> lx = lex(text);
  for (auto& l : lx) l.line += first_line - 1;
  CodeBlock block;
  block.path = std::move(path);
  block.start_line = first_line;
  const int lines = std::max<int>(1, static_cast<int>(split_lines(text).size()));
  block.end_line = first_line + lines - 1;
  for (const auto& l : lx) {
    if (l.is_token()) block.tokens.push_back(to_token(l));
  }
  block.token_bag = make_bag(block.tokens);
  block.lexeme_begin = 0;
  block.lexeme_end = lx.size();
  block.file_lexemes = std::make_shared<const std::vector<Lexeme>>(std::move(lx));
  return block;
}

double similarity(const CodeBlock& a, const CodeBlock& b) {
  return overlap_coefficient(a.token_bag, b.token_bag);
}

bool qualifies(const CodeBlock& block, const DetectOptions& options) {
  const bool tokens_ok = block.tokens.size() >= options.min_tokens;
  const bool lines_ok = block.line_span() >= options.min_lines;
  return options.disjunctive ? (tokens_ok || lines_ok) : (tokens_ok && lines_ok);
}

std::string make_group_id(std::size_t version,
                          std::span<const Location> members) {
  std::vector<std::string> keys;
  keys.reserve(members.size());
  for (const auto& m : members) keys.push_back(m.to_string());
  std::sort(keys.begin(), keys.end());
  std::string material = std::to_string(version);
  for (const auto& k : keys) {
    material += '\n';
    material += k;
  }
  return hex64(fnv1a64(material));
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool location_less(const CodeBlock& a, const CodeBlock& b) {
  return std::tie(a.path, a.start_line, a.end_line, a.lexeme_begin) <
         std::tie(b.path, b.start_line, b.end_line, b.lexeme_begin);
}

// Overlap needed for overlap_coefficient >= theta against a block of size n.
std::size_t required_overlap(std::size_t n, double theta) {
  return static_cast<std::size_t>(
      std::ceil(theta * static_cast<double>(n) - 1e-9));
}

std::vector<CloneGroup> finalize_groups(
    std::span<const CodeBlock> blocks,
    std::vector<std::vector<std::size_t>> components, std::size_t version) {
  std::vector<CloneGroup> groups;
  for (auto& comp : components) {
    std::vector<std::size_t> kept;
    for (std::size_t i : comp) {
      bool inside_other = std::any_of(comp.begin(), comp.end(), [&](std::size_t j) {
        return j != i && blocks[i].nested_in(blocks[j]);
      });
      if (!inside_other) kept.push_back(i);
    }
    if (kept.size() < 2) continue;
    CloneGroup g;
    g.version = version;
    for (std::size_t i : kept) g.members.push_back(blocks[i]);
    std::sort(g.members.begin(), g.members.end(), location_less);
    std::vector<Location> locs;
    for (const auto& m : g.members) locs.push_back(m.location());
    g.group_id = make_group_id(version, locs);
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(),
            [](const CloneGroup& a, const CloneGroup& b) {
              return location_less(a.members.front(), b.members.front());
            });
  return groups;
}

}  // namespace

std::vector<CloneGroup> detect_clones(std::span<const CodeBlock> blocks,
                                      const DetectOptions& options,
                                      std::size_t version) {
  if (!(options.theta > 0.0 && options.theta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "theta must be in (0, 1]");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (qualifies(blocks[i], options) && !blocks[i].tokens.empty()) {
      candidates.push_back(i);
    }
  }

  // Intern token texts; order elements by global frequency so that prefixes
  // hold the rarest tokens.
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::uint32_t> frequency;
  std::vector<std::vector<std::uint32_t>> bags(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (const auto& text : blocks[candidates[c]].token_bag) {
      auto [it, inserted] =
          ids.emplace(text, static_cast<std::uint32_t>(frequency.size()));
      if (inserted) frequency.push_back(0);
      ++frequency[it->second];
      bags[c].push_back(it->second);
    }
    std::sort(bags[c].begin(), bags[c].end());
  }
  // Elements are (token id, occurrence) so a multiset becomes a set.
  auto rank_key = [&](std::uint32_t id, std::uint32_t occurrence) {
    return (static_cast<std::uint64_t>(frequency[id]) << 40) |
           (static_cast<std::uint64_t>(id) << 16) | occurrence;
  };
  std::vector<std::vector<std::uint64_t>> ordered(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::uint32_t occurrence = 0;
    for (std::size_t k = 0; k < bags[c].size(); ++k) {
      occurrence = (k > 0 && bags[c][k] == bags[c][k - 1]) ? occurrence + 1 : 0;
      ordered[c].push_back(rank_key(bags[c][k], occurrence));
    }
    std::sort(ordered[c].begin(), ordered[c].end());
  }

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return bags[a].size() < bags[b].size();
  });

  DisjointSets sets(candidates.size());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  std::vector<std::size_t> seen_stamp(candidates.size(), SIZE_MAX);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t x = order[pos];
    const std::size_t size_x = bags[x].size();
    const std::size_t prefix = size_x - required_overlap(size_x, options.theta) + 1;
    for (std::size_t k = 0; k < prefix && k < ordered[x].size(); ++k) {
      auto it = index.find(ordered[x][k]);
      if (it == index.end()) continue;
      for (std::size_t y : it->second) {
        if (seen_stamp[y] == pos) continue;
        seen_stamp[y] = pos;
        // Every indexed block is no larger than x.
        if (bags[y].size() < required_overlap(size_x, options.theta)) continue;
        const std::size_t shared = [&] {
          std::size_t n = 0;
          auto ia = bags[x].begin();
          auto ib = bags[y].begin();
          while (ia != bags[x].end() && ib != bags[y].end()) {
            if (*ia < *ib) ++ia;
            else if (*ib < *ia) ++ib;
            else { ++n; ++ia; ++ib; }
          }
          return n;
        }();
        const double sim = static_cast<double>(shared) /
                           static_cast<double>(std::max(size_x, bags[y].size()));
        if (sim >= options.theta) sets.unite(x, y);
      }
    }
    for (std::size_t k = 0; k < prefix && k < ordered[x].size(); ++k) {
      index[ordered[x][k]].push_back(x);
    }
  }

  std::unordered_map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    by_root[sets.find(c)].push_back(candidates[c]);
  }
  std::vector<std::vector<std::size_t>> components;
  for (auto& [root, members] : by_root) {
    if (members.size() >= 2) components.push_back(std::move(members));
  }
  return finalize_groups(blocks, std::move(components), version);
}

}  // namespace crec
