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

#include "crec/multiset_diff.h"

#include <algorithm>
#include <cstdint>
#include <map>

namespace crec {
namespace {

bool is_type_context_keyword(const Lexeme& l) {
  return l.is_keyword("extends") || l.is_keyword("implements") ||
         l.is_keyword("instanceof") || l.is_keyword("throws") || l.is_keyword("new");
}

bool opens_cast(std::span<const Lexeme> lx, std::size_t open) {
  if (open == 0) return true;
  const Lexeme& before = lx[open - 1];
  if (before.is_identifier()) return false;  // call arguments
  if (before.kind == LexemeKind::kKeyword) {
    return before.is_keyword("return") || before.is_keyword("throw");
  }
  return true;
}

}  // namespace

IdentifierClass classify_identifier(std::span<const Lexeme> lx, std::size_t i) {
  if (i >= lx.size() || !lx[i].is_identifier()) return IdentifierClass::kNone;
  const Lexeme* prev = i > 0 ? &lx[i - 1] : nullptr;
  const Lexeme* next = i + 1 < lx.size() ? &lx[i + 1] : nullptr;
  if (prev && is_type_context_keyword(*prev)) return IdentifierClass::kType;
  if (next && next->is("(")) return IdentifierClass::kMethod;
  if (next && next->is_identifier()) return IdentifierClass::kType;
  if (next && next->is("[") && i + 3 < lx.size() && lx[i + 2].is("]") &&
      lx[i + 3].is_identifier()) {
    return IdentifierClass::kType;
  }
  if (prev && prev->is("(") && next && next->is(")") && i + 2 < lx.size() &&
      opens_cast(lx, i - 1)) {
    const Lexeme& after = lx[i + 2];
    const bool operand = (after.is_token() && after.kind != LexemeKind::kKeyword) ||
                         after.is("(") || after.is_keyword("this") ||
                         after.is_keyword("new");
    if (operand) return IdentifierClass::kType;
  }
  return IdentifierClass::kVariable;
}

std::vector<DiffToken> diff_tokens(std::span<const Lexeme> lexemes) {
  std::vector<DiffToken> out;
  for (std::size_t i = 0; i < lexemes.size(); ++i) {
    if (!lexemes[i].is_token()) continue;
    out.push_back({lexemes[i].text, classify_identifier(lexemes, i)});
  }
  return out;
}

std::vector<const DiffColumn*> TokenMultisetDiff::matched() const {
  std::vector<const DiffColumn*> out;
  for (const auto& c : columns) {
    if (c.matched) out.push_back(&c);
  }
  return out;
}

std::vector<const DiffColumn*> TokenMultisetDiff::differential() const {
  std::vector<const DiffColumn*> out;
  for (const auto& c : columns) {
    if (!c.matched) out.push_back(&c);
  }
  return out;
}

namespace {

// Most frequent text in the column; ties go to the earliest member.
const std::string& consensus(const DiffColumn& column) {
  std::map<std::string_view, std::size_t> counts;
  for (const auto& e : column.entries) {
    if (e) ++counts[e->text];
  }
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  for (const auto& e : column.entries) {
    if (!e) continue;
    const std::size_t c = counts[e->text];
    if (c > best_count) {
      best_count = c;
      best = &e->text;
    }
  }
  return *best;
}

void classify_column(DiffColumn& column) {
  const std::size_t n = column.entries.size();
  std::map<std::string_view, std::size_t> counts;
  bool gap = false;
  for (const auto& e : column.entries) {
    if (!e) {
      gap = true;
      continue;
    }
    ++counts[e->text];
    column.has_variable |= e->cls == IdentifierClass::kVariable;
    column.has_method |= e->cls == IdentifierClass::kMethod;
    column.has_type |= e->cls == IdentifierClass::kType;
  }
  column.matched = !gap && counts.size() == 1;
  if (column.matched) return;
  for (const auto& [text, c] : counts) {
    if (c >= 2 && c < n) column.partially_same = true;
  }
}

}  // namespace

TokenMultisetDiff multiset_diff(std::span<const std::vector<DiffToken>> sequences) {
  TokenMultisetDiff diff;
  if (sequences.empty()) return diff;
  for (const auto& t : sequences[0]) diff.columns.push_back({{t}});

  for (std::size_t s = 1; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    std::vector<const std::string*> cons;
    cons.reserve(diff.columns.size());
    for (const auto& c : diff.columns) cons.push_back(&consensus(c));

    const std::size_t n = cons.size();
    const std::size_t m = seq.size();
    // suffix[i][j] = LCS length of cons[i..] and seq[j..].
    std::vector<std::vector<std::uint32_t>> suffix(
        n + 1, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = m; j-- > 0;) {
        suffix[i][j] = *cons[i] == seq[j].text
                           ? suffix[i + 1][j + 1] + 1
                           : std::max(suffix[i + 1][j], suffix[i][j + 1]);
      }
    }

    // LCS anchors, then a sentinel past both ends.
    std::vector<std::pair<std::size_t, std::size_t>> anchors;
    for (std::size_t i = 0, j = 0; i < n && j < m;) {
      if (*cons[i] == seq[j].text && suffix[i][j] == suffix[i + 1][j + 1] + 1) {
        anchors.emplace_back(i++, j++);
      } else if (suffix[i + 1][j] >= suffix[i][j + 1]) {
        ++i;
      } else {
        ++j;
      }
    }
    anchors.emplace_back(n, m);

    std::vector<DiffColumn> merged;
    merged.reserve(n + m);
    std::size_t i = 0;
    std::size_t j = 0;
    auto take_column = [&](std::optional<DiffToken> entry) {
      DiffColumn c = std::move(diff.columns[i++]);
      c.entries.push_back(std::move(entry));
      merged.push_back(std::move(c));
    };
    auto take_token = [&] {
      DiffColumn c;
      c.entries.assign(s, std::nullopt);
      c.entries.push_back(seq[j++]);
      merged.push_back(std::move(c));
    };
    // Unmatched runs between anchors line up as substitutions first.
    for (const auto& [ai, aj] : anchors) {
      while (i < ai && j < aj) take_column(seq[j++]);
      while (i < ai) take_column(std::nullopt);
      while (j < aj) take_token();
      if (ai < n) take_column(seq[j++]);
    }
    diff.columns = std::move(merged);
  }
  for (auto& c : diff.columns) classify_column(c);
  return diff;
}

}  // namespace crec
