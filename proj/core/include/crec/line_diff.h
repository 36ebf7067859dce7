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
#ifndef CREC_LINE_DIFF_H_
#define CREC_LINE_DIFF_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace crec {

// 1-based inclusive line range.
struct LineRange {
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool contains(int line) const { return line >= start && line <= end; }
  bool overlaps(const LineRange& other) const {
    return start <= other.end && other.start <= end;
  }
  friend bool operator==(const LineRange&, const LineRange&) = default;
  friend auto operator<=>(const LineRange&, const LineRange&) = default;
};

// Ranges of an old text that were removed and of a new text that were added
// under a minimal line-level edit script.
struct LineDiff {
  std::vector<LineRange> removed;
  std::vector<LineRange> added;

  bool empty() const { return removed.empty() && added.empty(); }
  std::int64_t removed_lines() const;
  std::int64_t added_lines() const;
  std::int64_t changed_lines() const { return removed_lines() + added_lines(); }
  friend bool operator==(const LineDiff&, const LineDiff&) = default;
};

// Splits on '\n'. A trailing newline does not produce an empty final line.
std::vector<std::string_view> split_lines(std::string_view text);

// Minimal edit script between two line sequences (Myers, linear space).
// The result is symmetric: diff_lines(b, a) swaps removed and added.
LineDiff diff_lines(std::span<const std::string_view> old_lines,
                    std::span<const std::string_view> new_lines);

LineDiff diff_text(std::string_view old_text, std::string_view new_text);

bool any_overlap(std::span<const LineRange> ranges, const LineRange& range);

}  // namespace crec

#endif  // CREC_LINE_DIFF_H_
