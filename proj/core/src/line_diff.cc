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
#include "crec/line_diff.h"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace crec {
namespace {

class MyersDiff {
 public:
  MyersDiff(std::span<const int> a, std::span<const int> b)
      : a_(a), b_(b), a_gone_(a.size(), false), b_new_(b.size(), false) {}

  void run() { compare(0, static_cast<int>(a_.size()), 0,
                       static_cast<int>(b_.size())); }

  const std::vector<bool>& deleted() const { return a_gone_; }
  const std::vector<bool>& inserted() const { return b_new_; }

 private:
  void compare(int a_lo, int a_hi, int b_lo, int b_hi) {
    while (a_lo < a_hi && b_lo < b_hi && a_[a_lo] == b_[b_lo]) {
      ++a_lo;
      ++b_lo;
    }
    while (a_lo < a_hi && b_lo < b_hi && a_[a_hi - 1] == b_[b_hi - 1]) {
      --a_hi;
      --b_hi;
    }
    if (a_lo == a_hi) {
      for (int j = b_lo; j < b_hi; ++j) b_new_[j] = true;
      return;
    }
    if (b_lo == b_hi) {
      for (int i = a_lo; i < a_hi; ++i) a_gone_[i] = true;
      return;
    }
    int x = 0, y = 0;
    if (!middle_snake(a_lo, a_hi, b_lo, b_hi, x, y)) {
      for (int i = a_lo; i < a_hi; ++i) a_gone_[i] = true;
      for (int j = b_lo; j < b_hi; ++j) b_new_[j] = true;
      return;
    }
    compare(a_lo, a_lo + x, b_lo, b_lo + y);
    compare(a_lo + x, a_hi, b_lo + y, b_hi);
  }

  // Finds a split point (x, y) on an optimal edit path by running the
  // greedy search forward and backward until the frontiers meet.
  bool middle_snake(int a_lo, int a_hi, int b_lo, int b_hi, int& split_x,
                    int& split_y) {
    const int n = a_hi - a_lo;
    const int m = b_hi - b_lo;
    const int max_d = (n + m + 1) / 2;
    const int v_offset = max_d;
    const int v_length = 2 * max_d + 2;
    std::vector<int> v1(static_cast<std::size_t>(v_length), -1);
    std::vector<int> v2(static_cast<std::size_t>(v_length), -1);
    v1[static_cast<std::size_t>(v_offset + 1)] = 0;
    v2[static_cast<std::size_t>(v_offset + 1)] = 0;
    const int delta = n - m;
    const bool front = (delta % 2 != 0);
    int k1start = 0, k1end = 0, k2start = 0, k2end = 0;
    auto at = [](std::vector<int>& v, int i) -> int& {
      return v[static_cast<std::size_t>(i)];
    };
    for (int d = 0; d < max_d; ++d) {
      for (int k1 = -d + k1start; k1 <= d - k1end; k1 += 2) {
        const int k1_offset = v_offset + k1;
        int x1;
        if (k1 == -d ||
            (k1 != d && at(v1, k1_offset - 1) < at(v1, k1_offset + 1))) {
          x1 = at(v1, k1_offset + 1);
        } else {
          x1 = at(v1, k1_offset - 1) + 1;
        }
        int y1 = x1 - k1;
        while (x1 < n && y1 < m && a_[a_lo + x1] == b_[b_lo + y1]) {
          ++x1;
          ++y1;
        }
        at(v1, k1_offset) = x1;
        if (x1 > n) {
          k1end += 2;
        } else if (y1 > m) {
          k1start += 2;
        } else if (front) {
          const int k2_offset = v_offset + delta - k1;
          if (k2_offset >= 0 && k2_offset < v_length &&
              at(v2, k2_offset) != -1) {
            const int x2 = n - at(v2, k2_offset);
            if (x1 >= x2) {
              split_x = x1;
              split_y = y1;
              return true;
            }
          }
        }
      }
      for (int k2 = -d + k2start; k2 <= d - k2end; k2 += 2) {
        const int k2_offset = v_offset + k2;
        int x2;
        if (k2 == -d ||
            (k2 != d && at(v2, k2_offset - 1) < at(v2, k2_offset + 1))) {
          x2 = at(v2, k2_offset + 1);
        } else {
          x2 = at(v2, k2_offset - 1) + 1;
        }
        int y2 = x2 - k2;
        while (x2 < n && y2 < m &&
               a_[a_lo + n - x2 - 1] == b_[b_lo + m - y2 - 1]) {
          ++x2;
          ++y2;
        }
        at(v2, k2_offset) = x2;
        if (x2 > n) {
          k2end += 2;
        } else if (y2 > m) {
          k2start += 2;
        } else if (!front) {
          const int k1_offset = v_offset + delta - k2;
          if (k1_offset >= 0 && k1_offset < v_length &&
              at(v1, k1_offset) != -1) {
            const int x1 = at(v1, k1_offset);
            const int y1 = v_offset + x1 - k1_offset;
            if (x1 >= n - x2) {
              split_x = x1;
              split_y = y1;
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  std::span<const int> a_;
  std::span<const int> b_;
  std::vector<bool> a_gone_;
  std::vector<bool> b_new_;
};

std::vector<LineRange> to_ranges(const std::vector<bool>& marks) {
  std::vector<LineRange> out;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (!marks[i]) continue;
    const int line = static_cast<int>(i) + 1;
    if (!out.empty() && out.back().end == line - 1) {
      out.back().end = line;
    } else {
      out.push_back({line, line});
    }
  }
  return out;
}

std::int64_t total_length(const std::vector<LineRange>& ranges) {
  std::int64_t n = 0;
  for (const auto& r : ranges) n += r.length();
  return n;
}

}  // namespace

std::int64_t LineDiff::removed_lines() const { return total_length(removed); }
std::int64_t LineDiff::added_lines() const { return total_length(added); }

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

LineDiff diff_lines(std::span<const std::string_view> old_lines,
                    std::span<const std::string_view> new_lines) {
  // Canonical orientation keeps equal-cost tie-breaking identical under swap.
  if (std::lexicographical_compare(new_lines.begin(), new_lines.end(),
                                   old_lines.begin(), old_lines.end())) {
    LineDiff swapped = diff_lines(new_lines, old_lines);
    std::swap(swapped.removed, swapped.added);
    return swapped;
  }
  std::unordered_map<std::string_view, int> ids;
  auto intern = [&](std::span<const std::string_view> lines) {
    std::vector<int> out;
    out.reserve(lines.size());
    for (auto line : lines) {
      auto [it, inserted] = ids.emplace(line, static_cast<int>(ids.size()));
      out.push_back(it->second);
    }
    return out;
  };
  const std::vector<int> a = intern(old_lines);
  const std::vector<int> b = intern(new_lines);
  MyersDiff diff(a, b);
  diff.run();
  return LineDiff{to_ranges(diff.deleted()), to_ranges(diff.inserted())};
}

LineDiff diff_text(std::string_view old_text, std::string_view new_text) {
  const auto a = split_lines(old_text);
  const auto b = split_lines(new_text);
  return diff_lines(a, b);
}

bool any_overlap(std::span<const LineRange> ranges, const LineRange& range) {
  return std::any_of(ranges.begin(), ranges.end(),
                     [&](const LineRange& r) { return r.overlaps(range); });
}

}  // namespace crec
