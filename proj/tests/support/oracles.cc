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

#include "support/oracles.h"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

namespace crec::testing {

double oracle_similarity(const CodeBlock& a, const CodeBlock& b) {
  if (a.tokens.empty() || b.tokens.empty()) return 0.0;
  std::map<std::string, int> count;
  for (const auto& t : a.tokens) ++count[t.text];
  std::size_t shared = 0;
  for (const auto& t : b.tokens) {
    auto it = count.find(t.text);
    if (it != count.end() && it->second > 0) {
      --it->second;
      ++shared;
    }
  }
  return static_cast<double>(shared) /
         static_cast<double>(std::max(a.tokens.size(), b.tokens.size()));
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

bool inside(const CodeBlock& inner, const CodeBlock& outer) {
  if (inner.path != outer.path) return false;
  if (inner.start_line == outer.start_line && inner.end_line == outer.end_line) {
    return inner.tokens.size() < outer.tokens.size();
  }
  return outer.start_line <= inner.start_line && inner.end_line <= outer.end_line;
}

}  // namespace

GroupSet oracle_clone_groups(std::span<const CodeBlock> blocks,
                             const DetectOptions& options) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const bool tokens_ok = blocks[i].tokens.size() >= options.min_tokens;
    const bool lines_ok = blocks[i].end_line - blocks[i].start_line + 1 >= options.min_lines;
    const bool ok = options.disjunctive ? (tokens_ok || lines_ok) : (tokens_ok && lines_ok);
    if (ok && !blocks[i].tokens.empty()) eligible.push_back(i);
  }
  std::vector<std::size_t> parent(blocks.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t x = 0; x < eligible.size(); ++x) {
    for (std::size_t y = x + 1; y < eligible.size(); ++y) {
      if (oracle_similarity(blocks[eligible[x]], blocks[eligible[y]]) >= options.theta) {
        parent[find_root(parent, eligible[x])] = find_root(parent, eligible[y]);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i : eligible) components[find_root(parent, i)].push_back(i);
  GroupSet out;
  for (const auto& [root, members] : components) {
    std::vector<Location> kept;
    for (std::size_t i : members) {
      bool nested = false;
      for (std::size_t j : members) {
        if (j != i && inside(blocks[i], blocks[j])) nested = true;
      }
      if (!nested) kept.push_back(blocks[i].location());
    }
    if (kept.size() < 2) continue;
    std::sort(kept.begin(), kept.end());
    out.insert(kept);
  }
  return out;
}

GroupSet group_set(std::span<const CloneGroup> groups) {
  GroupSet out;
  for (const auto& g : groups) {
    std::vector<Location> members;
    for (const auto& m : g.members) members.push_back(m.location());
    std::sort(members.begin(), members.end());
    out.insert(members);
  }
  return out;
}

std::size_t oracle_levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

double stump_error(const DecisionStump& stump, std::span<const LabeledExample> examples,
                   std::span<const double> weights) {
  double err = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const double x = examples[i].vector.at(stump.feature_index);
    const bool le = x <= stump.threshold;
    const int predicted =
        stump.polarity == Polarity::kLessEqualIsOne ? (le ? 1 : 0) : (le ? 0 : 1);
    if (predicted != examples[i].label) err += weights[i];
  }
  return err;
}

double oracle_stump_error(std::span<const LabeledExample> examples,
                          std::span<const double> weights, const FeatureMask& mask) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    if (!mask.test(k - 1)) continue;
    std::vector<double> thresholds = {-std::numeric_limits<double>::infinity()};
    for (const auto& e : examples) thresholds.push_back(e.vector.at(k));
    for (double t : thresholds) {
      for (Polarity p : {Polarity::kLessEqualIsOne, Polarity::kGreaterIsOne}) {
        DecisionStump s;
        s.feature_index = k;
        s.threshold = t;
        s.polarity = p;
        best = std::min(best, stump_error(s, examples, weights));
      }
    }
  }
  return best;
}

}  // namespace crec::testing
