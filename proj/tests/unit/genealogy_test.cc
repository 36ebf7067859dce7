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

#include "crec/genealogy.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/generators.h"

namespace crec {
namespace {

using testing::block_text;

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Replaces the last k words with fresh ones.
std::vector<std::string> edited(std::vector<std::string> words, int k,
                                const std::string& tag) {
  for (int i = 0; i < k; ++i) words[words.size() - 1 - i] = tag + std::to_string(i);
  return words;
}

CodeBlock at(const std::string& path, int line, const std::vector<std::string>& words) {
  return block_from_text(path, block_text(words), line);
}

CloneGroup group(std::size_t version, std::vector<CodeBlock> members) {
  CloneGroup g;
  g.version = version;
  g.members = std::move(members);
  std::vector<Location> locs;
  for (const auto& m : g.members) locs.push_back(m.location());
  g.group_id = make_group_id(version, locs);
  return g;
}

TEST(LinkClones, IdentityLinksWithScoreOne) {
  const auto w = numbered("t", 40);
  const std::vector<CloneGroup> a = {group(0, {at("A.java", 1, w), at("B.java", 1, w)})};
  const std::vector<CloneGroup> b = {group(1, {at("A.java", 1, w), at("B.java", 1, w)})};
  const auto links = link_clones(a, b);
  ASSERT_EQ(links.size(), 2u);
  for (const auto& l : links) {
    EXPECT_EQ(l.score, 1.0);
    EXPECT_EQ(l.from, l.to);
  }
}

TEST(LinkClones, DeletedFileHasNoSuccessor) {
  const auto w = numbered("t", 40);
  const std::vector<CloneGroup> a = {group(0, {at("A.java", 1, w), at("B.java", 1, w)})};
  const std::vector<CloneGroup> b = {group(1, {at("B.java", 1, w), at("C.java", 1, w)})};
  const auto links = link_clones(a, b);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].from.path, "B.java");
}

TEST(LinkClones, HigherScoreWins) {
  const auto w = numbered("t", 100);
  const CodeBlock from = at("A.java", 1, w);
  const CodeBlock near = at("A.java", 50, edited(w, 10, "n"));  // 0.9
  const CodeBlock far = at("A.java", 2, edited(w, 30, "f"));    // 0.7
  const CodeBlock* f[] = {&from};
  const CodeBlock* t[] = {&far, &near};
  const auto links = link_blocks(f, t);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].to, near.location());
  EXPECT_DOUBLE_EQ(links[0].score, 0.9);
}

TEST(LinkClones, TieGoesToNearerStartLine) {
  const auto w = numbered("t", 40);
  const CodeBlock from = at("A.java", 30, w);
  const CodeBlock farther = at("A.java", 1, w);
  const CodeBlock nearer = at("A.java", 40, w);
  const CodeBlock* f[] = {&from};
  const CodeBlock* t[] = {&farther, &nearer};
  const auto links = link_blocks(f, t);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].to, nearer.location());
}

TEST(LinkClones, FloorDiscardsWeakLinks) {
  const auto w = numbered("t", 100);
  const CodeBlock from = at("A.java", 1, w);
  const CodeBlock weak = at("A.java", 1, edited(w, 60, "x"));  // 0.4
  const CodeBlock* f[] = {&from};
  const CodeBlock* t[] = {&weak};
  EXPECT_TRUE(link_blocks(f, t).empty());
  EXPECT_EQ(link_blocks(f, t, 0.3).size(), 1u);
}

// Best total score over all partial one-to-one matchings.
double exhaustive_best(const std::vector<std::vector<double>>& score, std::size_t i,
                       std::vector<bool>& used) {
  if (i == score.size()) return 0.0;
  double best = exhaustive_best(score, i + 1, used);
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (used[j] || score[i][j] < 0) continue;
    used[j] = true;
    best = std::max(best, score[i][j] + exhaustive_best(score, i + 1, used));
    used[j] = false;
  }
  return best;
}

TEST(LinkClones, GreedyAgainstExhaustiveMatching) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(6), m = 1 + rng.below(6);
    const auto base = testing::random_words(rng, 30, 12);
    std::vector<CodeBlock> from, to;
    for (std::size_t i = 0; i < n; ++i) {
      from.push_back(at("A.java", static_cast<int>(1 + 20 * i),
                        testing::mutate(rng, base, 0.5 * rng.unit(), 12)));
    }
    for (std::size_t j = 0; j < m; ++j) {
      to.push_back(at("A.java", static_cast<int>(1 + 20 * j),
                      testing::mutate(rng, base, 0.5 * rng.unit(), 12)));
    }
    std::vector<const CodeBlock*> fp, tp;
    for (const auto& b : from) fp.push_back(&b);
    for (const auto& b : to) tp.push_back(&b);
    const auto links = link_blocks(fp, tp);

    std::vector<std::vector<double>> score(n, std::vector<double>(m, -1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const double s = similarity(from[i], to[j]);
        if (s >= kDefaultLinkFloor) score[i][j] = s;
      }
    }
    std::vector<bool> used(m, false);
    const double best = exhaustive_best(score, 0, used);
    double greedy = 0.0;
    std::set<Location> seen_from, seen_to;
    for (const auto& l : links) {
      EXPECT_TRUE(seen_from.insert(l.from).second);
      EXPECT_TRUE(seen_to.insert(l.to).second);
      EXPECT_GE(l.score, kDefaultLinkFloor);
      greedy += l.score;
    }
    // Greedy by descending weight is a 1/2-approximation and maximal.
    EXPECT_GE(greedy + 1e-12, 0.5 * best);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (score[i][j] < 0) continue;
        EXPECT_TRUE(seen_from.contains(from[i].location()) ||
                    seen_to.contains(to[j].location()));
      }
    }
  }
}

TEST(LinkGroups, MajorityRule) {
  const auto w = numbered("t", 40);
  std::vector<CodeBlock> four, two;
  for (int i = 0; i < 4; ++i) four.push_back(at("F" + std::to_string(i) + ".java", 1, w));
  const CloneGroup g4 = group(0, four);
  const CloneGroup next = group(1, four);
  auto links_for = [&](int k) {
    std::vector<CloneLink> links;
    for (int i = 0; i < k; ++i) links.push_back({four[i].location(), four[i].location(), 1.0});
    return links;
  };
  EXPECT_TRUE(link_groups(g4, next, links_for(3)));
  EXPECT_TRUE(link_groups(g4, next, links_for(2)));
  EXPECT_FALSE(link_groups(g4, next, links_for(1)));
  const CloneGroup g2 = group(0, {four[0], four[1]});
  EXPECT_TRUE(link_groups(g2, next, links_for(1)));
}

// Fig. 2: G1 = {A, B, C, D}, G2 = {A', B', C'}, G3 = {A'', B''}.
TEST(BuildGenealogies, ExemplarLineage) {
  const auto w = numbered("t", 60);
  auto v0 = [&](const std::string& p) { return at(p, 10, w); };
  auto v1 = [&](const std::string& p) { return at(p, 10, edited(w, 4, "one")); };
  auto v2 = [&](const std::string& p) { return at(p, 10, edited(w, 8, "two")); };
  std::vector<std::vector<CloneGroup>> per_version = {
      {group(0, {v0("A.java"), v0("B.java"), v0("C.java"), v0("D.java")})},
      {group(1, {v1("A.java"), v1("B.java"), v1("C.java")})},
      {group(2, {v2("A.java"), v2("B.java")})},
  };
  const auto lineages = build_genealogies(per_version);
  ASSERT_EQ(lineages.size(), 1u);
  const auto& l = lineages[0];
  ASSERT_EQ(l.groups.size(), 3u);
  EXPECT_EQ(l.links[0].size(), 3u);
  EXPECT_EQ(l.links[1].size(), 2u);
  EXPECT_EQ(l.end_state, LineageEnd::kAlive);
  EXPECT_EQ(l.id, make_lineage_id(0, per_version[0][0].group_id));

  const auto tracks = track_members(l, 2);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].size(), 3u);
  EXPECT_EQ(tracks[0].at(0).path, "A.java");
}

TEST(BuildGenealogies, SingleVersionGroupDissolves) {
  const auto w = numbered("t", 40);
  std::vector<std::vector<CloneGroup>> per_version = {
      {group(0, {at("A.java", 1, w), at("B.java", 1, w)})}, {}};
  const auto lineages = build_genealogies(per_version);
  ASSERT_EQ(lineages.size(), 1u);
  EXPECT_EQ(lineages[0].groups.size(), 1u);
  EXPECT_EQ(lineages[0].end_state, LineageEnd::kDissolved);
}

TEST(BuildGenealogies, StableGroupSpansAllVersions) {
  const auto w = numbered("t", 40);
  std::vector<std::vector<CloneGroup>> per_version;
  for (std::size_t v = 0; v < 5; ++v) {
    per_version.push_back({group(v, {at("A.java", 1, w), at("B.java", 1, w)})});
  }
  const auto lineages = build_genealogies(per_version);
  ASSERT_EQ(lineages.size(), 1u);
  EXPECT_EQ(lineages[0].groups.size(), 5u);
  EXPECT_EQ(lineages[0].end_state, LineageEnd::kAlive);
}

TEST(BuildGenealogies, MergeKeepsStrongerPredecessor) {
  const auto w = numbered("t", 40);
  auto b = [&](const std::string& p) { return at(p, 1, w); };
  std::vector<std::vector<CloneGroup>> per_version = {
      {group(0, {b("A.java"), b("B.java"), b("C.java")}), group(0, {b("D.java"), b("E.java")})},
      {group(1, {b("A.java"), b("B.java"), b("C.java"), b("D.java"), b("E.java")})},
  };
  const auto lineages = build_genealogies(per_version);
  ASSERT_EQ(lineages.size(), 2u);
  std::size_t continued = 0;
  for (const auto& l : lineages) {
    if (l.groups.size() == 2) {
      ++continued;
      EXPECT_EQ(l.groups[0].members.size(), 3u);
    } else {
      EXPECT_EQ(l.end_state, LineageEnd::kDissolved);
    }
  }
  EXPECT_EQ(continued, 1u);
}

// Random evolving corpora: blocks keep their path and line and drift.
std::vector<std::vector<CloneGroup>> random_history(Rng& rng) {
  const std::size_t versions = 2 + rng.below(5);
  std::vector<std::vector<std::string>> words;
  const auto seed = testing::random_words(rng, 40, 30);
  for (int i = 0; i < 12; ++i) words.push_back(testing::mutate(rng, seed, 0.4 * rng.unit(), 30));
  std::vector<std::vector<CloneGroup>> per_version;
  for (std::size_t v = 0; v < versions; ++v) {
    std::vector<CodeBlock> blocks;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (rng.unit() < 0.1) continue;  // temporarily deleted
      blocks.push_back(at("F" + std::to_string(i % 3) + ".java",
                          static_cast<int>(1 + 20 * (i / 3)), words[i]));
    }
    per_version.push_back(detect_clones(blocks, {}, v));
    for (auto& w : words) w = testing::mutate(rng, w, 0.1 * rng.unit(), 30);
  }
  return per_version;
}

TEST(BuildGenealogies, PartitionAndMajorityProperties) {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const auto per_version = random_history(rng);
    const auto lineages = build_genealogies(per_version);
    std::map<std::pair<std::size_t, std::string>, int> seen;
    for (const auto& l : lineages) {
      ASSERT_EQ(l.links.size() + 1, l.groups.size());
      for (std::size_t k = 0; k < l.groups.size(); ++k) {
        ++seen[{l.groups[k].version, l.groups[k].group_id}];
        if (k == 0) continue;
        EXPECT_EQ(l.groups[k].version, l.groups[k - 1].version + 1);
        const std::size_t need = (l.groups[k - 1].members.size() + 1) / 2;
        EXPECT_GE(l.links[k - 1].size(), need);
      }
      const bool alive = l.groups.back().version + 1 == per_version.size();
      EXPECT_EQ(l.end_state == LineageEnd::kAlive, alive);
    }
    std::size_t total = 0;
    for (const auto& groups : per_version) {
      for (const auto& g : groups) {
        EXPECT_EQ((seen[{g.version, g.group_id}]), 1);
        ++total;
      }
    }
    EXPECT_EQ(seen.size(), total);
    EXPECT_EQ(build_genealogies(per_version), lineages);
  }
}

}  // namespace
}  // namespace crec
