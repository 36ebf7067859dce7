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

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>

namespace crec {

std::vector<CloneLink> link_blocks(std::span<const CodeBlock* const> from,
                                   std::span<const CodeBlock* const> to,
                                   double floor) {
  struct Candidate {
    std::size_t from;
    std::size_t to;
    double score;
    int distance;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (from[i]->path != to[j]->path) continue;
      const double score = similarity(*from[i], *to[j]);
      if (score < floor) continue;
      candidates.push_back(
          {i, j, score, std::abs(from[i]->start_line - to[j]->start_line)});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.distance != b.distance) return a.distance < b.distance;
              auto la = from[a.from]->location();
              auto lb = from[b.from]->location();
              if (la != lb) return la < lb;
              return to[a.to]->location() < to[b.to]->location();
            });
  std::vector<bool> from_used(from.size(), false);
  std::vector<bool> to_used(to.size(), false);
  std::vector<CloneLink> links;
  for (const auto& c : candidates) {
    if (from_used[c.from] || to_used[c.to]) continue;
    from_used[c.from] = true;
    to_used[c.to] = true;
    links.push_back({from[c.from]->location(), to[c.to]->location(), c.score});
  }
  std::sort(links.begin(), links.end(), [](const CloneLink& a, const CloneLink& b) {
    return a.from < b.from;
  });
  return links;
}

std::vector<CloneLink> link_clones(std::span<const CloneGroup> at_version,
                                   std::span<const CloneGroup> at_next,
                                   double floor) {
  std::vector<const CodeBlock*> from;
  std::vector<const CodeBlock*> to;
  for (const auto& g : at_version) {
    for (const auto& m : g.members) from.push_back(&m);
  }
  for (const auto& g : at_next) {
    for (const auto& m : g.members) to.push_back(&m);
  }
  return link_blocks(from, to, floor);
}

std::size_t matched_members(const CloneGroup& a, const CloneGroup& b,
                            std::span<const CloneLink> links) {
  std::set<Location> in_a;
  std::set<Location> in_b;
  for (const auto& m : a.members) in_a.insert(m.location());
  for (const auto& m : b.members) in_b.insert(m.location());
  std::size_t n = 0;
  for (const auto& link : links) {
    if (in_a.contains(link.from) && in_b.contains(link.to)) ++n;
  }
  return n;
}

bool link_groups(const CloneGroup& a, const CloneGroup& b,
                 std::span<const CloneLink> links) {
  const std::size_t needed = (a.members.size() + 1) / 2;
  return needed > 0 && matched_members(a, b, links) >= needed;
}

LineageEntry make_entry(const CloneGroup& group) {
  LineageEntry entry;
  entry.version = group.version;
  entry.group_id = group.group_id;
  for (const auto& m : group.members) {
    entry.members.push_back(m.location());
    entry.token_counts.push_back(m.tokens.size());
  }
  return entry;
}

std::string make_lineage_id(std::size_t first_version,
                            const std::string& first_group_id) {
  return "L" + std::to_string(first_version) + "-" + first_group_id;
}

std::vector<Lineage> build_genealogies(
    const std::vector<std::vector<CloneGroup>>& per_version, double floor) {
  const std::size_t versions = per_version.size();
  // successor[v][a] = index of the group at v + 1 that group a continues as.
  std::vector<std::vector<std::optional<std::size_t>>> successor(versions);
  std::vector<std::vector<bool>> has_predecessor(versions);
  std::vector<std::vector<CloneLink>> step_links(versions);
  for (std::size_t v = 0; v < versions; ++v) {
    successor[v].assign(per_version[v].size(), std::nullopt);
    has_predecessor[v].assign(per_version[v].size(), false);
  }
  for (std::size_t v = 0; v + 1 < versions; ++v) {
    const auto& here = per_version[v];
    const auto& next = per_version[v + 1];
    step_links[v] = link_clones(here, next, floor);

    struct Claim {
      std::size_t from;
      std::size_t to;
      std::size_t count;
    };
    std::vector<Claim> claims;
    for (std::size_t a = 0; a < here.size(); ++a) {
      std::optional<std::size_t> best;
      std::size_t best_count = 0;
      for (std::size_t b = 0; b < next.size(); ++b) {
        const std::size_t count = matched_members(here[a], next[b], step_links[v]);
        if (count == 0) continue;
        if (!best || count > best_count ||
            (count == best_count && next[b].group_id < next[*best].group_id)) {
          best = b;
          best_count = count;
        }
      }
      if (best && link_groups(here[a], next[*best], step_links[v])) {
        claims.push_back({a, *best, best_count});
      }
    }
    std::sort(claims.begin(), claims.end(), [&](const Claim& x, const Claim& y) {
      if (x.count != y.count) return x.count > y.count;
      return here[x.from].group_id < here[y.from].group_id;
    });
    for (const auto& c : claims) {
      if (has_predecessor[v + 1][c.to]) continue;
      has_predecessor[v + 1][c.to] = true;
      successor[v][c.from] = c.to;
    }
  }

  std::vector<Lineage> lineages;
  for (std::size_t v = 0; v < versions; ++v) {
    for (std::size_t g = 0; g < per_version[v].size(); ++g) {
      if (has_predecessor[v][g]) continue;
      Lineage lineage;
      lineage.id = make_lineage_id(v, per_version[v][g].group_id);
      std::size_t cur_v = v;
      std::size_t cur_g = g;
      lineage.groups.push_back(make_entry(per_version[cur_v][cur_g]));
      while (successor[cur_v][cur_g]) {
        const std::size_t next_g = *successor[cur_v][cur_g];
        const CloneGroup& a = per_version[cur_v][cur_g];
        const CloneGroup& b = per_version[cur_v + 1][next_g];
        std::set<Location> in_a;
        std::set<Location> in_b;
        for (const auto& m : a.members) in_a.insert(m.location());
        for (const auto& m : b.members) in_b.insert(m.location());
        std::vector<CloneLink> links;
        for (const auto& link : step_links[cur_v]) {
          if (in_a.contains(link.from) && in_b.contains(link.to)) links.push_back(link);
        }
        lineage.links.push_back(std::move(links));
        lineage.groups.push_back(make_entry(b));
        cur_v += 1;
        cur_g = next_g;
      }
      lineage.end_state = (cur_v + 1 == versions) ? LineageEnd::kAlive
                                                  : LineageEnd::kDissolved;
      lineages.push_back(std::move(lineage));
    }
  }
  std::sort(lineages.begin(), lineages.end(), [](const Lineage& a, const Lineage& b) {
    if (a.groups.front().version != b.groups.front().version) {
      return a.groups.front().version < b.groups.front().version;
    }
    return a.groups.front().group_id < b.groups.front().group_id;
  });
  return lineages;
}

std::vector<std::map<std::size_t, Location>> track_members(
    const Lineage& lineage, std::size_t entry) {
  const LineageEntry& target = lineage.groups.at(entry);
  std::vector<std::map<std::size_t, Location>> tracks(target.members.size());
  for (std::size_t m = 0; m < target.members.size(); ++m) {
    Location current = target.members[m];
    tracks[m].emplace(target.version, current);
    for (std::size_t k = entry; k-- > 0;) {
      const auto& links = lineage.links[k];
      auto it = std::find_if(links.begin(), links.end(),
                             [&](const CloneLink& l) { return l.to == current; });
      if (it == links.end()) break;
      current = it->from;
      tracks[m].emplace(lineage.groups[k].version, current);
    }
  }
  return tracks;
}

}  // namespace crec
