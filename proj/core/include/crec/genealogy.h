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

#ifndef CREC_GENEALOGY_H_
#define CREC_GENEALOGY_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crec/clone_detector.h"

namespace crec {

inline constexpr double kDefaultLinkFloor = 0.5;

// A clone at version i matched to its successor at version i + 1.
struct CloneLink {
  Location from;
  Location to;
  double score = 0.0;

  friend bool operator==(const CloneLink&, const CloneLink&) = default;
};

// Greedy one-to-one matching between clones of consecutive versions.
// Candidates must share a file path and score at least floor; pairs are
// taken by descending similarity, then smallest start-line distance, then
// location order.
std::vector<CloneLink> link_clones(std::span<const CloneGroup> at_version,
                                   std::span<const CloneGroup> at_next,
                                   double floor = kDefaultLinkFloor);

std::vector<CloneLink> link_blocks(std::span<const CodeBlock* const> from,
                                   std::span<const CodeBlock* const> to,
                                   double floor = kDefaultLinkFloor);

std::size_t matched_members(const CloneGroup& a, const CloneGroup& b,
                            std::span<const CloneLink> links);

// Majority rule against the earlier group: at least ceil(|a| / 2) members
// of a link into b.
bool link_groups(const CloneGroup& a, const CloneGroup& b,
                 std::span<const CloneLink> links);

enum class LineageEnd { kAlive, kDissolved };

struct LineageEntry {
  std::size_t version = 0;
  std::string group_id;
  std::vector<Location> members;
  std::vector<std::size_t> token_counts;  // parallel to members

  friend bool operator==(const LineageEntry&, const LineageEntry&) = default;
};

struct Lineage {
  std::string id;
  std::vector<LineageEntry> groups;
  // links[k] joins groups[k] to groups[k + 1].
  std::vector<std::vector<CloneLink>> links;
  LineageEnd end_state = LineageEnd::kDissolved;

  friend bool operator==(const Lineage&, const Lineage&) = default;
};

LineageEntry make_entry(const CloneGroup& group);

std::string make_lineage_id(std::size_t first_version,
                            const std::string& first_group_id);

// Stitches per-version groups into maximal lineages. per_version[v] holds
// every group detected at sampled version v. When several groups at v
// claim the same successor, the one with more matched members keeps it
// (ties: smaller group_id) and the others end.
std::vector<Lineage> build_genealogies(
    const std::vector<std::vector<CloneGroup>>& per_version,
    double floor = kDefaultLinkFloor);

// Follows member links backwards from groups[entry]: for each member of that
// entry, its location at every earlier version reachable through links.
std::vector<std::map<std::size_t, Location>> track_members(
    const Lineage& lineage, std::size_t entry);

}  // namespace crec

#endif  // CREC_GENEALOGY_H_
