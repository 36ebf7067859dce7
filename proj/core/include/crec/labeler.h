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

#ifndef CREC_LABELER_H_
#define CREC_LABELER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "crec/corpus.h"
#include "crec/genealogy.h"

namespace crec {

inline constexpr double kDefaultLth = 0.4;

enum class Label { kNR, kR };

const char* label_name(Label label);
Label parse_label(std::string_view text);

// A clone at version i paired with its successor at version i + 1.
struct StepClone {
  const CodeBlock* before = nullptr;
  const CodeBlock* after = nullptr;
};

struct CloneEvidence {
  Location before;
  Location after;
  double similarity = 0.0;

  friend bool operator==(const CloneEvidence&, const CloneEvidence&) = default;
};

struct LabelDecision {
  std::string lineage_id;
  Label label = Label::kNR;
  std::optional<std::size_t> version;  // step start i, set for R
  std::vector<CloneEvidence> clones;   // C' members meeting l_th
  std::string method_name;
  std::optional<Location> method_location;

  friend bool operator==(const LabelDecision&, const LabelDecision&) = default;
};

// A method newly invoked by some reduced clones, with its candidate bodies
// (overloads) at version i + 1.
struct ExtractedMethodCandidate {
  std::string name;
  std::size_t first_version = 0;
  std::vector<const CodeBlock*> bodies;
  std::vector<StepClone> clones;  // C'

  bool qualifies() const { return clones.size() >= 2; }
};

// Names called in the block: identifiers directly followed by "(" that are
// not constructor calls.
std::set<std::string> invoked_names(const CodeBlock& block);

// Successors of every entry member at the next version. Stored lineage
// links are used first; the rest are matched by position: same file, same
// enclosing method, same nesting depth, highest share of the successor's
// tokens found in the predecessor.
std::vector<StepClone> step_successors(const LineageEntry& entry,
                                       const std::vector<CloneLink>* links,
                                       const VersionCorpus& here,
                                       const VersionCorpus& next,
                                       double floor = kDefaultLinkFloor);

// Criterion i: clones whose successor has strictly fewer tokens; empty
// unless at least two shrink.
std::vector<StepClone> reduced_clones(std::span<const StepClone> step);

// Criterion ii, grouped by invoked name, sorted by name. Only names with a
// method body at the next version are returned.
std::vector<ExtractedMethodCandidate> new_invocations(
    std::span<const StepClone> reduced, const VersionCorpus& next);

// Criterion iii similarity for one clone against one method body.
double removed_code_similarity(const TokenBag& clone_removed_tokens,
                               const TokenBag& method_body_tokens);

// Maps a version index to its analyzed corpus, or nullptr past the end.
using CorpusLookup = std::function<const VersionCorpus*(std::size_t)>;

LabelDecision label_lineage(const Lineage& lineage, const CorpusLookup& corpora,
                            double l_th = kDefaultLth,
                            double link_floor = kDefaultLinkFloor);

}  // namespace crec

#endif  // CREC_LABELER_H_
