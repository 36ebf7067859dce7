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

#include "crec/labeler.h"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "crec/common.h"

namespace crec {

const char* label_name(Label label) { return label == Label::kR ? "R" : "NR"; }

Label parse_label(std::string_view text) {
  if (text == "R") return Label::kR;
  if (text == "NR") return Label::kNR;
  throw Error(ErrorCode::kParseError, "unknown label '" + std::string(text) + "'");
}

std::set<std::string> invoked_names(const CodeBlock& block) {
  std::set<std::string> names;
  auto lx = block.lexemes();
  for (std::size_t i = 0; i + 1 < lx.size(); ++i) {
    if (!lx[i].is_identifier() || !lx[i + 1].is("(")) continue;
    if (i > 0 && lx[i - 1].is_keyword("new")) continue;
    names.insert(lx[i].text);
  }
  return names;
}

namespace {

bool same_position(const CodeBlock& a, const CodeBlock& b) {
  return a.path == b.path && a.enclosing_method_name == b.enclosing_method_name &&
         a.is_method_body == b.is_method_body && a.depth == b.depth;
}

}  // namespace

std::vector<StepClone> step_successors(const LineageEntry& entry,
                                       const std::vector<CloneLink>* links,
                                       const VersionCorpus& here,
                                       const VersionCorpus& next, double floor) {
  std::vector<StepClone> out;
  std::vector<const CodeBlock*> unmatched;
  std::set<const CodeBlock*> taken;
  for (const auto& loc : entry.members) {
    const CodeBlock* before = here.find_block(loc);
    if (!before) continue;
    const CodeBlock* after = nullptr;
    if (links) {
      for (const auto& link : *links) {
        if (link.from == loc) {
          after = next.find_block(link.to);
          break;
        }
      }
    }
    if (after && taken.insert(after).second) {
      out.push_back({before, after});
    } else {
      unmatched.push_back(before);
    }
  }

  struct Candidate {
    std::size_t member;
    const CodeBlock* block;
    double containment;
    std::size_t shared;
    int distance;
  };
  std::vector<Candidate> candidates;
  for (std::size_t m = 0; m < unmatched.size(); ++m) {
    const CodeBlock& before = *unmatched[m];
    for (const CodeBlock* b : next.blocks_in(before.path)) {
      if (taken.contains(b) || !same_position(before, *b)) continue;
      const std::size_t shared = bag_intersection(b->token_bag, before.token_bag);
      const double containment =
          b->token_bag.empty() ? 0.0
                               : static_cast<double>(shared) / b->token_bag.size();
      // A method body keeps its identity through its name even when almost
      // all of its tokens are replaced.
      if (containment < floor && !before.is_method_body) continue;
      candidates.push_back(
          {m, b, containment, shared, std::abs(b->start_line - before.start_line)});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) {
              if (a.containment != b.containment) return a.containment > b.containment;
              if (a.shared != b.shared) return a.shared > b.shared;
              if (a.distance != b.distance) return a.distance < b.distance;
              if (a.member != b.member) return a.member < b.member;
              return a.block->location() < b.block->location();
            });
  std::vector<bool> member_done(unmatched.size(), false);
  for (const auto& c : candidates) {
    if (member_done[c.member] || taken.contains(c.block)) continue;
    member_done[c.member] = true;
    taken.insert(c.block);
    out.push_back({unmatched[c.member], c.block});
  }
  std::sort(out.begin(), out.end(), [](const StepClone& a, const StepClone& b) {
    return a.before->location() < b.before->location();
  });
  return out;
}

std::vector<StepClone> reduced_clones(std::span<const StepClone> step) {
  std::vector<StepClone> out;
  for (const auto& s : step) {
    if (s.after->tokens.size() < s.before->tokens.size()) out.push_back(s);
  }
  if (out.size() < 2) out.clear();
  return out;
}

std::vector<ExtractedMethodCandidate> new_invocations(
    std::span<const StepClone> reduced, const VersionCorpus& next) {
  std::map<std::string, std::vector<StepClone>> by_name;
  for (const auto& s : reduced) {
    const auto before = invoked_names(*s.before);
    for (const auto& name : invoked_names(*s.after)) {
      if (!before.contains(name)) by_name[name].push_back(s);
    }
  }
  std::vector<ExtractedMethodCandidate> out;
  for (auto& [name, clones] : by_name) {
    auto bodies = next.method_bodies(name);
    if (bodies.empty()) continue;
    out.push_back({name, next.version(), std::move(bodies), std::move(clones)});
  }
  return out;
}

double removed_code_similarity(const TokenBag& clone_removed_tokens,
                               const TokenBag& method_body_tokens) {
  return overlap_coefficient(clone_removed_tokens, method_body_tokens);
}

namespace {

struct StepVerdict {
  std::string method;
  const CodeBlock* body = nullptr;
  std::vector<CloneEvidence> hits;
  double hit_sum = 0.0;
};

// Picks the overload with the highest total similarity, independent of l_th,
// and keeps the clones reaching l_th.
StepVerdict judge(const ExtractedMethodCandidate& candidate, double l_th) {
  std::vector<TokenBag> removed;
  for (const auto& s : candidate.clones) {
    removed.push_back(bag_difference(s.before->token_bag, s.after->token_bag));
  }
  const CodeBlock* best = nullptr;
  std::vector<double> best_sims;
  double best_total = -1.0;
  for (const CodeBlock* body : candidate.bodies) {
    std::vector<double> sims;
    double total = 0.0;
    for (const auto& r : removed) {
      sims.push_back(removed_code_similarity(r, body->token_bag));
      total += sims.back();
    }
    if (total > best_total) {
      best_total = total;
      best = body;
      best_sims = std::move(sims);
    }
  }
  StepVerdict verdict;
  verdict.method = candidate.name;
  verdict.body = best;
  for (std::size_t k = 0; k < candidate.clones.size(); ++k) {
    if (best_sims[k] < l_th) continue;
    verdict.hits.push_back({candidate.clones[k].before->location(),
                            candidate.clones[k].after->location(), best_sims[k]});
    verdict.hit_sum += best_sims[k];
  }
  return verdict;
}

}  // namespace

LabelDecision label_lineage(const Lineage& lineage, const CorpusLookup& corpora,
                            double l_th, double link_floor) {
  LabelDecision decision;
  decision.lineage_id = lineage.id;
  for (std::size_t k = 0; k < lineage.groups.size(); ++k) {
    const LineageEntry& entry = lineage.groups[k];
    const VersionCorpus* here = corpora(entry.version);
    const VersionCorpus* next = corpora(entry.version + 1);
    if (!here || !next) continue;
    const std::vector<CloneLink>* links = nullptr;
    if (k + 1 < lineage.groups.size() &&
        lineage.groups[k + 1].version == entry.version + 1) {
      links = &lineage.links[k];
    }
    const auto step = step_successors(entry, links, *here, *next, link_floor);
    const auto reduced = reduced_clones(step);
    if (reduced.empty()) continue;

    std::optional<StepVerdict> chosen;
    for (const auto& candidate : new_invocations(reduced, *next)) {
      if (!candidate.qualifies()) continue;
      StepVerdict v = judge(candidate, l_th);
      if (v.hits.size() < 2) continue;
      if (!chosen || v.hits.size() > chosen->hits.size() ||
          (v.hits.size() == chosen->hits.size() && v.hit_sum > chosen->hit_sum)) {
        chosen = std::move(v);
      }
    }
    if (!chosen) continue;
    decision.label = Label::kR;
    decision.version = entry.version;
    decision.clones = std::move(chosen->hits);
    decision.method_name = chosen->method;
    decision.method_location = chosen->body->location();
    return decision;
  }
  return decision;
}

}  // namespace crec
