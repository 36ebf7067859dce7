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

#ifndef CREC_ARTIFACTS_H_
#define CREC_ARTIFACTS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crec/eval_harness.h"
#include "crec/genealogy.h"
#include "crec/labeler.h"
#include "crec/learner.h"
#include "crec/repo_miner.h"

namespace crec {

// Every artifact is text: a "crec-format v1 <kind>" header line followed by
// JSON Lines or CSV rows. Parsers take a source name for error messages and
// report the offending 1-based line number in Error{kParseError}.

std::string serialize_commits(std::span<const CommitRecord> commits);
std::vector<CommitRecord> parse_commits(std::string_view text, std::string_view source);

std::string serialize_samples(std::span<const SampledVersion> samples);
std::vector<SampledVersion> parse_samples(std::string_view text, std::string_view source);

// Detected groups, one per line, as version/group_id/member locations.
std::string serialize_groups(std::span<const LineageEntry> groups);
std::vector<LineageEntry> parse_groups(std::string_view text, std::string_view source);

std::string serialize_lineages(std::span<const Lineage> lineages);
std::vector<Lineage> parse_lineages(std::string_view text, std::string_view source);

std::string serialize_labels(std::span<const LabelDecision> labels);
std::vector<LabelDecision> parse_labels(std::string_view text, std::string_view source);

// "lineage_id,version,F1..F34,label"; label is 1 for R and 0 for NR.
std::string serialize_features(std::span<const LabeledExample> rows);
std::vector<LabeledExample> parse_features(std::string_view text, std::string_view source);

// Same columns without label.
std::string serialize_candidates(std::span<const FeatureVector> rows);
std::vector<FeatureVector> parse_candidates(std::string_view text, std::string_view source);

std::string serialize_model(const Model& model);
Model parse_model(std::string_view text, std::string_view source);

std::string serialize_recommendations(std::span<const Recommendation> rows);
std::vector<Recommendation> parse_recommendations(std::string_view text,
                                                  std::string_view source);

std::string serialize_report(const EvalReport& report);
std::string serialize_ablation(std::span<const AblationRow> rows);
std::string serialize_comparison(std::span<const ComparisonRow> rows);
// (l_th, number of R labels) per threshold.
std::string serialize_label_sweep(std::span<const std::pair<double, std::size_t>> rows);

// Throws Error{kMissingInput} when path cannot be read.
std::string read_artifact(const std::filesystem::path& path);
void write_artifact(const std::filesystem::path& path, std::string_view content);

}  // namespace crec

#endif  // CREC_ARTIFACTS_H_
