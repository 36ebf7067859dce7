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

#ifndef CREC_PIPELINE_H_
#define CREC_PIPELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "crec/config.h"
#include "crec/eval_harness.h"
#include "crec/learner.h"
#include "crec/repo_miner.h"

namespace crec {

// File names of the stage artifacts inside the output directory.
namespace artifact {
inline constexpr const char* kCommits = "commits.jsonl";
inline constexpr const char* kSamples = "samples.jsonl";
inline constexpr const char* kClones = "clones.jsonl";
inline constexpr const char* kLineages = "lineages.jsonl";
inline constexpr const char* kLabels = "labels.jsonl";
inline constexpr const char* kLabelSweep = "label_sweep.csv";
inline constexpr const char* kFeatures = "features.csv";
inline constexpr const char* kCandidates = "candidates.csv";
inline constexpr const char* kModel = "model.jsonl";
inline constexpr const char* kRecommendations = "recommendations.csv";
inline constexpr const char* kReport = "report.csv";
inline constexpr const char* kAblation = "ablation.csv";
inline constexpr const char* kComparison = "comparison.csv";
}  // namespace artifact

struct StageOptions {
  std::filesystem::path out;
  PipelineConfig config;
  Algorithm algorithm = Algorithm::kAdaBoost;
  Setting setting = Setting::kWithin;
  // Output directories of other runs, each holding a features.csv. Empty
  // means out alone.
  std::vector<std::filesystem::path> projects;
  std::vector<Algorithm> algorithms = {Algorithm::kAdaBoost, Algorithm::kDecisionTree,
                                       Algorithm::kRandomForest, Algorithm::kNaiveBayes};
};

// Each stage reads its predecessors' artifacts from options.out, writes its
// own, and returns a one-line summary.
std::string run_mine(const Repository& repo, const StageOptions& options);
std::string run_detect(const Repository& repo, const StageOptions& options);
std::string run_genealogy(const Repository& repo, const StageOptions& options);
std::string run_label(const Repository& repo, const StageOptions& options);
std::string run_featurize(const Repository& repo, const StageOptions& options);
std::string run_train(const StageOptions& options);
std::string run_recommend(const StageOptions& options);
std::string run_evaluate(const StageOptions& options);
std::string run_ablate(const StageOptions& options);
std::string run_compare(const StageOptions& options);

// mine through recommend.
std::vector<std::string> run_pipeline(const Repository& repo, const StageOptions& options);

// Balanced training set from a features file's R rows and NR pool.
std::vector<LabeledExample> balanced_examples(const std::filesystem::path& features_file,
                                              std::uint64_t seed);

}  // namespace crec

#endif  // CREC_PIPELINE_H_
