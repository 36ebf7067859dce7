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

#ifndef CREC_EVAL_HARNESS_H_
#define CREC_EVAL_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crec/learner.h"

namespace crec {

struct ConfusionCounts {
  std::size_t recommended = 0;
  std::size_t recommended_and_refactored = 0;
  std::size_t known_refactored = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& other);
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Totalized: 0 whenever the denominator is 0.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);
double fscore(double p, double r);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;

  friend bool operator==(const Prf&, const Prf&) = default;
};

Prf prf(const ConfusionCounts& c);

// All R examples followed by |r| NR examples drawn uniformly without
// replacement. Throws Error{kInsufficientNegatives}.
std::vector<LabeledExample> build_balanced_dataset(
    std::span<const LabeledExample> r_examples,
    std::span<const LabeledExample> nr_pool, std::uint64_t seed);

inline constexpr std::size_t kFolds = 10;

// Fold index per example. Each class is shuffled and dealt round-robin;
// negatives continue where positives stopped, so fold sizes differ by at
// most one overall and per class.
std::vector<std::size_t> stratified_folds(std::span<const LabeledExample> dataset,
                                          std::size_t folds, std::uint64_t seed);

struct EvalOptions {
  LearnerConfig learner;
  std::uint64_t seed = 0;  // fold assignment
  double threshold = kDefaultRecommendThreshold;
};

// Confusion counts pooled over the test folds. Throws Error{kTooSmall}
// below ten examples.
ConfusionCounts ten_fold(std::span<const LabeledExample> dataset,
                         const EvalOptions& options);

ConfusionCounts evaluate_split(std::span<const LabeledExample> train_set,
                               std::span<const LabeledExample> test_set,
                               const EvalOptions& options);

struct ProjectData {
  std::string name;
  std::vector<LabeledExample> examples;
};

enum class Setting { kWithin, kCross };

const char* setting_name(Setting setting);
Setting parse_setting(std::string_view text);

struct ProjectResult {
  std::string name;
  ConfusionCounts counts;
  Prf metrics;
  bool no_positives = false;  // recall totalized to 0
};

struct EvalReport {
  Setting setting = Setting::kWithin;
  std::vector<ProjectResult> projects;
  Prf average;  // arithmetic means over projects
  std::string algorithm;
  std::string feature_subset;
  double threshold = kDefaultRecommendThreshold;
  std::uint64_t seed = 0;
};

// Ten-fold per project.
EvalReport within_project(std::span<const ProjectData> projects,
                          const EvalOptions& options);

// Leave-one-project-out. Throws Error{kTooFewProjects} below two projects.
EvalReport cross_project(std::span<const ProjectData> projects,
                         const EvalOptions& options);

EvalReport evaluate(std::span<const ProjectData> projects, Setting setting,
                    const EvalOptions& options);

struct AblationRow {
  std::string name;  // AllFeatures, ExceptCode, ...
  std::size_t masked_features = 0;
  Prf metrics;
};

std::vector<AblationRow> ablation(std::span<const ProjectData> projects,
                                  Setting setting, const EvalOptions& options);

struct ComparisonRow {
  Algorithm algorithm = Algorithm::kAdaBoost;
  Setting setting = Setting::kWithin;
  Prf metrics;
};

// Same folds and seeds for every algorithm.
std::vector<ComparisonRow> compare_learners(std::span<const ProjectData> projects,
                                            Setting setting,
                                            std::span<const Algorithm> algorithms,
                                            const EvalOptions& options);

// "all" or "all-minus-<Category>".
std::string describe_mask(const FeatureMask& mask);

}  // namespace crec

#endif  // CREC_EVAL_HARNESS_H_
