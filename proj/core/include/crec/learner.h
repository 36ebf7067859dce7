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

#ifndef CREC_LEARNER_H_
#define CREC_LEARNER_H_

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crec/features.h"

namespace crec {

struct LabeledExample {
  FeatureVector vector;
  int label = 0;  // 1 for R, 0 for NR

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

// Bit k - 1 set means Fk may be used by a learner.
using FeatureMask = std::bitset<kFeatureCount>;

FeatureMask all_features();
FeatureMask mask_without(FeatureCategory category);

enum class Polarity { kLessEqualIsOne, kGreaterIsOne };

struct DecisionStump {
  std::size_t feature_index = 1;  // 1-based
  double threshold = 0.0;         // may be -infinity
  Polarity polarity = Polarity::kLessEqualIsOne;
  double alpha = 0.0;

  int predict(const FeatureVector& v) const;
  friend bool operator==(const DecisionStump&, const DecisionStump&) = default;
};

struct StumpFit {
  DecisionStump stump;
  double error = 0.0;
};

// Exhaustive search over every allowed feature, every threshold (-infinity
// and midpoints of consecutive distinct values) and both polarities.
// Weighted errors within 1e-12 count as ties, which go to the lower feature,
// then the lower threshold, then the <= polarity.
StumpFit best_stump(std::span<const LabeledExample> examples,
                    std::span<const double> weights,
                    const FeatureMask& mask = all_features());

struct BoostModel {
  std::vector<DecisionStump> stumps;
  std::vector<double> errors;  // weighted error of each recorded round
  std::size_t rounds = 50;     // requested
  std::uint64_t seed = 0;
  std::string dataset_digest;
  FeatureMask mask = all_features();

  friend bool operator==(const BoostModel&, const BoostModel&) = default;
};

inline constexpr std::size_t kDefaultBoostRounds = 50;

// Discrete AdaBoost over decision stumps. Stops early after a round with
// zero error, or before a round with error >= 0.5. Single-class data yields
// one constant stump. Throws Error{kDegenerateData} on empty input.
BoostModel train_adaboost(std::span<const LabeledExample> examples,
                          std::size_t rounds = kDefaultBoostRounds,
                          const FeatureMask& mask = all_features(),
                          std::uint64_t seed = 0);

// Sum of alphas voting 1 over the sum of all alphas.
double predict_likelihood(const BoostModel& model, const FeatureVector& v);

// Binary tree over feature thresholds; left takes x <= threshold.
struct TreeNode {
  std::size_t feature_index = 0;  // 0 for a leaf
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  double positive_fraction = 0.0;
  std::size_t count = 0;

  bool is_leaf() const { return feature_index == 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t min_leaf = 2;
  FeatureMask mask = all_features();

  double leaf_fraction(const FeatureVector& v) const;
  friend bool operator==(const TreeModel&, const TreeModel&) = default;
};

struct ForestModel {
  std::vector<TreeModel> trees;
  std::uint64_t seed = 0;
  FeatureMask mask = all_features();

  friend bool operator==(const ForestModel&, const ForestModel&) = default;
};

struct NaiveBayesModel {
  double prior[2] = {0.0, 0.0};
  std::vector<double> mean[2];      // per feature, kFeatureCount entries
  std::vector<double> variance[2];  // floored
  FeatureMask mask = all_features();

  friend bool operator==(const NaiveBayesModel& a, const NaiveBayesModel& b) {
    return a.prior[0] == b.prior[0] && a.prior[1] == b.prior[1] &&
           a.mean[0] == b.mean[0] && a.mean[1] == b.mean[1] &&
           a.variance[0] == b.variance[0] && a.variance[1] == b.variance[1] &&
           a.mask == b.mask;
  }
};

inline constexpr double kVarianceFloor = 1e-9;
inline constexpr std::size_t kDefaultForestSize = 100;

// Gain-ratio splits, leaves of at least min_leaf examples.
TreeModel train_decision_tree(std::span<const LabeledExample> examples,
                              const FeatureMask& mask = all_features(),
                              std::size_t min_leaf = 2);

// Bagged trees with sqrt(features) candidates per split.
ForestModel train_random_forest(std::span<const LabeledExample> examples,
                                std::uint64_t seed,
                                const FeatureMask& mask = all_features(),
                                std::size_t trees = kDefaultForestSize);

NaiveBayesModel train_naive_bayes(std::span<const LabeledExample> examples,
                                  const FeatureMask& mask = all_features());

double predict_likelihood(const TreeModel& model, const FeatureVector& v);
double predict_likelihood(const ForestModel& model, const FeatureVector& v);
double predict_likelihood(const NaiveBayesModel& model, const FeatureVector& v);

enum class Algorithm { kAdaBoost, kDecisionTree, kRandomForest, kNaiveBayes };

const char* algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view text);

using Model = std::variant<BoostModel, TreeModel, ForestModel, NaiveBayesModel>;

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kAdaBoost;
  std::size_t rounds = kDefaultBoostRounds;
  std::uint64_t seed = 0;
  FeatureMask mask = all_features();
};

Model train(const LearnerConfig& config, std::span<const LabeledExample> examples);
double predict_likelihood(const Model& model, const FeatureVector& v);
Algorithm model_algorithm(const Model& model);

struct Recommendation {
  std::string group_id;
  double likelihood = 0.0;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct Candidate {
  std::string group_id;
  FeatureVector vector;
};

inline constexpr double kDefaultRecommendThreshold = 0.5;

// Candidates with likelihood >= threshold, most likely first, ties by
// group_id.
std::vector<Recommendation> recommend(const Model& model,
                                      std::span<const Candidate> candidates,
                                      double threshold = kDefaultRecommendThreshold);

std::string dataset_digest(std::span<const LabeledExample> examples);

}  // namespace crec

#endif  // CREC_LEARNER_H_
