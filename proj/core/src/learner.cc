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

#include "crec/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "crec/common.h"

namespace crec {
namespace {

constexpr double kTieEpsilon = 1e-12;
constexpr double kErrorClamp = 1e-10;
// Weight given to a stump that is no better than chance when it is the only
// one available.
constexpr double kMinAlpha = 1e-10;

}  // namespace

FeatureMask all_features() { return FeatureMask().set(); }

FeatureMask mask_without(FeatureCategory category) {
  FeatureMask mask = all_features();
  for (std::size_t k : category_features(category)) mask.reset(k - 1);
  return mask;
}

int DecisionStump::predict(const FeatureVector& v) const {
  const double x = v.at(feature_index);
  const bool le = x <= threshold;
  return (polarity == Polarity::kLessEqualIsOne) == le ? 1 : 0;
}

StumpFit best_stump(std::span<const LabeledExample> examples,
                    std::span<const double> weights, const FeatureMask& mask) {
  if (examples.empty()) {
    throw Error(ErrorCode::kDegenerateData, "no training examples");
  }
  if (weights.size() != examples.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one weight per example required");
  }
  if (mask.none()) {
    throw Error(ErrorCode::kInvalidArgument, "feature mask excludes every feature");
  }
  double w_pos = 0.0;
  double w_neg = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    (examples[i].label == 1 ? w_pos : w_neg) += weights[i];
  }

  StumpFit best;
  best.error = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t k, double t, double le_pos, double le_neg) {
    // <= predicts 1: errors are negatives at or below t plus positives above.
    const double err_le = le_neg + (w_pos - le_pos);
    const double err_gt = le_pos + (w_neg - le_neg);
    if (err_le < best.error - kTieEpsilon) {
      best = {{k, t, Polarity::kLessEqualIsOne, 0.0}, err_le};
    }
    if (err_gt < best.error - kTieEpsilon) {
      best = {{k, t, Polarity::kGreaterIsOne, 0.0}, err_gt};
    }
  };

  std::vector<std::size_t> order(examples.size());
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    if (!mask.test(k - 1)) continue;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return examples[a].vector.at(k) < examples[b].vector.at(k);
    });
    consider(k, -std::numeric_limits<double>::infinity(), 0.0, 0.0);
    double le_pos = 0.0;
    double le_neg = 0.0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const std::size_t i = order[r];
      (examples[i].label == 1 ? le_pos : le_neg) += weights[i];
      if (r + 1 == order.size()) break;
      const double a = examples[i].vector.at(k);
      const double b = examples[order[r + 1]].vector.at(k);
      if (b > a) consider(k, std::midpoint(a, b), le_pos, le_neg);
    }
  }
  return best;
}

BoostModel train_adaboost(std::span<const LabeledExample> examples,
                          std::size_t rounds, const FeatureMask& mask,
                          std::uint64_t seed) {
  if (examples.empty()) {
    throw Error(ErrorCode::kDegenerateData, "no training examples");
  }
  BoostModel model;
  model.rounds = rounds;
  model.seed = seed;
  model.mask = mask;
  model.dataset_digest = dataset_digest(examples);

  const std::size_t n = examples.size();
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (std::size_t t = 0; t < rounds; ++t) {
    StumpFit fit = best_stump(examples, w, mask);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (fit.stump.predict(examples[i].vector) != examples[i].label) e += w[i];
    }
    if (e >= 0.5) {
      if (model.stumps.empty()) {
        fit.stump.alpha = kMinAlpha;
        model.stumps.push_back(fit.stump);
        model.errors.push_back(e);
      }
      break;
    }
    const double clamped = std::clamp(e, kErrorClamp, 1.0 - kErrorClamp);
    fit.stump.alpha = 0.5 * std::log((1.0 - clamped) / clamped);
    model.stumps.push_back(fit.stump);
    model.errors.push_back(e);
    if (e == 0.0) break;

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool correct = fit.stump.predict(examples[i].vector) == examples[i].label;
      w[i] *= std::exp(correct ? -fit.stump.alpha : fit.stump.alpha);
      total += w[i];
    }
    for (auto& x : w) x /= total;
  }
  return model;
}

double predict_likelihood(const BoostModel& model, const FeatureVector& v) {
  double yes = 0.0;
  double all = 0.0;
  for (const auto& s : model.stumps) {
    all += s.alpha;
    if (s.predict(v) == 1) yes += s.alpha;
  }
  return all > 0.0 ? std::clamp(yes / all, 0.0, 1.0) : 0.0;
}

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kAdaBoost: return "adaboost";
    case Algorithm::kDecisionTree: return "decision_tree";
    case Algorithm::kRandomForest: return "random_forest";
    case Algorithm::kNaiveBayes: return "naive_bayes";
  }
  return "";
}

Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : {Algorithm::kAdaBoost, Algorithm::kDecisionTree,
                      Algorithm::kRandomForest, Algorithm::kNaiveBayes}) {
    if (text == algorithm_name(a)) return a;
  }
  throw Error(ErrorCode::kConfigError, "unknown algorithm '" + std::string(text) + "'");
}

Model train(const LearnerConfig& config, std::span<const LabeledExample> examples) {
  switch (config.algorithm) {
    case Algorithm::kAdaBoost:
      return train_adaboost(examples, config.rounds, config.mask, config.seed);
    case Algorithm::kDecisionTree:
      return train_decision_tree(examples, config.mask);
    case Algorithm::kRandomForest:
      return train_random_forest(examples, config.seed, config.mask);
    case Algorithm::kNaiveBayes:
      return train_naive_bayes(examples, config.mask);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

double predict_likelihood(const Model& model, const FeatureVector& v) {
  return std::visit([&](const auto& m) { return predict_likelihood(m, v); }, model);
}

Algorithm model_algorithm(const Model& model) {
  return static_cast<Algorithm>(model.index());
}

std::vector<Recommendation> recommend(const Model& model,
                                      std::span<const Candidate> candidates,
                                      double threshold) {
  std::vector<Recommendation> out;
  for (const auto& c : candidates) {
    const double p = predict_likelihood(model, c.vector);
    if (p >= threshold) out.push_back({c.group_id, p});
  }
  std::sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.likelihood != b.likelihood) return a.likelihood > b.likelihood;
    return a.group_id < b.group_id;
  });
  return out;
}

std::string dataset_digest(std::span<const LabeledExample> examples) {
  std::uint64_t h = fnv1a64("");
  for (const auto& e : examples) {
    std::string row = std::to_string(e.label);
    for (double x : e.vector.f) row += "," + format_double(x);
    row += "\n";
    h = fnv1a64(row, h);
  }
  return hex64(h);
}

}  // namespace crec
