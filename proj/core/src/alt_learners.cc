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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

#include "crec/common.h"
#include "crec/learner.h"
#include "crec/random.h"

namespace crec {
namespace {

constexpr double kMinGain = 1e-12;

double entropy(double pos, double total) {
  if (total <= 0.0 || pos <= 0.0 || pos >= total) return 0.0;
  const double p = pos / total;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::vector<std::size_t> allowed_features(const FeatureMask& mask) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    if (mask.test(k - 1)) out.push_back(k);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "feature mask excludes every feature");
  }
  return out;
}

class TreeBuilder {
 public:
  TreeBuilder(std::span<const LabeledExample> examples, const FeatureMask& mask,
              std::size_t min_leaf, bool gain_ratio, Rng* rng)
      : examples_(examples),
        features_(allowed_features(mask)),
        min_leaf_(std::max<std::size_t>(1, min_leaf)),
        gain_ratio_(gain_ratio),
        rng_(rng) {
    model_.min_leaf = min_leaf_;
    model_.mask = mask;
  }

  TreeModel build(std::vector<std::size_t> indices) {
    grow(std::move(indices));
    return std::move(model_);
  }

 private:
  struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = 0.0;
  };

  std::size_t grow(std::vector<std::size_t> indices) {
    const std::size_t id = model_.nodes.size();
    model_.nodes.emplace_back();
    std::size_t pos = 0;
    for (std::size_t i : indices) pos += examples_[i].label == 1;
    TreeNode& node = model_.nodes[id];
    node.count = indices.size();
    node.positive_fraction =
        indices.empty() ? 0.0 : static_cast<double>(pos) / indices.size();
    if (pos == 0 || pos == indices.size() || indices.size() < 2 * min_leaf_) return id;

    const auto split = choose(indices, pos);
    if (!split) return id;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t i : indices) {
      (examples_[i].vector.at(split->feature) <= split->threshold ? left : right)
          .push_back(i);
    }
    const std::size_t l = grow(std::move(left));
    const std::size_t r = grow(std::move(right));
    model_.nodes[id].feature_index = split->feature;
    model_.nodes[id].threshold = split->threshold;
    model_.nodes[id].left = l;
    model_.nodes[id].right = r;
    return id;
  }

  // Forest trees try a random sqrt-sized subset first; when it yields no
  // split, the remaining features follow one at a time in random order.
  std::optional<Split> choose(const std::vector<std::size_t>& indices, std::size_t pos) {
    if (!rng_) return choose_among(indices, pos, features_);
    std::vector<std::size_t> pool = features_;
    rng_->shuffle(pool);
    const std::size_t m = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(pool.size())))));
    std::vector<std::size_t> first(pool.begin(), pool.begin() + std::min(m, pool.size()));
    std::sort(first.begin(), first.end());
    if (auto split = choose_among(indices, pos, first)) return split;
    for (std::size_t i = first.size(); i < pool.size(); ++i) {
      if (auto split = choose_among(indices, pos, {pool[i]})) return split;
    }
    return std::nullopt;
  }

  std::optional<Split> choose_among(const std::vector<std::size_t>& indices,
                                    std::size_t pos,
                                    const std::vector<std::size_t>& features) {
    const double n = static_cast<double>(indices.size());
    const double parent = entropy(static_cast<double>(pos), n);
    std::optional<Split> best;
    std::vector<std::size_t> order = indices;
    for (std::size_t k : features) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return examples_[a].vector.at(k) < examples_[b].vector.at(k);
      });
      double left_pos = 0.0;
      for (std::size_t r = 0; r + 1 < order.size(); ++r) {
        left_pos += examples_[order[r]].label == 1;
        const double a = examples_[order[r]].vector.at(k);
        const double b = examples_[order[r + 1]].vector.at(k);
        if (!(b > a)) continue;
        const double nl = static_cast<double>(r + 1);
        const double nr = n - nl;
        if (nl < min_leaf_ || nr < min_leaf_) continue;
        const double children = nl / n * entropy(left_pos, nl) +
                                nr / n * entropy(static_cast<double>(pos) - left_pos, nr);
        const double gain = parent - children;
        if (gain <= kMinGain) continue;
        const double score = gain_ratio_ ? gain / entropy(nl, n) : gain;
        if (!best || score > best->score + kMinGain) {
          best = Split{k, std::midpoint(a, b), score};
        }
      }
    }
    return best;
  }

  std::span<const LabeledExample> examples_;
  std::vector<std::size_t> features_;
  std::size_t min_leaf_;
  bool gain_ratio_;
  Rng* rng_;
  TreeModel model_;
};

void require_examples(std::span<const LabeledExample> examples) {
  if (examples.empty()) {
    throw Error(ErrorCode::kDegenerateData, "no training examples");
  }
}

}  // namespace

double TreeModel::leaf_fraction(const FeatureVector& v) const {
  if (nodes.empty()) return 0.0;
  std::size_t id = 0;
  while (!nodes[id].is_leaf()) {
    id = v.at(nodes[id].feature_index) <= nodes[id].threshold ? nodes[id].left
                                                              : nodes[id].right;
  }
  return nodes[id].positive_fraction;
}

TreeModel train_decision_tree(std::span<const LabeledExample> examples,
                              const FeatureMask& mask, std::size_t min_leaf) {
  require_examples(examples);
  std::vector<std::size_t> all(examples.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return TreeBuilder(examples, mask, min_leaf, /*gain_ratio=*/true, nullptr)
      .build(std::move(all));
}

ForestModel train_random_forest(std::span<const LabeledExample> examples,
                                std::uint64_t seed, const FeatureMask& mask,
                                std::size_t trees) {
  require_examples(examples);
  ForestModel forest;
  forest.seed = seed;
  forest.mask = mask;
  Rng rng(seed);
  for (std::size_t t = 0; t < trees; ++t) {
    std::vector<std::size_t> bag(examples.size());
    for (auto& i : bag) i = rng.below(examples.size());
    forest.trees.push_back(
        TreeBuilder(examples, mask, 1, /*gain_ratio=*/false, &rng).build(std::move(bag)));
  }
  return forest;
}

NaiveBayesModel train_naive_bayes(std::span<const LabeledExample> examples,
                                  const FeatureMask& mask) {
  require_examples(examples);
  NaiveBayesModel model;
  model.mask = mask;
  std::size_t count[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    model.mean[c].assign(kFeatureCount, 0.0);
    model.variance[c].assign(kFeatureCount, kVarianceFloor);
  }
  for (const auto& e : examples) {
    const int c = e.label == 1 ? 1 : 0;
    ++count[c];
    for (std::size_t k = 0; k < kFeatureCount; ++k) model.mean[c][k] += e.vector.f[k];
  }
  for (int c = 0; c < 2; ++c) {
    model.prior[c] = static_cast<double>(count[c]) / examples.size();
    if (count[c] == 0) continue;
    for (auto& m : model.mean[c]) m /= static_cast<double>(count[c]);
  }
  std::vector<double> sq[2] = {std::vector<double>(kFeatureCount, 0.0),
                               std::vector<double>(kFeatureCount, 0.0)};
  for (const auto& e : examples) {
    const int c = e.label == 1 ? 1 : 0;
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      const double d = e.vector.f[k] - model.mean[c][k];
      sq[c][k] += d * d;
    }
  }
  for (int c = 0; c < 2; ++c) {
    if (count[c] == 0) continue;
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      model.variance[c][k] =
          std::max(kVarianceFloor, sq[c][k] / static_cast<double>(count[c]));
    }
  }
  return model;
}

double predict_likelihood(const TreeModel& model, const FeatureVector& v) {
  return model.leaf_fraction(v);
}

double predict_likelihood(const ForestModel& model, const FeatureVector& v) {
  if (model.trees.empty()) return 0.0;
  double votes = 0.0;
  for (const auto& tree : model.trees) {
    const double p = tree.leaf_fraction(v);
    votes += p > 0.5 ? 1.0 : (p == 0.5 ? 0.5 : 0.0);
  }
  return votes / static_cast<double>(model.trees.size());
}

double predict_likelihood(const NaiveBayesModel& model, const FeatureVector& v) {
  if (model.prior[1] <= 0.0) return 0.0;
  if (model.prior[0] <= 0.0) return 1.0;
  double log_post[2];
  for (int c = 0; c < 2; ++c) {
    double lp = std::log(model.prior[c]);
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      if (!model.mask.test(k)) continue;
      const double var = model.variance[c][k];
      const double d = v.f[k] - model.mean[c][k];
      lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
    }
    log_post[c] = lp;
  }
  const double top = std::max(log_post[0], log_post[1]);
  const double z = std::exp(log_post[0] - top) + std::exp(log_post[1] - top);
  return std::clamp(std::exp(log_post[1] - top) / z, 0.0, 1.0);
}

}  // namespace crec
