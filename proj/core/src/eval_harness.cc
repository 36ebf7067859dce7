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

#include "crec/eval_harness.h"

#include <algorithm>
#include <numeric>

#include "crec/common.h"
#include "crec/random.h"

namespace crec {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
  recommended += other.recommended;
  recommended_and_refactored += other.recommended_and_refactored;
  known_refactored += other.known_refactored;
  return *this;
}

double precision(const ConfusionCounts& c) {
  return c.recommended == 0
             ? 0.0
             : static_cast<double>(c.recommended_and_refactored) / c.recommended;
}

double recall(const ConfusionCounts& c) {
  return c.known_refactored == 0
             ? 0.0
             : static_cast<double>(c.recommended_and_refactored) / c.known_refactored;
}

double fscore(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

Prf prf(const ConfusionCounts& c) {
  const double p = precision(c);
  const double r = recall(c);
  return {p, r, fscore(p, r)};
}

std::vector<LabeledExample> build_balanced_dataset(
    std::span<const LabeledExample> r_examples,
    std::span<const LabeledExample> nr_pool, std::uint64_t seed) {
  if (nr_pool.size() < r_examples.size()) {
    throw Error(ErrorCode::kInsufficientNegatives,
                std::to_string(r_examples.size()) + " R examples but only " +
                    std::to_string(nr_pool.size()) + " NR candidates");
  }
  std::vector<std::size_t> order(nr_pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<LabeledExample> out(r_examples.begin(), r_examples.end());
  for (std::size_t i = 0; i < r_examples.size(); ++i) out.push_back(nr_pool[order[i]]);
  return out;
}

std::vector<std::size_t> stratified_folds(std::span<const LabeledExample> dataset,
                                          std::size_t folds, std::uint64_t seed) {
  if (folds == 0) throw Error(ErrorCode::kInvalidArgument, "zero folds");
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (dataset[i].label == 1 ? pos : neg).push_back(i);
  }
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::vector<std::size_t> fold(dataset.size(), 0);
  std::size_t next = 0;
  for (std::size_t i : pos) fold[i] = next++ % folds;
  for (std::size_t i : neg) fold[i] = next++ % folds;
  return fold;
}

ConfusionCounts evaluate_split(std::span<const LabeledExample> train_set,
                               std::span<const LabeledExample> test_set,
                               const EvalOptions& options) {
  const Model model = train(options.learner, train_set);
  ConfusionCounts c;
  for (const auto& e : test_set) {
    const bool recommended = predict_likelihood(model, e.vector) >= options.threshold;
    c.recommended += recommended;
    c.recommended_and_refactored += recommended && e.label == 1;
    c.known_refactored += e.label == 1;
  }
  return c;
}

ConfusionCounts ten_fold(std::span<const LabeledExample> dataset,
                         const EvalOptions& options) {
  if (dataset.size() < kFolds) {
    throw Error(ErrorCode::kTooSmall, "ten-fold evaluation needs at least 10 examples, got " +
                                          std::to_string(dataset.size()));
  }
  const auto fold = stratified_folds(dataset, kFolds, options.seed);
  ConfusionCounts total;
  for (std::size_t f = 0; f < kFolds; ++f) {
    std::vector<LabeledExample> train_set;
    std::vector<LabeledExample> test_set;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      (fold[i] == f ? test_set : train_set).push_back(dataset[i]);
    }
    total += evaluate_split(train_set, test_set, options);
  }
  return total;
}

const char* setting_name(Setting setting) {
  return setting == Setting::kCross ? "cross" : "within";
}

Setting parse_setting(std::string_view text) {
  if (text == "within") return Setting::kWithin;
  if (text == "cross") return Setting::kCross;
  throw Error(ErrorCode::kConfigError,
              "setting must be within or cross, got '" + std::string(text) + "'");
}

std::string describe_mask(const FeatureMask& mask) {
  if (mask.all()) return "all";
  for (FeatureCategory c : kAllCategories) {
    if (mask == mask_without(c)) return std::string("all-minus-") + category_name(c);
  }
  std::string out = "only";
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    if (mask.test(k - 1)) out += "-F" + std::to_string(k);
  }
  return out;
}

namespace {

EvalReport make_report(Setting setting, const EvalOptions& options) {
  EvalReport report;
  report.setting = setting;
  report.algorithm = algorithm_name(options.learner.algorithm);
  report.feature_subset = describe_mask(options.learner.mask);
  report.threshold = options.threshold;
  report.seed = options.seed;
  return report;
}

void add_project(EvalReport& report, const std::string& name, const ConfusionCounts& c) {
  report.projects.push_back({name, c, prf(c), c.known_refactored == 0});
}

void average(EvalReport& report) {
  if (report.projects.empty()) return;
  Prf sum;
  for (const auto& p : report.projects) {
    sum.precision += p.metrics.precision;
    sum.recall += p.metrics.recall;
    sum.fscore += p.metrics.fscore;
  }
  const double n = static_cast<double>(report.projects.size());
  report.average = {sum.precision / n, sum.recall / n, sum.fscore / n};
}

}  // namespace

EvalReport within_project(std::span<const ProjectData> projects,
                          const EvalOptions& options) {
  EvalReport report = make_report(Setting::kWithin, options);
  for (const auto& p : projects) add_project(report, p.name, ten_fold(p.examples, options));
  average(report);
  return report;
}

EvalReport cross_project(std::span<const ProjectData> projects,
                         const EvalOptions& options) {
  if (projects.size() < 2) {
    throw Error(ErrorCode::kTooFewProjects,
                "cross-project evaluation needs at least 2 projects, got " +
                    std::to_string(projects.size()));
  }
  EvalReport report = make_report(Setting::kCross, options);
  for (std::size_t held = 0; held < projects.size(); ++held) {
    std::vector<LabeledExample> train_set;
    for (std::size_t p = 0; p < projects.size(); ++p) {
      if (p == held) continue;
      train_set.insert(train_set.end(), projects[p].examples.begin(),
                       projects[p].examples.end());
    }
    add_project(report, projects[held].name,
                evaluate_split(train_set, projects[held].examples, options));
  }
  average(report);
  return report;
}

EvalReport evaluate(std::span<const ProjectData> projects, Setting setting,
                    const EvalOptions& options) {
  return setting == Setting::kCross ? cross_project(projects, options)
                                    : within_project(projects, options);
}

std::vector<AblationRow> ablation(std::span<const ProjectData> projects,
                                  Setting setting, const EvalOptions& options) {
  std::vector<AblationRow> rows;
  EvalOptions run = options;
  run.learner.mask = all_features();
  rows.push_back({"AllFeatures", 0, evaluate(projects, setting, run).average});
  for (FeatureCategory c : kAllCategories) {
    run.learner.mask = mask_without(c);
    rows.push_back({std::string("Except") + category_name(c),
                    category_features(c).size(),
                    evaluate(projects, setting, run).average});
  }
  return rows;
}

std::vector<ComparisonRow> compare_learners(std::span<const ProjectData> projects,
                                            Setting setting,
                                            std::span<const Algorithm> algorithms,
                                            const EvalOptions& options) {
  std::vector<ComparisonRow> rows;
  for (Algorithm a : algorithms) {
    EvalOptions run = options;
    run.learner.algorithm = a;
    rows.push_back({a, setting, evaluate(projects, setting, run).average});
  }
  return rows;
}

}  // namespace crec
