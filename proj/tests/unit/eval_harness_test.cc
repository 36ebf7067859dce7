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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "crec/common.h"
#include "crec/random.h"
#include "support/generators.h"

namespace crec {
namespace {

struct Table {
  ConfusionCounts counts;
  double p, r, f;
};

TEST(Metrics, HandComputedTables) {
  // {recommended, hits, known}
  const Table tables[] = {
      {{10, 7, 20}, 7.0 / 10, 7.0 / 20, 7.0 / 15},
      {{0, 0, 5}, 0.0, 0.0, 0.0},
      {{5, 0, 0}, 0.0, 0.0, 0.0},
      {{4, 4, 4}, 1.0, 1.0, 1.0},
      {{8, 6, 6}, 3.0 / 4, 1.0, 6.0 / 7},
      {{3, 1, 7}, 1.0 / 3, 1.0 / 7, 1.0 / 5},
      {{100, 82, 95}, 82.0 / 100, 82.0 / 95, 164.0 / 195},
      {{1, 1, 2}, 1.0, 1.0 / 2, 2.0 / 3},
      {{0, 0, 0}, 0.0, 0.0, 0.0},
      {{12, 5, 9}, 5.0 / 12, 5.0 / 9, 10.0 / 21},
  };
  for (const auto& t : tables) {
    const Prf m = prf(t.counts);
    EXPECT_NEAR(m.precision, t.p, 1e-12);
    EXPECT_NEAR(m.recall, t.r, 1e-12);
    EXPECT_NEAR(m.fscore, t.f, 1e-12);
  }
  EXPECT_NEAR(fscore(0.6, 0.4), 0.48, 1e-12);
  EXPECT_EQ(fscore(1.0, 1.0), 1.0);
  EXPECT_EQ(fscore(0.0, 0.0), 0.0);
}

TEST(Metrics, HarmonicMeanBounds) {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double p = 1e-6 + rng.unit() * (1.0 - 1e-6);
    const double r = 1e-6 + rng.unit() * (1.0 - 1e-6);
    const double f = fscore(p, r);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_LE(f, std::max(p, r) + 1e-15);
    EXPECT_GE(f, std::min(p, r) - 1e-15);
  }
}

std::vector<LabeledExample> labeled(std::size_t positives, std::size_t negatives) {
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < positives + negatives; ++i) {
    LabeledExample e;
    e.vector.lineage_id = "L" + std::to_string(i);
    e.vector.at(1) = static_cast<double>(i);
    e.label = i < positives ? 1 : 0;
    out.push_back(e);
  }
  return out;
}

TEST(BalancedDataset, SizesAndDeterminism) {
  const auto r = labeled(5, 0);
  const auto pool = labeled(0, 100);
  const auto a = build_balanced_dataset(r, pool, 42);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(std::count_if(a.begin(), a.end(), [](auto& e) { return e.label == 1; }), 5);
  std::set<std::string> ids;
  for (std::size_t i = 5; i < 10; ++i) ids.insert(a[i].vector.lineage_id);
  EXPECT_EQ(ids.size(), 5u);
  EXPECT_EQ(a, build_balanced_dataset(r, pool, 42));

  const auto whole = build_balanced_dataset(labeled(3, 0), labeled(0, 3), 1);
  EXPECT_EQ(whole.size(), 6u);
  try {
    build_balanced_dataset(labeled(3, 0), labeled(0, 2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientNegatives);
  }
}

TEST(Folds, PartitionAndBalance) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t pos = 5 + rng.below(40);
    const std::size_t neg = 5 + rng.below(40);
    const auto data = labeled(pos, neg);
    const auto folds = stratified_folds(data, kFolds, trial);
    ASSERT_EQ(folds.size(), data.size());
    std::vector<std::size_t> size(kFolds), p(kFolds), n(kFolds);
    for (std::size_t i = 0; i < data.size(); ++i) {
      ASSERT_LT(folds[i], kFolds);
      ++size[folds[i]];
      ++(data[i].label ? p : n)[folds[i]];
    }
    auto spread = [](const std::vector<std::size_t>& v) {
      return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
    };
    EXPECT_LE(spread(size), 1u);
    EXPECT_LE(spread(p), 1u);
    EXPECT_LE(spread(n), 1u);
    EXPECT_EQ(folds, stratified_folds(data, kFolds, trial));
  }
  const auto twenty = stratified_folds(labeled(10, 10), kFolds, 0);
  for (std::size_t f = 0; f < kFolds; ++f) {
    EXPECT_EQ(std::count(twenty.begin(), twenty.end(), f), 2);
  }
}

TEST(TenFold, PerfectSignalAndTooSmall) {
  Rng rng(4);
  std::vector<LabeledExample> data;
  for (int i = 0; i < 40; ++i) {
    LabeledExample e;
    e.vector = testing::random_vector(rng);
    e.label = rng.below(2) == 1;
    e.vector.at(1) = e.label ? 6.0 + 4.0 * rng.unit() : 4.0 * rng.unit();
    data.push_back(e);
  }
  EvalOptions options;
  const auto counts = ten_fold(data, options);
  EXPECT_EQ(prf(counts).fscore, 1.0);
  EXPECT_EQ(counts, ten_fold(data, options));
  try {
    ten_fold(std::span(data).first(9), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooSmall);
  }
}

ProjectData project(const std::string& name, std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return {name, testing::synthetic_dataset(rng, n, 0.0)};
}

TEST(CrossProject, IdenticalProjectsAndErrors) {
  const auto a = project("a", 1, 60);
  ProjectData b = a;
  b.name = "b";
  const std::vector<ProjectData> two = {a, b};
  const auto report = cross_project(two, {});
  ASSERT_EQ(report.projects.size(), 2u);
  for (const auto& p : report.projects) EXPECT_EQ(p.metrics.fscore, 1.0);
  EXPECT_EQ(report.average.fscore, 1.0);
  EXPECT_EQ(report.setting, Setting::kCross);
  try {
    cross_project(std::span(two).first(1), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewProjects);
  }

  ProjectData none = project("none", 2, 30);
  for (auto& e : none.examples) e.label = 0;
  const std::vector<ProjectData> with_none = {a, none};
  const auto r2 = cross_project(with_none, {});
  EXPECT_TRUE(r2.projects[1].no_positives);
  EXPECT_EQ(r2.projects[1].metrics.recall, 0.0);
}

TEST(Reports, AveragesAreMeansOverProjects) {
  const std::vector<ProjectData> ps = {project("a", 5, 40), project("b", 6, 50),
                                       project("c", 7, 30)};
  EvalOptions options;
  const auto report = within_project(ps, options);
  ASSERT_EQ(report.projects.size(), 3u);
  double p = 0, r = 0, f = 0;
  for (const auto& pr : report.projects) {
    p += pr.metrics.precision;
    r += pr.metrics.recall;
    f += pr.metrics.fscore;
    EXPECT_EQ(pr.metrics, prf(pr.counts));
  }
  EXPECT_NEAR(report.average.precision, p / 3, 1e-15);
  EXPECT_NEAR(report.average.recall, r / 3, 1e-15);
  EXPECT_NEAR(report.average.fscore, f / 3, 1e-15);
  EXPECT_EQ(parse_setting(setting_name(Setting::kCross)), Setting::kCross);
}

std::vector<LabeledExample> single_feature_labels(std::uint64_t seed, std::size_t k,
                                                  std::size_t n) {
  Rng rng(seed);
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledExample e;
    e.vector = testing::random_vector(rng);
    // A gap around 0.5 keeps held-out points on the right side of any split.
    e.label = rng.below(2) == 1;
    e.vector.at(k) = e.label ? 0.6 + 0.4 * rng.unit() : 0.4 * rng.unit();
    out.push_back(e);
  }
  return out;
}

TEST(Ablation, RowsAndConstructedDependence) {
  const std::vector<ProjectData> history = {{"p", single_feature_labels(8, 13, 100)}};
  const auto rows = ablation(history, Setting::kWithin, {});
  ASSERT_EQ(rows.size(), 6u);
  const char* names[] = {"AllFeatures",  "ExceptCode", "ExceptHistory",
                         "ExceptLocation", "ExceptDiff", "ExceptCoChange"};
  const std::size_t masked[] = {0, 11, 6, 6, 6, 5};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(rows[i].name, names[i]);
    EXPECT_EQ(rows[i].masked_features, masked[i]);
  }
  EXPECT_LT(rows[2].metrics.fscore, rows[0].metrics.fscore);

  const std::vector<ProjectData> code = {{"p", single_feature_labels(9, 1, 100)}};
  const auto rows2 = ablation(code, Setting::kWithin, {});
  EXPECT_EQ(rows2[4].metrics, rows2[0].metrics);
  EXPECT_EQ(rows2[0].metrics.fscore, 1.0);
}

TEST(CompareLearners, SeparableDataAndEmptyList) {
  const std::vector<ProjectData> ps = {{"p", single_feature_labels(10, 1, 60)}};
  const Algorithm all[] = {Algorithm::kAdaBoost, Algorithm::kDecisionTree,
                           Algorithm::kRandomForest, Algorithm::kNaiveBayes};
  const auto rows = compare_learners(ps, Setting::kWithin, all, {});
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].algorithm, all[i]);
    EXPECT_EQ(rows[i].metrics.fscore, 1.0) << algorithm_name(all[i]);
  }
  EXPECT_TRUE(compare_learners(ps, Setting::kWithin, {}, {}).empty());
}

TEST(DescribeMask, Names) {
  EXPECT_EQ(describe_mask(all_features()), "all");
  EXPECT_EQ(describe_mask(mask_without(FeatureCategory::kCoChange)), "all-minus-CoChange");
}

}  // namespace
}  // namespace crec
