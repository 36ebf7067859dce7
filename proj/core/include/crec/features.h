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

#ifndef CREC_FEATURES_H_
#define CREC_FEATURES_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crec/clone_detector.h"
#include "crec/corpus.h"
#include "crec/genealogy.h"
#include "crec/labeler.h"
#include "crec/repo_miner.h"

namespace crec {

inline constexpr std::size_t kFeatureCount = 34;
inline constexpr std::size_t kCloneFeatureCount = 17;  // F1..F17, per clone

struct FeatureVector {
  std::array<double, kFeatureCount> f{};  // f[k - 1] holds Fk
  std::string lineage_id;
  std::size_t version = 0;

  double& at(std::size_t k) { return f.at(k - 1); }
  double at(std::size_t k) const { return f.at(k - 1); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// "F1" .. "F34".
const std::array<std::string, kFeatureCount>& feature_names();

enum class FeatureCategory { kCode, kHistory, kLocation, kDiff, kCoChange };

inline constexpr std::array<FeatureCategory, 5> kAllCategories = {
    FeatureCategory::kCode, FeatureCategory::kHistory, FeatureCategory::kLocation,
    FeatureCategory::kDiff, FeatureCategory::kCoChange};

FeatureCategory feature_category(std::size_t k);
// 1-based feature indices of a category, ascending.
std::vector<std::size_t> category_features(FeatureCategory category);
const char* category_name(FeatureCategory category);

enum class Aggregation { kMean, kMax };

const char* aggregation_name(Aggregation aggregation);
Aggregation parse_aggregation(std::string_view text);

// Per-clone F1..F17, with values[k - 1] holding Fk.
struct CloneFeatures {
  std::array<double, kCloneFeatureCount> values{};
};

// Source lines of the clone's file plus the shallow field scan.
struct SourceContext {
  std::span<const std::string_view> lines;
  const std::set<std::string>* field_names = nullptr;
};

// F1..F11; the remaining entries stay zero.
CloneFeatures extract_code_features(const CodeBlock& clone,
                                    const SourceContext& context);

bool is_test_path(const std::string& path);

// The repository facts history and co-change features read. Tests may
// provide scripted histories.
class HistoryView {
 public:
  virtual ~HistoryView() = default;
  virtual bool file_exists(const std::string& commit,
                           const std::string& path) const = 0;
  virtual std::vector<std::string> changed_paths(const std::string& a,
                                                 const std::string& b) const = 0;
  virtual LineDiff diff_lines(const std::string& a, const std::string& b,
                              const std::string& path) const = 0;
  virtual AuthorCounts distinct_authors(const std::string& path) const = 0;
};

class RepositoryHistory : public HistoryView {
 public:
  explicit RepositoryHistory(const Repository& repo) : repo_(repo) {}

  bool file_exists(const std::string& commit, const std::string& path) const override;
  std::vector<std::string> changed_paths(const std::string& a,
                                         const std::string& b) const override;
  LineDiff diff_lines(const std::string& a, const std::string& b,
                      const std::string& path) const override;
  AuthorCounts distinct_authors(const std::string& path) const override;

 private:
  const Repository& repo_;
};

// Writes F12..F17 into features. Without a window all six are zero.
void extract_history_features(const std::string& path,
                              const std::optional<CheckedWindow>& window,
                              const HistoryView& history, CloneFeatures& features);

// F18..F23 as values[0..5].
std::array<double, 6> extract_location_features(
    std::span<const CodeBlock* const> members, const VersionCorpus& corpus);

// Path-copy score of two file paths: common directory suffix length over
// the shallower directory depth, times the Jaccard similarity of the two
// directories' file names. Zero for the same directory.
double path_copy_score(const std::string& path_a, const std::string& path_b,
                       const std::set<std::string>& siblings_a,
                       const std::set<std::string>& siblings_b);

// F24..F29 as values[0..5].
std::array<double, 6> extract_diff_features(std::span<const CodeBlock* const> members);

// F30..F34 as values[0..4]. tracks[m] maps sample index to member m's
// location at that version.
std::array<double, 5> extract_cochange_features(
    std::span<const std::map<std::size_t, Location>> tracks,
    const std::optional<CheckedWindow>& window, const HistoryView& history);

// Aggregates per-clone features and appends the group-level ones, then
// validates every range. group_features holds F18..F34.
FeatureVector assemble_vector(std::span<const CloneFeatures> per_clone,
                              const std::array<double, 17>& group_features,
                              Aggregation aggregation, std::string lineage_id,
                              std::size_t version);

// Throws Error{kRangeViolation} naming the first out-of-range feature.
void validate_feature_vector(const FeatureVector& vector, Aggregation aggregation);

struct FeatureOptions {
  double window_fraction = 0.1;
  double recent_fraction = 0.25;
  Aggregation aggregation = Aggregation::kMean;
};

// Window over samples[0..version]; nullopt when version is 0.
std::optional<CheckedWindow> window_at(std::span<const SampledVersion> samples,
                                       std::size_t version,
                                       const FeatureOptions& options);

// Full vector for lineage.groups[entry].
FeatureVector extract_features(const Lineage& lineage, std::size_t entry,
                               const CorpusLookup& corpora,
                               std::span<const SampledVersion> samples,
                               const HistoryView& history,
                               const FeatureOptions& options,
                               std::vector<std::string>* diagnostics = nullptr);

}  // namespace crec

#endif  // CREC_FEATURES_H_
