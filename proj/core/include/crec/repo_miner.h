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
#ifndef CREC_REPO_MINER_H_
#define CREC_REPO_MINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crec/line_diff.h"

namespace crec {

// One commit on the first-parent chain. changed_line_count is added plus
// deleted lines against the first parent over text files; binary files are
// listed in changed_files but contribute no lines.
struct CommitRecord {
  std::string id;
  std::int64_t timestamp = 0;
  std::string author;  // lowercased "name <email>"
  std::vector<std::string> changed_files;  // sorted
  std::int64_t changed_line_count = 0;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

struct SampledVersion {
  std::size_t index = 0;
  std::string commit_id;
  std::int64_t cumulative_delta = 0;

  friend bool operator==(const SampledVersion&, const SampledVersion&) = default;
};

// A transition between two consecutive sampled versions.
struct WindowStep {
  std::size_t from = 0;  // sample index
  std::size_t to = 0;
  std::string from_commit;
  std::string to_commit;

  friend bool operator==(const WindowStep&, const WindowStep&) = default;
};

struct CheckedWindow {
  std::vector<WindowStep> steps;
  std::vector<WindowStep> recent_steps;  // suffix of steps
};

struct AuthorCounts {
  std::size_t touching = 0;
  std::size_t total = 0;

  friend bool operator==(const AuthorCounts&, const AuthorCounts&) = default;
};

// Read-only view of a git repository's first-parent history. All VCS access
// in the pipeline goes through this class. Lookups are cached and guarded by
// an internal mutex, so a const Repository may be shared across threads.
class Repository {
 public:
  // Throws Error{kNotARepository} unless path is a repository work-tree
  // root, Error{kEmptyRepository} if it has no commits.
  static Repository open(const std::filesystem::path& path);

  Repository(Repository&&) noexcept;
  Repository& operator=(Repository&&) noexcept;
  ~Repository();

  const std::filesystem::path& path() const;

  // Oldest first.
  const std::vector<CommitRecord>& commits() const;
  bool has_commit(const std::string& commit_id) const;

  // Exact bytes of path at commit, or nullopt when absent.
  std::optional<std::string> file_at_version(const std::string& commit_id,
                                             const std::string& path) const;

  // Batched form of file_at_version: one git process for all paths.
  std::vector<std::optional<std::string>> files_at_version(
      const std::string& commit_id, std::span<const std::string> paths) const;

  bool file_exists(const std::string& commit_id, const std::string& path) const;

  // Sorted repository-relative paths of every file at commit.
  std::vector<std::string> list_files(const std::string& commit_id) const;

  // Paths whose content differs between the two commits (added, deleted or
  // modified), sorted.
  std::vector<std::string> changed_paths(const std::string& commit_a,
                                         const std::string& commit_b) const;

  // Line ranges removed from path in a and added in b. A path missing on one
  // side counts as empty text; binary content yields an empty diff.
  LineDiff diff_lines(const std::string& commit_a, const std::string& commit_b,
                      const std::string& path) const;

  // Added plus deleted text lines over all files between two commits.
  std::int64_t changed_line_count(const std::string& commit_a,
                                  const std::string& commit_b) const;

  AuthorCounts distinct_authors(const std::string& path) const;

 private:
  struct Impl;
  explicit Repository(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

std::vector<CommitRecord> enumerate_commits(
    const std::filesystem::path& repo_path);

// Lines changed between the previous sample and a later commit.
using DeltaFn = std::function<std::int64_t(const CommitRecord& previous_sample,
                                           const CommitRecord& candidate)>;

inline constexpr std::int64_t kDefaultDeltaThreshold = 200;

// Samples the oldest commit, then each earliest commit whose delta against
// the previous sample reaches delta_threshold; the newest commit always
// closes the list. Without a delta function the delta is the sum of
// per-commit changed_line_count since the previous sample.
std::vector<SampledVersion> sample_versions(
    std::span<const CommitRecord> commits,
    std::int64_t delta_threshold = kDefaultDeltaThreshold,
    const DeltaFn& delta = {});

// Delta function measuring the direct tree diff against the previous sample.
DeltaFn direct_delta(const Repository& repo);

// The trailing ceil(S * window_fraction) samples (at least 2) and the steps
// between them; recent_steps is the last ceil(|steps| * recent_fraction).
// Throws Error{kTooFewSamples} when fewer than 2 samples exist.
CheckedWindow checked_window(std::span<const SampledVersion> samples,
                             double window_fraction = 0.1,
                             double recent_fraction = 0.25);

// Authors of commits touching path, and all authors, over the whole list.
AuthorCounts distinct_authors(const std::string& path,
                              std::span<const CommitRecord> commits);

// ceil(count * fraction), tolerant of binary floating-point error.
std::size_t fraction_ceil(std::size_t count, double fraction);

}  // namespace crec

#endif  // CREC_REPO_MINER_H_
