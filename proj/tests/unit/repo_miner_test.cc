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

#include "crec/repo_miner.h"

#include <gtest/gtest.h>

#include <map>
#include <sstream>
#include <string>

#include "crec/common.h"
#include "support/fixture_repo.h"

namespace crec {
namespace {

using testing::FixtureRepo;
using testing::ScratchDir;

std::string lines(const std::string& prefix, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += prefix + std::to_string(i) + "\n";
  return out;
}

// Added plus deleted lines between two commits according to git itself.
std::int64_t git_numstat(const FixtureRepo& repo, const std::string& a,
                         const std::string& b) {
  std::istringstream in(repo.git("diff --numstat " + a + " " + b));
  std::int64_t total = 0;
  std::string added, deleted, path;
  while (in >> added >> deleted >> path) {
    if (added == "-") continue;
    total += std::stoll(added) + std::stoll(deleted);
  }
  return total;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(EnumerateCommits, SingleCommitListsAllFiles) {
  FixtureRepo repo("single");
  repo.write("a.java", "class A {}\n");
  repo.write("b/c.java", "class C {}\n");
  repo.commit("one");
  const auto commits = enumerate_commits(repo.root());
  ASSERT_EQ(commits.size(), 1u);
  EXPECT_EQ(commits[0].changed_files, (std::vector<std::string>{"a.java", "b/c.java"}));
  EXPECT_EQ(commits[0].changed_line_count, 2);
  EXPECT_EQ(commits[0].author, "alice <alice@example.com>");
}

TEST(EnumerateCommits, ChangedFilesPerCommit) {
  FixtureRepo repo("three");
  repo.write("a.java", "x\n");
  repo.commit("1");
  repo.write("b.java", "y\n");
  repo.commit("2");
  repo.write("a.java", "x\nz\n");
  repo.commit("3");
  const auto commits = enumerate_commits(repo.root());
  ASSERT_EQ(commits.size(), 3u);
  EXPECT_EQ(commits[0].changed_files, std::vector<std::string>{"a.java"});
  EXPECT_EQ(commits[1].changed_files, std::vector<std::string>{"b.java"});
  EXPECT_EQ(commits[2].changed_files, std::vector<std::string>{"a.java"});
  // Timestamps advance and line counts agree with git's own numstat.
  EXPECT_LT(commits[0].timestamp, commits[1].timestamp);
  for (std::size_t i = 1; i < commits.size(); ++i) {
    EXPECT_EQ(commits[i].changed_line_count,
              git_numstat(repo, commits[i - 1].id, commits[i].id));
  }
}

TEST(EnumerateCommits, FollowsFirstParentOnly) {
  FixtureRepo repo("merge");
  repo.write("a.txt", "a\n");
  repo.commit("base");
  repo.git("checkout -q -b side");
  repo.write("side.txt", "s\n");
  repo.commit("side work");
  repo.git("checkout -q main");
  repo.write("b.txt", "b\n");
  repo.commit("main work");
  repo.git("merge -q --no-ff side -m merge");
  const auto commits = enumerate_commits(repo.root());
  ASSERT_EQ(commits.size(), 3u);
  EXPECT_EQ(commits[2].changed_files, std::vector<std::string>{"side.txt"});
}

TEST(EnumerateCommits, Errors) {
  ScratchDir dir("not-a-repo");
  EXPECT_EQ(code_of([&] { enumerate_commits(dir.path()); }), ErrorCode::kNotARepository);
  FixtureRepo empty("empty");
  EXPECT_EQ(code_of([&] { enumerate_commits(empty.root()); }), ErrorCode::kEmptyRepository);
}

CommitRecord record(int lines) {
  CommitRecord c;
  c.id = "c" + std::to_string(lines);
  c.changed_line_count = lines;
  return c;
}

TEST(SampleVersions, SingleCommit) {
  const std::vector<CommitRecord> commits = {record(5)};
  const auto samples = sample_versions(commits);
  ASSERT_EQ(samples.size(), 1u);
  EXPECT_EQ(samples[0].index, 0u);
}

TEST(SampleVersions, ThreeSmallCommitsAccumulate) {
  std::vector<CommitRecord> commits = {record(10), record(80), record(80), record(80)};
  for (std::size_t i = 0; i < commits.size(); ++i) commits[i].id = "c" + std::to_string(i);
  const auto samples = sample_versions(commits, 200);
  ASSERT_EQ(samples.size(), 2u);
  EXPECT_EQ(samples[0].commit_id, "c0");
  EXPECT_EQ(samples[1].commit_id, "c3");
  EXPECT_EQ(samples[1].cumulative_delta, 240);
}

TEST(SampleVersions, ForcedNewestSample) {
  std::vector<CommitRecord> commits = {record(10), record(250), record(5)};
  for (std::size_t i = 0; i < commits.size(); ++i) commits[i].id = "c" + std::to_string(i);
  const auto samples = sample_versions(commits, 200);
  ASSERT_EQ(samples.size(), 3u);
  EXPECT_EQ(samples[2].commit_id, "c2");
  EXPECT_EQ(samples[2].index, 2u);
}

TEST(SampleVersions, FourLargeCommitsWithDirectDelta) {
  FixtureRepo repo("large");
  for (int c = 0; c < 4; ++c) {
    repo.write("f" + std::to_string(c) + ".txt", lines("x" + std::to_string(c) + "-", 250));
    repo.commit("c" + std::to_string(c));
  }
  const Repository r = Repository::open(repo.root());
  const auto samples = sample_versions(r.commits(), 200, direct_delta(r));
  ASSERT_EQ(samples.size(), 4u);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    EXPECT_EQ(samples[i].cumulative_delta,
              git_numstat(repo, samples[i - 1].commit_id, samples[i].commit_id));
    EXPECT_GE(samples[i].cumulative_delta, 200);
  }
}

TEST(SampleVersions, DirectDeltaSeesReverts) {
  // +150 then -150: the summed delta reaches 300, the direct one is 0.
  FixtureRepo repo("revert");
  repo.write("a.txt", "base\n");
  repo.commit("base");
  repo.write("b.txt", lines("y", 150));
  repo.commit("add");
  repo.remove("b.txt");
  repo.commit("revert");
  repo.write("c.txt", "tail\n");
  repo.commit("tail");
  const Repository r = Repository::open(repo.root());
  const auto direct = sample_versions(r.commits(), 200, direct_delta(r));
  ASSERT_EQ(direct.size(), 2u);
  EXPECT_EQ(direct[1].commit_id, r.commits()[3].id);
  const auto summed = sample_versions(r.commits(), 200);
  ASSERT_EQ(summed.size(), 3u);
  EXPECT_EQ(summed[1].commit_id, r.commits()[2].id);
}

TEST(Repository, FileAtVersion) {
  FixtureRepo repo("files");
  repo.write("a.txt", "first\n");
  const auto c1 = repo.commit("1");
  repo.write("a.txt", "second\r\nwith bytes \x01\n");
  repo.write("b.txt", "new\n");
  const auto c2 = repo.commit("2");
  const Repository r = Repository::open(repo.root());
  EXPECT_FALSE(r.file_at_version(c1, "b.txt").has_value());
  EXPECT_EQ(r.file_at_version(c1, "a.txt"), "first\n");
  EXPECT_EQ(r.file_at_version(c2, "a.txt"), "second\r\nwith bytes \x01\n");
  EXPECT_TRUE(r.file_exists(c2, "b.txt"));
  EXPECT_FALSE(r.file_exists(c1, "b.txt"));
  EXPECT_EQ(code_of([&] { r.file_at_version(std::string(40, 'f'), "a.txt"); }),
            ErrorCode::kUnknownCommit);
  const std::string paths[] = {"a.txt", "missing.txt", "b.txt"};
  const auto batch = r.files_at_version(c2, paths);
  ASSERT_EQ(batch.size(), 3u);
  EXPECT_EQ(batch[0], r.file_at_version(c2, "a.txt"));
  EXPECT_FALSE(batch[1].has_value());
  EXPECT_EQ(batch[2], "new\n");
}

TEST(Repository, DiffLines) {
  FixtureRepo repo("diff");
  repo.write("a.txt", lines("l", 10));
  const auto c1 = repo.commit("1");
  std::string changed = lines("l", 10);
  changed.replace(changed.find("l4\n"), 3, "L4\n");
  repo.write("a.txt", changed);
  const auto c2 = repo.commit("2");
  repo.remove("a.txt");
  const auto c3 = repo.commit("3");
  const Repository r = Repository::open(repo.root());
  EXPECT_TRUE(r.diff_lines(c1, c1, "a.txt").empty());
  const auto d = r.diff_lines(c1, c2, "a.txt");
  EXPECT_EQ(d.removed, (std::vector<LineRange>{{5, 5}}));
  EXPECT_EQ(d.added, (std::vector<LineRange>{{5, 5}}));
  const auto gone = r.diff_lines(c2, c3, "a.txt");
  EXPECT_EQ(gone.removed, (std::vector<LineRange>{{1, 10}}));
  EXPECT_TRUE(gone.added.empty());
  EXPECT_EQ(r.changed_paths(c1, c3), std::vector<std::string>{"a.txt"});
  EXPECT_EQ(r.changed_line_count(c1, c2), git_numstat(repo, c1, c2));
}

TEST(Repository, BinaryFilesContributeNoLines) {
  FixtureRepo repo("binary");
  repo.write("a.txt", "x\n");
  const auto c1 = repo.commit("1");
  repo.write("blob.bin", std::string("\0\x01\x02\n\0\n", 6));
  const auto c2 = repo.commit("2");
  const Repository r = Repository::open(repo.root());
  EXPECT_EQ(r.changed_line_count(c1, c2), 0);
  EXPECT_TRUE(r.diff_lines(c1, c2, "blob.bin").empty());
  EXPECT_EQ(r.commits()[1].changed_files, std::vector<std::string>{"blob.bin"});
}

TEST(CheckedWindow, FortySamples) {
  std::vector<SampledVersion> samples(40);
  for (std::size_t i = 0; i < 40; ++i) {
    samples[i].index = i;
    samples[i].commit_id = "c" + std::to_string(i);
  }
  const auto w = checked_window(samples);
  ASSERT_EQ(w.steps.size(), 3u);
  EXPECT_EQ(w.steps.front().from, 36u);
  EXPECT_EQ(w.steps.back().to, 39u);
  ASSERT_EQ(w.recent_steps.size(), 1u);
  EXPECT_EQ(w.recent_steps[0], w.steps.back());
}

TEST(CheckedWindow, SmallHistoriesFallBackToTwoSamples) {
  for (std::size_t n : {2u, 10u}) {
    std::vector<SampledVersion> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i].index = i;
    const auto w = checked_window(samples);
    ASSERT_EQ(w.steps.size(), 1u);
    EXPECT_EQ(w.steps[0].from, n - 2);
    EXPECT_EQ(w.recent_steps.size(), 1u);
  }
  std::vector<SampledVersion> one(1);
  EXPECT_EQ(code_of([&] { checked_window(one); }), ErrorCode::kTooFewSamples);
}

TEST(CheckedWindow, AlwaysASuffix) {
  for (std::size_t n = 2; n < 120; ++n) {
    std::vector<SampledVersion> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i].index = i;
    const auto w = checked_window(samples);
    ASSERT_FALSE(w.steps.empty());
    EXPECT_EQ(w.steps.back().to, n - 1);
    for (std::size_t k = 0; k < w.steps.size(); ++k) {
      EXPECT_EQ(w.steps[k].to, w.steps[k].from + 1);
    }
    EXPECT_LE(w.recent_steps.size(), w.steps.size());
  }
}

TEST(DistinctAuthors, Counts) {
  FixtureRepo repo("authors");
  repo.write("a.txt", "1\n");
  repo.commit("1", "Alice", "alice@example.com");
  repo.write("a.txt", "2\n");
  repo.commit("2", "Bob", "bob@example.com");
  repo.write("b.txt", "3\n");
  repo.commit("3", "Carol", "carol@example.com");
  const Repository r = Repository::open(repo.root());
  EXPECT_EQ(r.distinct_authors("a.txt"), (AuthorCounts{2, 3}));
  EXPECT_EQ(r.distinct_authors("never.txt"), (AuthorCounts{0, 3}));
  EXPECT_EQ(distinct_authors("b.txt", r.commits()), (AuthorCounts{1, 3}));
}

TEST(SampleVersions, DeterministicAcrossOpens) {
  FixtureRepo repo("det");
  for (int c = 0; c < 5; ++c) {
    repo.write("f.txt", lines("v" + std::to_string(c), 120));
    repo.commit("c");
  }
  const Repository a = Repository::open(repo.root());
  const Repository b = Repository::open(repo.root());
  EXPECT_EQ(sample_versions(a.commits(), 200, direct_delta(a)),
            sample_versions(b.commits(), 200, direct_delta(b)));
}

}  // namespace
}  // namespace crec
