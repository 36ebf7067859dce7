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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "crec/common.h"
#include "process.h"

namespace crec {
namespace {

using Tree = std::map<std::string, std::string>;  // path -> blob id
using BlobPtr = std::shared_ptr<const std::string>;

constexpr std::size_t kBinarySniffBytes = 8000;

bool looks_binary(const std::string& content) {
  const std::size_t n = std::min(content.size(), kBinarySniffBytes);
  return content.find('\0', 0) < n;
}

std::string lowercase(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

struct Repository::Impl {
  std::filesystem::path path;
  std::vector<CommitRecord> commits;
  std::unordered_map<std::string, std::size_t> position;
  std::vector<std::string> author_of;  // parallel to commits

  mutable std::mutex mu;
  mutable std::unordered_map<std::string, std::shared_ptr<const Tree>> trees;
  mutable std::unordered_map<std::string, BlobPtr> blobs;

  internal::ProcessResult git(std::vector<std::string> args,
                              const std::optional<std::string>& input = {}) const {
    std::vector<std::string> argv{"git", "-C", path.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    return internal::run_process(argv, input);
  }

  void require_commit(const std::string& id) const {
    if (!position.contains(id)) {
      throw Error(ErrorCode::kUnknownCommit, "unknown commit: " + id);
    }
  }

  // Callers hold mu.
  std::shared_ptr<const Tree> tree_locked(const std::string& commit) const {
    if (auto it = trees.find(commit); it != trees.end()) return it->second;
    auto result = git({"ls-tree", "-r", "-z", "--full-tree", commit});
    if (result.exit_status != 0) {
      throw Error(ErrorCode::kProcessError, "git ls-tree failed for " + commit);
    }
    auto tree = std::make_shared<Tree>();
    std::size_t pos = 0;
    const std::string& out = result.out;
    while (pos < out.size()) {
      std::size_t end = out.find('\0', pos);
      if (end == std::string::npos) end = out.size();
      std::string_view entry(out.data() + pos, end - pos);
      pos = end + 1;
      // "<mode> SP <type> SP <oid> TAB <path>"
      auto tab = entry.find('\t');
      if (tab == std::string_view::npos) continue;
      std::string_view meta = entry.substr(0, tab);
      auto sp1 = meta.find(' ');
      auto sp2 = meta.find(' ', sp1 + 1);
      if (sp1 == std::string_view::npos || sp2 == std::string_view::npos) continue;
      if (meta.substr(sp1 + 1, sp2 - sp1 - 1) != "blob") continue;
      tree->emplace(std::string(entry.substr(tab + 1)),
                    std::string(meta.substr(sp2 + 1)));
    }
    trees.emplace(commit, tree);
    return tree;
  }

  std::shared_ptr<const Tree> tree(const std::string& commit) const {
    std::lock_guard lock(mu);
    return tree_locked(commit);
  }

  // Callers hold mu. Fetches every missing blob with one cat-file process.
  void fetch_blobs_locked(const std::vector<std::string>& ids) const {
    std::string request;
    std::set<std::string> wanted;
    for (const auto& id : ids) {
      if (blobs.contains(id) || !wanted.insert(id).second) continue;
      request += id;
      request += '\n';
    }
    if (wanted.empty()) return;
    auto result = git({"cat-file", "--batch"}, request);
    if (result.exit_status != 0) {
      throw Error(ErrorCode::kProcessError, "git cat-file --batch failed");
    }
    const std::string& out = result.out;
    std::size_t pos = 0;
    while (pos < out.size()) {
      std::size_t nl = out.find('\n', pos);
      if (nl == std::string::npos) break;
      std::string header = out.substr(pos, nl - pos);
      pos = nl + 1;
      auto fields = split(header, ' ');
      if (fields.size() != 3) continue;  // "<oid> missing"
      std::size_t size = std::stoull(fields[2]);
      blobs.emplace(fields[0],
                    std::make_shared<const std::string>(out.substr(pos, size)));
      pos += size + 1;
    }
  }

  BlobPtr blob_locked(const std::string& id) const {
    fetch_blobs_locked({id});
    auto it = blobs.find(id);
    if (it == blobs.end()) {
      throw Error(ErrorCode::kProcessError, "missing blob " + id);
    }
    return it->second;
  }

  static LineDiff diff_blobs(const BlobPtr& a, const BlobPtr& b) {
    static const std::string kEmpty;
    const std::string& old_text = a ? *a : kEmpty;
    const std::string& new_text = b ? *b : kEmpty;
    if (looks_binary(old_text) || looks_binary(new_text)) return {};
    return diff_text(old_text, new_text);
  }

  // Callers hold mu.
  std::int64_t tree_delta_locked(const Tree& a, const Tree& b,
                                 std::vector<std::string>* changed) const {
    std::vector<std::pair<std::string, std::string>> pairs;  // blob ids
    std::vector<std::string> needed;
    auto note = [&](const std::string& path, const std::string& old_id,
                    const std::string& new_id) {
      if (changed) changed->push_back(path);
      pairs.emplace_back(old_id, new_id);
      if (!old_id.empty()) needed.push_back(old_id);
      if (!new_id.empty()) needed.push_back(new_id);
    };
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        note(ia->first, ia->second, "");
        ++ia;
      } else if (ia == a.end() || ib->first < ia->first) {
        note(ib->first, "", ib->second);
        ++ib;
      } else {
        if (ia->second != ib->second) note(ia->first, ia->second, ib->second);
        ++ia;
        ++ib;
      }
    }
    fetch_blobs_locked(needed);
    std::int64_t total = 0;
    for (const auto& [old_id, new_id] : pairs) {
      BlobPtr old_blob = old_id.empty() ? nullptr : blobs.at(old_id);
      BlobPtr new_blob = new_id.empty() ? nullptr : blobs.at(new_id);
      total += diff_blobs(old_blob, new_blob).changed_lines();
    }
    return total;
  }
};

Repository::Repository(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Repository::Repository(Repository&&) noexcept = default;
Repository& Repository::operator=(Repository&&) noexcept = default;
Repository::~Repository() = default;

Repository Repository::open(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_directory(path, ec)) {
    throw Error(ErrorCode::kNotARepository,
                "not a directory: " + path.string());
  }
  auto impl = std::make_unique<Impl>();
  impl->path = std::filesystem::canonical(path);

  auto top = impl->git({"rev-parse", "--show-toplevel"});
  std::string top_level = top.out;
  while (!top_level.empty() &&
         (top_level.back() == '\n' || top_level.back() == '\r')) {
    top_level.pop_back();
  }
  if (top.exit_status != 0 || top_level.empty() ||
      std::filesystem::canonical(top_level, ec) != impl->path) {
    throw Error(ErrorCode::kNotARepository,
                "not a repository root: " + path.string());
  }
  if (impl->git({"rev-parse", "--verify", "-q", "HEAD"}).exit_status != 0) {
    throw Error(ErrorCode::kEmptyRepository,
                "repository has no commits: " + path.string());
  }

  auto log = impl->git({"log", "--first-parent", "--reverse",
                        "--format=%H%x1f%at%x1f%an%x1f%ae%x1e", "HEAD"});
  if (log.exit_status != 0) {
    throw Error(ErrorCode::kProcessError, "git log failed");
  }
  for (const auto& record : split(log.out, '\x1e')) {
    std::string trimmed = record;
    trimmed.erase(0, trimmed.find_first_not_of("\r\n"));
    if (trimmed.empty()) continue;
    auto fields = split(trimmed, '\x1f');
    if (fields.size() != 4) {
      throw Error(ErrorCode::kProcessError, "unexpected git log record");
    }
    CommitRecord c;
    c.id = fields[0];
    c.timestamp = std::stoll(fields[1]);
    c.author = lowercase(fields[2] + " <" + fields[3] + ">");
    impl->position.emplace(c.id, impl->commits.size());
    impl->commits.push_back(std::move(c));
  }
  if (impl->commits.empty()) {
    throw Error(ErrorCode::kEmptyRepository, "no commits on first-parent chain");
  }

  {
    std::lock_guard lock(impl->mu);
    const Tree empty;
    std::shared_ptr<const Tree> previous;
    for (auto& c : impl->commits) {
      auto current = impl->tree_locked(c.id);
      c.changed_line_count = impl->tree_delta_locked(
          previous ? *previous : empty, *current, &c.changed_files);
      previous = current;
    }
  }
  return Repository(std::move(impl));
}

const std::filesystem::path& Repository::path() const { return impl_->path; }

const std::vector<CommitRecord>& Repository::commits() const {
  return impl_->commits;
}

bool Repository::has_commit(const std::string& commit_id) const {
  return impl_->position.contains(commit_id);
}

std::optional<std::string> Repository::file_at_version(
    const std::string& commit_id, const std::string& path) const {
  impl_->require_commit(commit_id);
  std::lock_guard lock(impl_->mu);
  auto tree = impl_->tree_locked(commit_id);
  auto it = tree->find(path);
  if (it == tree->end()) return std::nullopt;
  return *impl_->blob_locked(it->second);
}

std::vector<std::optional<std::string>> Repository::files_at_version(
    const std::string& commit_id, std::span<const std::string> paths) const {
  impl_->require_commit(commit_id);
  std::lock_guard lock(impl_->mu);
  auto tree = impl_->tree_locked(commit_id);
  std::vector<std::string> ids;
  for (const auto& p : paths) {
    if (auto it = tree->find(p); it != tree->end()) ids.push_back(it->second);
  }
  impl_->fetch_blobs_locked(ids);
  std::vector<std::optional<std::string>> out;
  out.reserve(paths.size());
  for (const auto& p : paths) {
    auto it = tree->find(p);
    if (it == tree->end()) {
      out.emplace_back();
    } else {
      out.emplace_back(*impl_->blobs.at(it->second));
    }
  }
  return out;
}

bool Repository::file_exists(const std::string& commit_id,
                             const std::string& path) const {
  impl_->require_commit(commit_id);
  return impl_->tree(commit_id)->contains(path);
}

std::vector<std::string> Repository::list_files(
    const std::string& commit_id) const {
  impl_->require_commit(commit_id);
  auto tree = impl_->tree(commit_id);
  std::vector<std::string> paths;
  paths.reserve(tree->size());
  for (const auto& [p, id] : *tree) paths.push_back(p);
  return paths;
}

std::vector<std::string> Repository::changed_paths(
    const std::string& commit_a, const std::string& commit_b) const {
  impl_->require_commit(commit_a);
  impl_->require_commit(commit_b);
  auto a = impl_->tree(commit_a);
  auto b = impl_->tree(commit_b);
  std::vector<std::string> out;
  for (const auto& [p, id] : *a) {
    auto it = b->find(p);
    if (it == b->end() || it->second != id) out.push_back(p);
  }
  for (const auto& [p, id] : *b) {
    if (!a->contains(p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LineDiff Repository::diff_lines(const std::string& commit_a,
                                const std::string& commit_b,
                                const std::string& path) const {
  impl_->require_commit(commit_a);
  impl_->require_commit(commit_b);
  std::lock_guard lock(impl_->mu);
  auto a = impl_->tree_locked(commit_a);
  auto b = impl_->tree_locked(commit_b);
  auto ia = a->find(path);
  auto ib = b->find(path);
  BlobPtr old_blob = ia == a->end() ? nullptr : impl_->blob_locked(ia->second);
  BlobPtr new_blob = ib == b->end() ? nullptr : impl_->blob_locked(ib->second);
  if (old_blob && new_blob && ia->second == ib->second) return {};
  return Impl::diff_blobs(old_blob, new_blob);
}

std::int64_t Repository::changed_line_count(const std::string& commit_a,
                                            const std::string& commit_b) const {
  impl_->require_commit(commit_a);
  impl_->require_commit(commit_b);
  std::lock_guard lock(impl_->mu);
  auto a = impl_->tree_locked(commit_a);
  auto b = impl_->tree_locked(commit_b);
  return impl_->tree_delta_locked(*a, *b, nullptr);
}

AuthorCounts Repository::distinct_authors(const std::string& path) const {
  return crec::distinct_authors(path, impl_->commits);
}

std::vector<CommitRecord> enumerate_commits(
    const std::filesystem::path& repo_path) {
  return Repository::open(repo_path).commits();
}

std::vector<SampledVersion> sample_versions(
    std::span<const CommitRecord> commits, std::int64_t delta_threshold,
    const DeltaFn& delta) {
  if (commits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no commits to sample");
  }
  if (delta_threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument, "delta_threshold must be >= 1");
  }
  std::vector<SampledVersion> samples;
  samples.push_back({0, commits.front().id, 0});
  std::size_t previous = 0;
  std::int64_t running = 0;
  std::int64_t last_delta = 0;
  for (std::size_t i = 1; i < commits.size(); ++i) {
    std::int64_t d;
    if (delta) {
      d = delta(commits[previous], commits[i]);
    } else {
      running += commits[i].changed_line_count;
      d = running;
    }
    last_delta = d;
    if (d >= delta_threshold) {
      samples.push_back({samples.size(), commits[i].id, d});
      previous = i;
      running = 0;
    }
  }
  if (previous != commits.size() - 1) {
    samples.push_back({samples.size(), commits.back().id, last_delta});
  }
  return samples;
}

DeltaFn direct_delta(const Repository& repo) {
  return [&repo](const CommitRecord& previous, const CommitRecord& candidate) {
    return repo.changed_line_count(previous.id, candidate.id);
  };
}

std::size_t fraction_ceil(std::size_t count, double fraction) {
  const double scaled = static_cast<double>(count) * fraction;
  return static_cast<std::size_t>(std::ceil(scaled - 1e-9));
}

CheckedWindow checked_window(std::span<const SampledVersion> samples,
                             double window_fraction, double recent_fraction) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kTooFewSamples,
                "checked window needs at least 2 sampled versions");
  }
  std::size_t width = std::max<std::size_t>(
      2, fraction_ceil(samples.size(), window_fraction));
  width = std::min(width, samples.size());
  CheckedWindow window;
  for (std::size_t i = samples.size() - width; i + 1 < samples.size(); ++i) {
    window.steps.push_back({samples[i].index, samples[i + 1].index,
                            samples[i].commit_id, samples[i + 1].commit_id});
  }
  std::size_t recent = std::max<std::size_t>(
      1, fraction_ceil(window.steps.size(), recent_fraction));
  recent = std::min(recent, window.steps.size());
  window.recent_steps.assign(window.steps.end() - static_cast<std::ptrdiff_t>(recent),
                             window.steps.end());
  return window;
}

AuthorCounts distinct_authors(const std::string& path,
                              std::span<const CommitRecord> commits) {
  std::set<std::string> all;
  std::set<std::string> touching;
  for (const auto& c : commits) {
    all.insert(c.author);
    if (std::binary_search(c.changed_files.begin(), c.changed_files.end(),
                           path)) {
      touching.insert(c.author);
    }
  }
  return {touching.size(), all.size()};
}

}  // namespace crec
