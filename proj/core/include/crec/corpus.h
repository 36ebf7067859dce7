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

#ifndef CREC_CORPUS_H_
#define CREC_CORPUS_H_

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "crec/clone_detector.h"
#include "crec/repo_miner.h"

namespace crec {

// One analyzed source file at one version, with the shallow lexical scans
// the feature extractors need.
struct SourceFile {
  std::string path;
  std::string text;
  std::shared_ptr<const std::vector<Lexeme>> lexemes;
  std::vector<CodeBlock> blocks;
  std::vector<std::string> diagnostics;
  std::set<std::string> field_names;
  std::string top_class;  // first top-level class-like declaration
  std::map<std::string, std::vector<std::string>> supertypes;  // per class
};

SourceFile analyze_source(std::string path, std::string text);

bool has_source_extension(const std::string& path,
                          const std::vector<std::string>& extensions);

std::string parent_directory(const std::string& path);
std::string file_name(const std::string& path);

// All analyzed files of one sampled version plus the full file listing.
class VersionCorpus {
 public:
  VersionCorpus() = default;
  VersionCorpus(std::size_t version, std::string commit_id,
                std::vector<SourceFile> files, std::vector<std::string> all_paths);

  std::size_t version() const { return version_; }
  const std::string& commit_id() const { return commit_id_; }
  const std::vector<SourceFile>& files() const { return files_; }
  const SourceFile* file(const std::string& path) const;

  std::vector<CodeBlock> all_blocks() const;
  const CodeBlock* find_block(const Location& location) const;
  std::vector<const CodeBlock*> blocks_in(const std::string& path) const;
  // Method body blocks declared under the given name, in file order.
  std::vector<const CodeBlock*> method_bodies(const std::string& name) const;

  // Names of files directly inside dir (every file, not only sources).
  std::set<std::string> sibling_names(const std::string& dir) const;

  // Class name plus transitive supertypes known from the scanned files.
  std::set<std::string> ancestors(const std::string& class_name) const;

 private:
  std::size_t version_ = 0;
  std::string commit_id_;
  std::vector<SourceFile> files_;
  std::map<std::string, std::size_t> by_path_;
  std::vector<std::string> all_paths_;
  std::map<std::string, std::vector<std::string>> hierarchy_;
};

VersionCorpus load_version(const Repository& repo, const SampledVersion& sample,
                           const std::vector<std::string>& extensions);

// Lazily loads and memoizes corpora per sampled version. Thread-safe.
class CorpusCache {
 public:
  CorpusCache(const Repository& repo, std::vector<SampledVersion> samples,
              std::vector<std::string> extensions);

  const VersionCorpus& at(std::size_t version) const;
  const std::vector<SampledVersion>& samples() const { return samples_; }
  const Repository& repo() const { return repo_; }

 private:
  const Repository& repo_;
  std::vector<SampledVersion> samples_;
  std::vector<std::string> extensions_;
  mutable std::mutex mu_;
  mutable std::map<std::size_t, std::unique_ptr<VersionCorpus>> cache_;
};

}  // namespace crec

#endif  // CREC_CORPUS_H_
