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

#include "crec/corpus.h"

#include <algorithm>

#include "crec/common.h"

namespace crec {
namespace {

bool is_type_keyword(const Lexeme& l) {
  return l.kind == LexemeKind::kKeyword &&
         (l.text == "class" || l.text == "interface" || l.text == "enum");
}

bool is_primitive(const Lexeme& l) {
  static const std::set<std::string, std::less<>> kPrimitive = {
      "boolean", "byte", "char", "double", "float", "int", "long", "short"};
  return l.kind == LexemeKind::kKeyword && kPrimitive.contains(l.text);
}

// Fields: "Type name ;", "Type name =", "Type name ," directly in a class
// body, outside parentheses.
std::set<std::string> scan_fields(const std::vector<Lexeme>& lx) {
  std::set<std::string> fields;
  std::vector<bool> class_body;  // per open brace
  int parens = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const Lexeme& l = lx[i];
    if (l.is("{")) {
      class_body.push_back(classify_brace(lx, i).kind == BraceKind::kClassBody);
      continue;
    }
    if (l.is("}")) {
      if (!class_body.empty()) class_body.pop_back();
      continue;
    }
    if (l.is("(")) ++parens;
    if (l.is(")")) parens = std::max(0, parens - 1);
    if (class_body.empty() || !class_body.back() || parens != 0) continue;
    if (!l.is_identifier() || i == 0 || i + 1 >= lx.size()) continue;
    const Lexeme& next = lx[i + 1];
    if (!(next.is(";") || next.is("=") || next.is(","))) continue;
    const Lexeme& prev = lx[i - 1];
    if (prev.is_identifier() || prev.is(">") || prev.is(">>") || prev.is("]") ||
        is_primitive(prev)) {
      fields.insert(l.text);
    }
  }
  return fields;
}

void scan_types(const std::vector<Lexeme>& lx, SourceFile& file) {
  int depth = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (lx[i].is("{")) ++depth;
    if (lx[i].is("}")) depth = std::max(0, depth - 1);
    if (!is_type_keyword(lx[i]) || (i > 0 && lx[i - 1].is("."))) continue;
    if (i + 1 >= lx.size() || !lx[i + 1].is_identifier()) continue;
    const std::string name = lx[i + 1].text;
    if (depth == 0 && file.top_class.empty()) file.top_class = name;
    std::vector<std::string> supers;
    bool in_clause = false;
    int angle = 0;
    for (std::size_t j = i + 2; j < lx.size() && !lx[j].is("{") && !lx[j].is(";");
         ++j) {
      const Lexeme& t = lx[j];
      if (t.is_keyword("extends") || t.is_keyword("implements")) {
        in_clause = true;
        continue;
      }
      if (t.is("<")) ++angle;
      if (t.is(">")) angle = std::max(0, angle - 1);
      if (t.is(">>")) angle = std::max(0, angle - 2);
      if (!in_clause || angle > 0 || !t.is_identifier()) continue;
      // Qualified names keep their last segment.
      if (j + 1 < lx.size() && lx[j + 1].is(".")) continue;
      supers.push_back(t.text);
    }
    auto& entry = file.supertypes[name];
    entry.insert(entry.end(), supers.begin(), supers.end());
  }
}

}  // namespace

SourceFile analyze_source(std::string path, std::string text) {
  SourceFile file;
  file.path = std::move(path);
  file.text = std::move(text);
  file.lexemes = std::make_shared<const std::vector<Lexeme>>(lex(file.text));
  BlockExtraction extraction = extract_blocks(file.lexemes, file.path);
  file.blocks = std::move(extraction.blocks);
  file.diagnostics = std::move(extraction.diagnostics);
  file.field_names = scan_fields(*file.lexemes);
  scan_types(*file.lexemes, file);
  return file;
}

bool has_source_extension(const std::string& path,
                          const std::vector<std::string>& extensions) {
  return std::any_of(extensions.begin(), extensions.end(), [&](const auto& ext) {
    return path.size() >= ext.size() &&
           path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  });
}

std::string parent_directory(const std::string& path) {
  auto slash = path.rfind('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::string file_name(const std::string& path) {
  auto slash = path.rfind('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

VersionCorpus::VersionCorpus(std::size_t version, std::string commit_id,
                             std::vector<SourceFile> files,
                             std::vector<std::string> all_paths)
    : version_(version),
      commit_id_(std::move(commit_id)),
      files_(std::move(files)),
      all_paths_(std::move(all_paths)) {
  std::sort(files_.begin(), files_.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  std::sort(all_paths_.begin(), all_paths_.end());
  for (std::size_t i = 0; i < files_.size(); ++i) {
    by_path_.emplace(files_[i].path, i);
    for (const auto& [cls, supers] : files_[i].supertypes) {
      auto& entry = hierarchy_[cls];
      entry.insert(entry.end(), supers.begin(), supers.end());
    }
  }
}

const SourceFile* VersionCorpus::file(const std::string& path) const {
  auto it = by_path_.find(path);
  return it == by_path_.end() ? nullptr : &files_[it->second];
}

std::vector<CodeBlock> VersionCorpus::all_blocks() const {
  std::vector<CodeBlock> blocks;
  for (const auto& f : files_) {
    blocks.insert(blocks.end(), f.blocks.begin(), f.blocks.end());
  }
  return blocks;
}

const CodeBlock* VersionCorpus::find_block(const Location& location) const {
  const SourceFile* f = file(location.path);
  if (!f) return nullptr;
  // Outermost block first when two share a line span.
  for (const auto& b : f->blocks) {
    if (b.start_line == location.start_line && b.end_line == location.end_line) {
      return &b;
    }
  }
  return nullptr;
}

std::vector<const CodeBlock*> VersionCorpus::blocks_in(
    const std::string& path) const {
  std::vector<const CodeBlock*> out;
  if (const SourceFile* f = file(path)) {
    for (const auto& b : f->blocks) out.push_back(&b);
  }
  return out;
}

std::vector<const CodeBlock*> VersionCorpus::method_bodies(
    const std::string& name) const {
  std::vector<const CodeBlock*> out;
  for (const auto& f : files_) {
    for (const auto& b : f.blocks) {
      if (b.is_method_body && b.enclosing_method_name == name) out.push_back(&b);
    }
  }
  return out;
}

std::set<std::string> VersionCorpus::sibling_names(const std::string& dir) const {
  std::set<std::string> names;
  for (const auto& p : all_paths_) {
    if (parent_directory(p) == dir) names.insert(file_name(p));
  }
  return names;
}

std::set<std::string> VersionCorpus::ancestors(const std::string& class_name) const {
  std::set<std::string> seen;
  std::vector<std::string> work{class_name};
  while (!work.empty()) {
    std::string cls = std::move(work.back());
    work.pop_back();
    if (!seen.insert(cls).second) continue;
    auto it = hierarchy_.find(cls);
    if (it == hierarchy_.end()) continue;
    for (const auto& s : it->second) work.push_back(s);
  }
  return seen;
}

VersionCorpus load_version(const Repository& repo, const SampledVersion& sample,
                           const std::vector<std::string>& extensions) {
  std::vector<std::string> paths = repo.list_files(sample.commit_id);
  std::vector<std::string> sources;
  for (const auto& p : paths) {
    if (has_source_extension(p, extensions)) sources.push_back(p);
  }
  auto texts = repo.files_at_version(sample.commit_id, sources);
  std::vector<SourceFile> files;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!texts[i]) continue;
    files.push_back(analyze_source(sources[i], std::move(*texts[i])));
  }
  return VersionCorpus(sample.index, sample.commit_id, std::move(files),
                       std::move(paths));
}

CorpusCache::CorpusCache(const Repository& repo,
                         std::vector<SampledVersion> samples,
                         std::vector<std::string> extensions)
    : repo_(repo), samples_(std::move(samples)), extensions_(std::move(extensions)) {}

const VersionCorpus& CorpusCache::at(std::size_t version) const {
  std::lock_guard lock(mu_);
  auto it = cache_.find(version);
  if (it != cache_.end()) return *it->second;
  if (version >= samples_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no sampled version " + std::to_string(version));
  }
  auto corpus = std::make_unique<VersionCorpus>(
      load_version(repo_, samples_[version], extensions_));
  const VersionCorpus& ref = *corpus;
  cache_.emplace(version, std::move(corpus));
  return ref;
}

}  // namespace crec
