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

#include "crec/features.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iterator>
#include <limits>

#include "crec/common.h"
#include "crec/levenshtein.h"
#include "crec/multiset_diff.h"

namespace crec {

const std::array<std::string, kFeatureCount>& feature_names() {
  static const auto kNames = [] {
    std::array<std::string, kFeatureCount> names;
    for (std::size_t k = 0; k < kFeatureCount; ++k) names[k] = "F" + std::to_string(k + 1);
    return names;
  }();
  return kNames;
}

FeatureCategory feature_category(std::size_t k) {
  if (k < 1 || k > kFeatureCount) {
    throw Error(ErrorCode::kInvalidArgument, "no feature F" + std::to_string(k));
  }
  if (k <= 11) return FeatureCategory::kCode;
  if (k <= 17) return FeatureCategory::kHistory;
  if (k <= 23) return FeatureCategory::kLocation;
  if (k <= 29) return FeatureCategory::kDiff;
  return FeatureCategory::kCoChange;
}

std::vector<std::size_t> category_features(FeatureCategory category) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    if (feature_category(k) == category) out.push_back(k);
  }
  return out;
}

const char* category_name(FeatureCategory category) {
  switch (category) {
    case FeatureCategory::kCode: return "Code";
    case FeatureCategory::kHistory: return "History";
    case FeatureCategory::kLocation: return "Location";
    case FeatureCategory::kDiff: return "Diff";
    case FeatureCategory::kCoChange: return "CoChange";
  }
  return "";
}

const char* aggregation_name(Aggregation aggregation) {
  return aggregation == Aggregation::kMax ? "max" : "mean";
}

Aggregation parse_aggregation(std::string_view text) {
  if (text == "mean") return Aggregation::kMean;
  if (text == "max") return Aggregation::kMax;
  throw Error(ErrorCode::kConfigError,
              "aggregation must be mean or max, got '" + std::string(text) + "'");
}

namespace {

struct Statement {
  std::size_t begin;
  std::size_t end;  // index of the terminating ';'
};

std::vector<Statement> split_statements(std::span<const Lexeme> lx) {
  std::vector<Statement> out;
  int parens = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const Lexeme& l = lx[i];
    if (l.is("(")) ++parens;
    if (l.is(")")) parens = std::max(0, parens - 1);
    if (parens != 0) continue;
    if (l.is("{") || l.is("}")) {
      start = i + 1;
    } else if (l.is(";")) {
      if (i > start) out.push_back({start, i});
      start = i + 1;
    }
  }
  return out;
}

bool is_invocation(std::span<const Lexeme> lx, const Statement& s) {
  std::size_t i = s.begin;
  if (i < s.end && (lx[i].is_keyword("this") || lx[i].is_keyword("super"))) {
    if (i + 1 < s.end && lx[i + 1].is(".")) i += 2;
  }
  if (i >= s.end || !lx[i].is_identifier()) return false;
  ++i;
  while (i + 1 < s.end && lx[i].is(".") && lx[i + 1].is_identifier()) i += 2;
  return i < s.end && lx[i].is("(");
}

bool has_arithmetic(std::span<const Lexeme> lx, const Statement& s) {
  static const std::set<std::string, std::less<>> kOps = {
      "+", "-", "*", "/", "%", "+=", "-=", "*=", "/=", "%="};
  for (std::size_t i = s.begin; i < s.end; ++i) {
    if (lx[i].kind != LexemeKind::kPunct || !kOps.contains(lx[i].text)) continue;
    const bool string_left = i > s.begin && lx[i - 1].kind == LexemeKind::kStringLiteral;
    const bool string_right =
        i + 1 < s.end && lx[i + 1].kind == LexemeKind::kStringLiteral;
    if (!string_left && !string_right) return true;
  }
  return false;
}

std::size_t decision_points(std::span<const Lexeme> lx) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const Lexeme& l = lx[i];
    if (l.is_keyword("if") || l.is_keyword("for") || l.is_keyword("while") ||
        l.is_keyword("case") || l.is_keyword("catch") || l.is("&&") || l.is("||")) {
      ++n;
    } else if (l.is("?")) {
      // Skip generic wildcards such as List<?> and <? extends T>.
      const bool wildcard = i + 1 < lx.size() &&
                            (lx[i + 1].is(">") || lx[i + 1].is(",") ||
                             lx[i + 1].is(">>") || lx[i + 1].is_keyword("extends") ||
                             lx[i + 1].is_keyword("super"));
      if (!wildcard) ++n;
    }
  }
  return n;
}

std::size_t field_accesses(std::span<const Lexeme> lx,
                           const std::set<std::string>* fields) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (!lx[i].is_identifier()) continue;
    const bool after_dot = i > 0 && lx[i - 1].is(".");
    if (after_dot) {
      if (i > 1 && lx[i - 2].is_keyword("this")) ++n;
      continue;
    }
    const bool call = i + 1 < lx.size() && lx[i + 1].is("(");
    if (!call && fields && fields->contains(lx[i].text)) ++n;
  }
  return n;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool preceded_by_control_line(std::span<const std::string_view> lines, int start_line) {
  static const std::set<std::string, std::less<>> kControl = {
      "if", "else", "for", "while", "do", "switch", "case", "default",
      "try", "catch", "finally"};
  for (int idx = start_line - 2; idx >= 0; --idx) {
    if (static_cast<std::size_t>(idx) >= lines.size()) continue;
    std::string_view line = trim(lines[idx]);
    if (line.empty()) continue;
    std::size_t len = 0;
    while (len < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[len])) || line[len] == '_')) {
      ++len;
    }
    return kControl.contains(line.substr(0, len));
  }
  return false;
}

}  // namespace

bool is_test_path(const std::string& path) {
  std::size_t pos = 0;
  while (true) {
    const std::size_t slash = path.find('/', pos);
    if (slash == std::string::npos) break;
    const std::string_view seg(path.data() + pos, slash - pos);
    if (seg == "test" || seg == "tests") return true;
    pos = slash + 1;
  }
  std::string stem = file_name(path);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
  auto ends_with = [&](std::string_view suffix) {
    return stem.size() >= suffix.size() &&
           stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with("Test") || ends_with("Tests");
}

CloneFeatures extract_code_features(const CodeBlock& clone,
                                    const SourceContext& context) {
  CloneFeatures out;
  auto& v = out.values;
  const auto lx = clone.lexemes();
  const auto statements = split_statements(lx);

  v[0] = clone.line_span();
  v[1] = static_cast<double>(clone.tokens.size());
  v[2] = 1.0 + static_cast<double>(decision_points(lx));
  v[3] = static_cast<double>(field_accesses(lx, context.field_names));

  std::size_t invocations = 0;
  std::size_t arithmetic = 0;
  for (const auto& s : statements) {
    if (is_invocation(lx, s)) ++invocations;
    if (has_arithmetic(lx, s)) ++arithmetic;
  }
  const double n = static_cast<double>(statements.size());
  v[4] = statements.empty() ? 0.0 : invocations / n;
  v[5] = clone.enclosing_method_line_count && *clone.enclosing_method_line_count > 0
             ? std::min(1.0, static_cast<double>(clone.line_span()) /
                                 *clone.enclosing_method_line_count)
             : 1.0;
  v[6] = statements.empty() ? 0.0 : arithmetic / n;

  // Brace balance inside a block's own braces always holds, so F8 hinges on
  // the first token.
  const Lexeme* first = nullptr;
  int balance = 0;
  bool balanced = true;
  for (const auto& l : lx) {
    if (!first && l.is_token()) first = &l;
    if (l.is("{")) ++balance;
    if (l.is("}") && --balance < 0) balanced = false;
  }
  balanced = balanced && balance == 0;
  auto first_is = [&](std::initializer_list<std::string_view> words) {
    if (!first || first->kind != LexemeKind::kKeyword) return false;
    return std::any_of(words.begin(), words.end(),
                       [&](std::string_view w) { return first->text == w; });
  };
  v[7] = balanced && !first_is({"else", "catch", "finally", "case"}) ? 1.0 : 0.0;
  v[8] = first_is({"if", "for", "while", "switch", "do", "try"}) ? 1.0 : 0.0;
  v[9] = preceded_by_control_line(context.lines, clone.start_line) ? 1.0 : 0.0;
  v[10] = is_test_path(clone.path) ? 1.0 : 0.0;
  return out;
}

bool RepositoryHistory::file_exists(const std::string& commit,
                                    const std::string& path) const {
  return repo_.file_exists(commit, path);
}

std::vector<std::string> RepositoryHistory::changed_paths(const std::string& a,
                                                          const std::string& b) const {
  return repo_.changed_paths(a, b);
}

LineDiff RepositoryHistory::diff_lines(const std::string& a, const std::string& b,
                                       const std::string& path) const {
  return repo_.diff_lines(a, b, path);
}

AuthorCounts RepositoryHistory::distinct_authors(const std::string& path) const {
  return repo_.distinct_authors(path);
}

void extract_history_features(const std::string& path,
                              const std::optional<CheckedWindow>& window,
                              const HistoryView& history, CloneFeatures& features) {
  auto& v = features.values;
  std::fill(v.begin() + 11, v.end(), 0.0);
  if (!window || window->steps.empty()) return;
  const std::string dir = parent_directory(path);

  struct StepFacts {
    bool file_changed = false;
    bool dir_changed = false;
  };
  auto facts = [&](const WindowStep& step) {
    StepFacts f;
    for (const auto& p : history.changed_paths(step.from_commit, step.to_commit)) {
      if (p == path) f.file_changed = true;
      if (parent_directory(p) == dir) f.dir_changed = true;
    }
    return f;
  };

  std::size_t exists = 0, file_changed = 0, dir_changed = 0;
  for (const auto& step : window->steps) {
    if (history.file_exists(step.to_commit, path)) ++exists;
    const StepFacts f = facts(step);
    file_changed += f.file_changed;
    dir_changed += f.dir_changed;
  }
  const double steps = static_cast<double>(window->steps.size());
  v[11] = exists / steps;
  v[12] = file_changed / steps;
  v[13] = dir_changed / steps;

  if (!window->recent_steps.empty()) {
    std::size_t recent_file = 0, recent_dir = 0;
    for (const auto& step : window->recent_steps) {
      const StepFacts f = facts(step);
      recent_file += f.file_changed;
      recent_dir += f.dir_changed;
    }
    const double recent = static_cast<double>(window->recent_steps.size());
    v[14] = recent_file / recent;
    v[15] = recent_dir / recent;
  }

  const AuthorCounts authors = history.distinct_authors(path);
  v[16] = authors.total == 0 ? 0.0
                             : static_cast<double>(authors.touching) / authors.total;
}

namespace {

std::vector<std::string> split_dirs(const std::string& dir) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= dir.size() && !dir.empty()) {
    const std::size_t slash = dir.find('/', pos);
    const std::size_t end = slash == std::string::npos ? dir.size() : slash;
    out.push_back(dir.substr(pos, end - pos));
    if (slash == std::string::npos) break;
    pos = slash + 1;
  }
  return out;
}

}  // namespace

double path_copy_score(const std::string& path_a, const std::string& path_b,
                       const std::set<std::string>& siblings_a,
                       const std::set<std::string>& siblings_b) {
  const std::string dir_a = parent_directory(path_a);
  const std::string dir_b = parent_directory(path_b);
  if (dir_a == dir_b) return 0.0;
  const auto sa = split_dirs(dir_a);
  const auto sb = split_dirs(dir_b);
  const std::size_t depth = std::min(sa.size(), sb.size());
  if (depth == 0) return 0.0;
  std::size_t suffix = 0;
  while (suffix < depth && sa[sa.size() - 1 - suffix] == sb[sb.size() - 1 - suffix]) {
    ++suffix;
  }
  std::size_t shared = 0;
  for (const auto& name : siblings_a) shared += siblings_b.contains(name);
  const std::size_t united = siblings_a.size() + siblings_b.size() - shared;
  const double jaccard = united == 0 ? 0.0 : static_cast<double>(shared) / united;
  return static_cast<double>(suffix) / depth * jaccard;
}

std::array<double, 6> extract_location_features(
    std::span<const CodeBlock* const> members, const VersionCorpus& corpus) {
  std::array<double, 6> v{};
  if (members.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a clone group needs two members");
  }
  const CodeBlock& first = *members.front();
  auto all = [&](auto pred) { return std::all_of(members.begin(), members.end(), pred); };

  v[0] = all([&](const CodeBlock* b) {
           return parent_directory(b->path) == parent_directory(first.path);
         }) ? 1.0 : 0.0;
  v[1] = all([&](const CodeBlock* b) { return b->path == first.path; }) ? 1.0 : 0.0;

  std::optional<std::set<std::string>> common;
  bool classes_known = true;
  for (const CodeBlock* b : members) {
    const SourceFile* f = corpus.file(b->path);
    if (!f || f->top_class.empty()) {
      classes_known = false;
      break;
    }
    auto anc = corpus.ancestors(f->top_class);
    if (!common) {
      common = std::move(anc);
      continue;
    }
    std::set<std::string> kept;
    std::set_intersection(common->begin(), common->end(), anc.begin(), anc.end(),
                          std::inserter(kept, kept.end()));
    common = std::move(kept);
  }
  v[2] = classes_known && common && !common->empty() ? 1.0 : 0.0;

  v[3] = first.enclosing_method_start_line &&
                 all([&](const CodeBlock* b) {
                   return b->path == first.path &&
                          b->enclosing_method_start_line ==
                              first.enclosing_method_start_line &&
                          b->enclosing_method_name == first.enclosing_method_name;
                 })
             ? 1.0
             : 0.0;

  std::size_t best = std::numeric_limits<std::size_t>::max();
  double copy = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      best = std::min(best, levenshtein(members[i]->enclosing_method_name.value_or(""),
                                        members[j]->enclosing_method_name.value_or("")));
      copy = std::max(copy, path_copy_score(
                                members[i]->path, members[j]->path,
                                corpus.sibling_names(parent_directory(members[i]->path)),
                                corpus.sibling_names(parent_directory(members[j]->path))));
    }
  }
  v[4] = static_cast<double>(best);
  v[5] = copy;
  return v;
}

std::array<double, 6> extract_diff_features(std::span<const CodeBlock* const> members) {
  if (members.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a clone group needs two members");
  }
  std::vector<const CodeBlock*> ordered(members.begin(), members.end());
  std::sort(ordered.begin(), ordered.end(), [](const CodeBlock* a, const CodeBlock* b) {
    return a->location() < b->location();
  });
  std::vector<std::vector<DiffToken>> sequences;
  for (const CodeBlock* b : ordered) sequences.push_back(diff_tokens(b->lexemes()));
  const TokenMultisetDiff diff = multiset_diff(sequences);
  const auto differential = diff.differential();

  std::array<double, 6> v{};
  v[0] = static_cast<double>(members.size());
  v[1] = static_cast<double>(differential.size());
  if (differential.empty()) return v;
  std::size_t partial = 0, variable = 0, method = 0, type = 0;
  for (const DiffColumn* c : differential) {
    partial += c->partially_same;
    variable += c->has_variable;
    method += c->has_method;
    type += c->has_type;
  }
  const double n = static_cast<double>(differential.size());
  v[2] = partial / n;
  v[3] = variable / n;
  v[4] = method / n;
  v[5] = type / n;
  return v;
}

std::array<double, 5> extract_cochange_features(
    std::span<const std::map<std::size_t, Location>> tracks,
    const std::optional<CheckedWindow>& window, const HistoryView& history) {
  std::array<double, 5> v{};
  if (!window || window->steps.empty()) return v;
  const std::size_t n = tracks.size();
  std::array<std::size_t, 5> counts{};
  for (const auto& step : window->steps) {
    std::size_t changed = 0;
    for (const auto& track : tracks) {
      auto from = track.find(step.from);
      auto to = track.find(step.to);
      const Location* any = from != track.end() ? &from->second
                            : to != track.end() ? &to->second
                                                : nullptr;
      if (!any) continue;
      const LineDiff d = history.diff_lines(step.from_commit, step.to_commit, any->path);
      bool hit = false;
      if (from != track.end()) {
        hit |= any_overlap(d.removed, {from->second.start_line, from->second.end_line});
      }
      if (to != track.end()) {
        hit |= any_overlap(d.added, {to->second.start_line, to->second.end_line});
      }
      changed += hit;
    }
    if (changed == n && n > 0) {
      ++counts[0];
    } else if (changed == 0) {
      ++counts[1];
    } else if (changed <= 3) {
      ++counts[1 + changed];
    }
  }
  const double steps = static_cast<double>(window->steps.size());
  for (std::size_t k = 0; k < 5; ++k) v[k] = counts[k] / steps;
  return v;
}

void validate_feature_vector(const FeatureVector& fv, Aggregation aggregation) {
  auto fail = [&](std::size_t k, const char* what) {
    throw Error(ErrorCode::kRangeViolation,
                "F" + std::to_string(k) + " = " + format_double(fv.at(k)) + " " + what +
                    " (lineage " + fv.lineage_id + ")");
  };
  auto is_bool = [](double x) { return x == 0.0 || x == 1.0; };
  for (std::size_t k = 1; k <= kFeatureCount; ++k) {
    const double x = fv.at(k);
    if (!std::isfinite(x)) fail(k, "is not finite");
    if (x < 0.0) fail(k, "is negative");
    const bool unit = (k >= 5 && k <= 7) || (k >= 12 && k <= 17) || k == 23 ||
                      (k >= 26 && k <= 34);
    if (unit && x > 1.0) fail(k, "exceeds 1");
    if (k >= 8 && k <= 11) {
      if (x > 1.0) fail(k, "exceeds 1");
      if (aggregation == Aggregation::kMax && !is_bool(x)) fail(k, "is not boolean");
    }
    if (k >= 18 && k <= 21 && !is_bool(x)) fail(k, "is not boolean");
  }
}

FeatureVector assemble_vector(std::span<const CloneFeatures> per_clone,
                              const std::array<double, 17>& group_features,
                              Aggregation aggregation, std::string lineage_id,
                              std::size_t version) {
  if (per_clone.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a clone group needs two members");
  }
  FeatureVector fv;
  fv.lineage_id = std::move(lineage_id);
  fv.version = version;
  for (std::size_t k = 0; k < kCloneFeatureCount; ++k) {
    double acc = aggregation == Aggregation::kMax
                     ? -std::numeric_limits<double>::infinity()
                     : 0.0;
    for (const auto& c : per_clone) {
      acc = aggregation == Aggregation::kMax ? std::max(acc, c.values[k])
                                             : acc + c.values[k];
    }
    fv.f[k] = aggregation == Aggregation::kMax
                  ? acc
                  : acc / static_cast<double>(per_clone.size());
  }
  for (std::size_t k = 0; k < group_features.size(); ++k) {
    fv.f[kCloneFeatureCount + k] = group_features[k];
  }
  validate_feature_vector(fv, aggregation);
  return fv;
}

std::optional<CheckedWindow> window_at(std::span<const SampledVersion> samples,
                                       std::size_t version,
                                       const FeatureOptions& options) {
  if (version == 0 || version >= samples.size()) return std::nullopt;
  return checked_window(samples.first(version + 1), options.window_fraction,
                        options.recent_fraction);
}

FeatureVector extract_features(const Lineage& lineage, std::size_t entry,
                               const CorpusLookup& corpora,
                               std::span<const SampledVersion> samples,
                               const HistoryView& history,
                               const FeatureOptions& options,
                               std::vector<std::string>* diagnostics) {
  const LineageEntry& group = lineage.groups.at(entry);
  const VersionCorpus* corpus = corpora(group.version);
  if (!corpus) {
    throw Error(ErrorCode::kInvalidArgument,
                "no corpus for version " + std::to_string(group.version));
  }
  std::vector<const CodeBlock*> blocks;
  for (const auto& loc : group.members) {
    const CodeBlock* b = corpus->find_block(loc);
    if (!b) {
      throw Error(ErrorCode::kInvalidArgument,
                  "clone " + loc.to_string() + " not found at version " +
                      std::to_string(group.version));
    }
    blocks.push_back(b);
  }

  const auto window = window_at(samples, group.version, options);
  if (!window && diagnostics) {
    diagnostics->push_back("WindowUnavailable: " + lineage.id + " at version " +
                           std::to_string(group.version) +
                           " has no earlier samples; F12-F17 and F30-F34 are 0");
  }

  std::vector<CloneFeatures> per_clone;
  for (const CodeBlock* b : blocks) {
    const SourceFile* file = corpus->file(b->path);
    const auto lines = split_lines(file->text);
    CloneFeatures c = extract_code_features(*b, {lines, &file->field_names});
    extract_history_features(b->path, window, history, c);
    per_clone.push_back(c);
  }

  std::array<double, 17> g{};
  const auto loc = extract_location_features(blocks, *corpus);
  const auto diff = extract_diff_features(blocks);
  const auto tracks = track_members(lineage, entry);
  const auto co = extract_cochange_features(tracks, window, history);
  std::copy(loc.begin(), loc.end(), g.begin());
  std::copy(diff.begin(), diff.end(), g.begin() + 6);
  std::copy(co.begin(), co.end(), g.begin() + 12);
  return assemble_vector(per_clone, g, options.aggregation, lineage.id, group.version);
}

}  // namespace crec
