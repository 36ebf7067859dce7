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

#include "crec/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "crec/artifacts.h"
#include "crec/clone_detector.h"
#include "crec/common.h"
#include "crec/corpus.h"
#include "crec/features.h"
#include "crec/genealogy.h"
#include "crec/labeler.h"

namespace crec {
namespace {

std::filesystem::path in_out(const StageOptions& o, const char* name) {
  return o.out / name;
}

std::vector<SampledVersion> load_samples(const StageOptions& o) {
  const auto path = in_out(o, artifact::kSamples);
  return parse_samples(read_artifact(path), path.string());
}

std::vector<Lineage> load_lineages(const StageOptions& o) {
  const auto path = in_out(o, artifact::kLineages);
  return parse_lineages(read_artifact(path), path.string());
}

DetectOptions detect_options(const PipelineConfig& c) {
  DetectOptions d;
  d.min_tokens = c.min_tokens;
  d.min_lines = static_cast<int>(c.min_lines);
  d.theta = c.theta;
  return d;
}

FeatureOptions feature_options(const PipelineConfig& c) {
  return {c.window_fraction, c.recent_fraction, c.aggregation};
}

// Runs fn(i) for i in [0, n) on a few threads; the first exception wins.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

CorpusLookup lookup(const CorpusCache& cache) {
  return [&cache](std::size_t v) -> const VersionCorpus* {
    return v < cache.samples().size() ? &cache.at(v) : nullptr;
  };
}

LearnerConfig learner_config(const StageOptions& o) {
  LearnerConfig l;
  l.algorithm = o.algorithm;
  l.rounds = o.config.boost_rounds;
  l.seed = o.config.seed;
  return l;
}

EvalOptions eval_options(const StageOptions& o) {
  return {learner_config(o), o.config.seed, o.config.recommend_threshold};
}

std::vector<ProjectData> load_projects(const StageOptions& o) {
  std::vector<std::filesystem::path> dirs = o.projects;
  if (dirs.empty()) dirs.push_back(o.out);
  std::vector<ProjectData> projects;
  for (const auto& d : dirs) {
    std::string name = d.filename().string();
    if (name.empty()) name = d.parent_path().filename().string();
    projects.push_back({name, balanced_examples(d / artifact::kFeatures, o.config.seed)});
  }
  return projects;
}

}  // namespace

std::vector<LabeledExample> balanced_examples(const std::filesystem::path& features_file,
                                              std::uint64_t seed) {
  const auto rows = parse_features(read_artifact(features_file), features_file.string());
  std::vector<LabeledExample> r;
  std::vector<LabeledExample> nr;
  for (const auto& row : rows) (row.label == 1 ? r : nr).push_back(row);
  return build_balanced_dataset(r, nr, seed);
}

std::string run_mine(const Repository& repo, const StageOptions& o) {
  validate_config(o.config);
  const auto& commits = repo.commits();
  const auto samples =
      sample_versions(commits, o.config.delta_threshold, direct_delta(repo));
  write_artifact(in_out(o, artifact::kCommits), serialize_commits(commits));
  write_artifact(in_out(o, artifact::kSamples), serialize_samples(samples));
  return "mine: " + std::to_string(commits.size()) + " commits, " +
         std::to_string(samples.size()) + " sampled versions";
}

std::string run_detect(const Repository& repo, const StageOptions& o) {
  validate_config(o.config);
  const auto samples = load_samples(o);
  const DetectOptions options = detect_options(o.config);
  std::vector<std::vector<CloneGroup>> per_version(samples.size());
  std::vector<std::size_t> diagnostics(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t v) {
    const VersionCorpus corpus = load_version(repo, samples[v], o.config.extensions);
    for (const auto& f : corpus.files()) diagnostics[v] += f.diagnostics.size();
    per_version[v] = detect_clones(corpus.all_blocks(), options, v);
  });
  std::vector<LineageEntry> entries;
  for (const auto& groups : per_version) {
    for (const auto& g : groups) entries.push_back(make_entry(g));
  }
  write_artifact(in_out(o, artifact::kClones), serialize_groups(entries));
  std::size_t diag = 0;
  for (auto d : diagnostics) diag += d;
  return "detect: " + std::to_string(entries.size()) + " clone groups over " +
         std::to_string(samples.size()) + " versions" +
         (diag ? ", " + std::to_string(diag) + " lexical diagnostics" : "");
}

std::string run_genealogy(const Repository& repo, const StageOptions& o) {
  validate_config(o.config);
  const auto samples = load_samples(o);
  const auto clones_path = in_out(o, artifact::kClones);
  const auto entries = parse_groups(read_artifact(clones_path), clones_path.string());
  std::vector<std::vector<LineageEntry>> by_version(samples.size());
  for (const auto& e : entries) {
    if (e.version >= samples.size()) {
      throw Error(ErrorCode::kParseError, clones_path.string() + ": version " +
                                              std::to_string(e.version) +
                                              " was not sampled");
    }
    by_version[e.version].push_back(e);
  }
  std::vector<std::vector<CloneGroup>> per_version(samples.size());
  parallel_for(samples.size(), [&](std::size_t v) {
    if (by_version[v].empty()) return;
    const VersionCorpus corpus = load_version(repo, samples[v], o.config.extensions);
    for (const auto& e : by_version[v]) {
      CloneGroup g;
      g.version = v;
      g.group_id = e.group_id;
      for (const auto& loc : e.members) {
        const CodeBlock* b = corpus.find_block(loc);
        if (!b) {
          throw Error(ErrorCode::kParseError, clones_path.string() + ": clone " +
                                                  loc.to_string() + " not found at version " +
                                                  std::to_string(v));
        }
        g.members.push_back(*b);
      }
      per_version[v].push_back(std::move(g));
    }
  });
  const auto lineages = build_genealogies(per_version, o.config.link_floor);
  write_artifact(in_out(o, artifact::kLineages), serialize_lineages(lineages));
  std::size_t alive = 0;
  for (const auto& l : lineages) alive += l.end_state == LineageEnd::kAlive;
  return "genealogy: " + std::to_string(lineages.size()) + " lineages, " +
         std::to_string(alive) + " alive";
}

std::string run_label(const Repository& repo, const StageOptions& o) {
  validate_config(o.config);
  const auto samples = load_samples(o);
  const auto lineages = load_lineages(o);
  const CorpusCache cache(repo, samples, o.config.extensions);
  const auto corpora = lookup(cache);

  std::set<double> thresholds = {0.3, 0.4, 0.5, o.config.l_th};
  std::vector<LabelDecision> decisions;
  std::vector<std::pair<double, std::size_t>> sweep;
  for (double t : thresholds) {
    std::size_t reported = 0;
    std::vector<LabelDecision> at_t;
    for (const auto& l : lineages) {
      at_t.push_back(label_lineage(l, corpora, t, o.config.link_floor));
      reported += at_t.back().label == Label::kR;
    }
    sweep.emplace_back(t, reported);
    if (t == o.config.l_th) decisions = std::move(at_t);
  }
  write_artifact(in_out(o, artifact::kLabels), serialize_labels(decisions));
  write_artifact(in_out(o, artifact::kLabelSweep), serialize_label_sweep(sweep));
  std::size_t r = 0;
  for (const auto& d : decisions) r += d.label == Label::kR;
  return "label: " + std::to_string(r) + " R, " + std::to_string(decisions.size() - r) +
         " NR at l_th=" + format_double(o.config.l_th);
}

std::string run_featurize(const Repository& repo, const StageOptions& o) {
  validate_config(o.config);
  const auto samples = load_samples(o);
  const auto lineages = load_lineages(o);
  const auto labels_path = in_out(o, artifact::kLabels);
  const auto labels = parse_labels(read_artifact(labels_path), labels_path.string());
  std::map<std::string, const LabelDecision*> by_id;
  for (const auto& d : labels) by_id[d.lineage_id] = &d;

  const CorpusCache cache(repo, samples, o.config.extensions);
  const auto corpora = lookup(cache);
  const RepositoryHistory history(repo);
  const FeatureOptions fo = feature_options(o.config);

  std::vector<LabeledExample> rows;
  std::vector<FeatureVector> candidates;
  std::vector<std::string> diagnostics;
  for (const auto& l : lineages) {
    auto it = by_id.find(l.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMissingInput, "no label for lineage " + l.id + " in " +
                                                labels_path.string());
    }
    const LabelDecision& d = *it->second;
    if (d.label == Label::kR) {
      std::size_t entry = 0;
      while (entry < l.groups.size() && l.groups[entry].version != d.version) ++entry;
      if (entry == l.groups.size()) {
        throw Error(ErrorCode::kParseError, labels_path.string() + ": lineage " + l.id +
                                                " has no group at the labeled version");
      }
      rows.push_back({extract_features(l, entry, corpora, samples, history, fo, &diagnostics), 1});
      continue;
    }
    const std::size_t last = l.groups.size() - 1;
    FeatureVector v = extract_features(l, last, corpora, samples, history, fo, &diagnostics);
    if (l.end_state == LineageEnd::kAlive) candidates.push_back(v);
    rows.push_back({std::move(v), 0});
  }
  write_artifact(in_out(o, artifact::kFeatures), serialize_features(rows));
  write_artifact(in_out(o, artifact::kCandidates), serialize_candidates(candidates));
  return "featurize: " + std::to_string(rows.size()) + " labeled vectors, " +
         std::to_string(candidates.size()) + " candidates" +
         (diagnostics.empty() ? ""
                              : ", " + std::to_string(diagnostics.size()) +
                                    " without a history window");
}

std::string run_train(const StageOptions& o) {
  validate_config(o.config);
  const auto examples = balanced_examples(in_out(o, artifact::kFeatures), o.config.seed);
  const Model model = train(learner_config(o), examples);
  write_artifact(in_out(o, artifact::kModel), serialize_model(model));
  std::string detail;
  if (const auto* boost = std::get_if<BoostModel>(&model)) {
    detail = ", " + std::to_string(boost->stumps.size()) + " rounds";
  }
  return "train: " + std::string(algorithm_name(o.algorithm)) + " on " +
         std::to_string(examples.size()) + " examples" + detail;
}

std::string run_recommend(const StageOptions& o) {
  validate_config(o.config);
  const auto model_path = in_out(o, artifact::kModel);
  const Model model = parse_model(read_artifact(model_path), model_path.string());
  const auto cand_path = in_out(o, artifact::kCandidates);
  const auto vectors = parse_candidates(read_artifact(cand_path), cand_path.string());
  const auto lineages = load_lineages(o);
  std::map<std::pair<std::string, std::size_t>, std::string> group_of;
  for (const auto& l : lineages) {
    for (const auto& g : l.groups) group_of[{l.id, g.version}] = g.group_id;
  }
  std::vector<Candidate> candidates;
  for (const auto& v : vectors) {
    auto it = group_of.find({v.lineage_id, v.version});
    if (it == group_of.end()) {
      throw Error(ErrorCode::kParseError, cand_path.string() + ": lineage " + v.lineage_id +
                                              " has no group at version " +
                                              std::to_string(v.version));
    }
    candidates.push_back({it->second, v});
  }
  const auto recs = recommend(model, candidates, o.config.recommend_threshold);
  write_artifact(in_out(o, artifact::kRecommendations), serialize_recommendations(recs));
  return "recommend: " + std::to_string(recs.size()) + " of " +
         std::to_string(candidates.size()) + " candidate groups at threshold " +
         format_double(o.config.recommend_threshold);
}

std::string run_evaluate(const StageOptions& o) {
  validate_config(o.config);
  const auto projects = load_projects(o);
  const EvalReport report = evaluate(projects, o.setting, eval_options(o));
  write_artifact(in_out(o, artifact::kReport), serialize_report(report));
  return std::string("evaluate: ") + setting_name(o.setting) + " P=" +
         format_double(report.average.precision) + " R=" +
         format_double(report.average.recall) + " F=" + format_double(report.average.fscore);
}

std::string run_ablate(const StageOptions& o) {
  validate_config(o.config);
  const auto projects = load_projects(o);
  const auto rows = ablation(projects, o.setting, eval_options(o));
  write_artifact(in_out(o, artifact::kAblation), serialize_ablation(rows));
  return "ablate: " + std::to_string(rows.size()) + " rows, AllFeatures F=" +
         format_double(rows.front().metrics.fscore);
}

std::string run_compare(const StageOptions& o) {
  validate_config(o.config);
  const auto projects = load_projects(o);
  const auto rows = compare_learners(projects, o.setting, o.algorithms, eval_options(o));
  write_artifact(in_out(o, artifact::kComparison), serialize_comparison(rows));
  return "compare: " + std::to_string(rows.size()) + " algorithms";
}

std::vector<std::string> run_pipeline(const Repository& repo, const StageOptions& o) {
  return {run_mine(repo, o),      run_detect(repo, o),    run_genealogy(repo, o),
          run_label(repo, o),     run_featurize(repo, o), run_train(o),
          run_recommend(o)};
}

}  // namespace crec
