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

#include "crec/artifacts.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crec/common.h"

namespace crec {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_rows(std::string_view text) {
  std::vector<std::string_view> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view row = text.substr(pos, end - pos);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    rows.push_back(row);
    pos = end + 1;
  }
  return rows;
}

[[noreturn]] void parse_fail(std::string_view source, std::size_t line,
                             const std::string& why) {
  throw Error(ErrorCode::kParseError,
              std::string(source) + ":" + std::to_string(line) + ": " + why);
}

// Checks the header, then calls fn(row, line_number) for each data row.
template <typename Fn>
void for_each_row(std::string_view text, std::string_view kind, std::string_view source,
                  Fn&& fn) {
  const auto rows = split_rows(text);
  check_format_header(rows.empty() ? std::string_view() : rows[0], kind, source);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].empty()) continue;
    try {
      fn(rows[i], i + 1);
    } catch (const json::exception& e) {
      parse_fail(source, i + 1, e.what());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseError) throw;
      parse_fail(source, i + 1, e.what());
    }
  }
}

template <typename T, typename Fn>
std::vector<T> parse_jsonl(std::string_view text, std::string_view kind,
                           std::string_view source, Fn&& from_json) {
  std::vector<T> out;
  for_each_row(text, kind, source, [&](std::string_view row, std::size_t) {
    out.push_back(from_json(json::parse(row)));
  });
  return out;
}

template <typename Range, typename Fn>
std::string write_jsonl(std::string_view kind, const Range& items, Fn&& to_json) {
  std::string out = format_header(kind) + "\n";
  for (const auto& item : items) out += to_json(item).dump() + "\n";
  return out;
}

json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  if (std::isinf(x) && x < 0) return nullptr;
  throw Error(ErrorCode::kInvalidArgument, "cannot store " + format_double(x));
}

double number_or_neg_inf(const json& j) {
  return j.is_null() ? -std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string mask_text(const FeatureMask& mask) {
  std::string out;
  for (std::size_t k = 0; k < kFeatureCount; ++k) out += mask.test(k) ? '1' : '0';
  return out;
}

FeatureMask parse_mask(const std::string& text) {
  if (text.size() != kFeatureCount || text.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::kParseError, "bad feature mask '" + text + "'");
  }
  FeatureMask mask;
  for (std::size_t k = 0; k < kFeatureCount; ++k) mask.set(k, text[k] == '1');
  return mask;
}

std::size_t parse_feature_name(const std::string& name) {
  const auto& names = feature_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return k + 1;
  }
  throw Error(ErrorCode::kParseError, "unknown feature '" + name + "'");
}

json entry_json(const LineageEntry& e) {
  json members = json::array();
  for (const auto& m : e.members) members.push_back(m.to_string());
  return {{"version", e.version},
          {"group_id", e.group_id},
          {"members", members},
          {"tokens", e.token_counts}};
}

LineageEntry entry_from(const json& j) {
  LineageEntry e;
  e.version = j.at("version").get<std::size_t>();
  e.group_id = j.at("group_id").get<std::string>();
  for (const auto& m : j.at("members")) e.members.push_back(Location::parse(m.get<std::string>()));
  e.token_counts = j.at("tokens").get<std::vector<std::size_t>>();
  if (e.token_counts.size() != e.members.size()) {
    throw Error(ErrorCode::kParseError, "tokens and members differ in length");
  }
  return e;
}

// CSV fields here never contain commas or quotes: ids are hex and paths are
// not written to CSV.
std::vector<std::string_view> split_csv(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = row.find(',', pos);
    out.push_back(row.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                  : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double csv_double(std::string_view field) {
  auto v = parse_double(field);
  if (!v) throw Error(ErrorCode::kParseError, "bad number '" + std::string(field) + "'");
  return *v;
}

std::string feature_columns(bool with_label) {
  std::string out = "lineage_id,version";
  for (const auto& n : feature_names()) out += "," + n;
  if (with_label) out += ",label";
  return out;
}

std::string feature_row(const FeatureVector& v) {
  std::string out = v.lineage_id + "," + std::to_string(v.version);
  for (double x : v.f) out += "," + format_double(x);
  return out;
}

FeatureVector feature_from(const std::vector<std::string_view>& fields) {
  FeatureVector v;
  v.lineage_id = std::string(fields[0]);
  auto version = parse_uint(fields[1]);
  if (!version) throw Error(ErrorCode::kParseError, "bad version '" + std::string(fields[1]) + "'");
  v.version = *version;
  for (std::size_t k = 0; k < kFeatureCount; ++k) v.f[k] = csv_double(fields[2 + k]);
  return v;
}

template <typename Fn>
void for_each_csv(std::string_view text, std::string_view kind, std::string_view source,
                  const std::string& columns, Fn&& fn) {
  bool seen_columns = false;
  for_each_row(text, kind, source, [&](std::string_view row, std::size_t) {
    if (!seen_columns) {
      if (row != columns) {
        throw Error(ErrorCode::kParseError, "expected columns '" + columns + "'");
      }
      seen_columns = true;
      return;
    }
    const auto fields = split_csv(row);
    const auto expected = split_csv(columns).size();
    if (fields.size() != expected) {
      throw Error(ErrorCode::kParseError, "expected " + std::to_string(expected) +
                                              " fields, found " +
                                              std::to_string(fields.size()));
    }
    fn(fields);
  });
  if (!seen_columns) {
    throw Error(ErrorCode::kParseError, std::string(source) + ": missing column header");
  }
}

json tree_json(const TreeModel& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({{"feature", n.feature_index},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"fraction", n.positive_fraction},
                     {"count", n.count}});
  }
  return {{"min_leaf", t.min_leaf}, {"mask", mask_text(t.mask)}, {"nodes", nodes}};
}

TreeModel tree_from(const json& j) {
  TreeModel t;
  t.min_leaf = j.at("min_leaf").get<std::size_t>();
  t.mask = parse_mask(j.at("mask").get<std::string>());
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.feature_index = n.at("feature").get<std::size_t>();
    node.threshold = n.at("threshold").get<double>();
    node.left = n.at("left").get<std::size_t>();
    node.right = n.at("right").get<std::size_t>();
    node.positive_fraction = n.at("fraction").get<double>();
    node.count = n.at("count").get<std::size_t>();
    t.nodes.push_back(node);
  }
  for (const auto& n : t.nodes) {
    if (!n.is_leaf() && (n.left >= t.nodes.size() || n.right >= t.nodes.size() ||
                         n.feature_index > kFeatureCount)) {
      throw Error(ErrorCode::kParseError, "tree node out of range");
    }
  }
  return t;
}

}  // namespace

std::string serialize_commits(std::span<const CommitRecord> commits) {
  return write_jsonl("commits", commits, [](const CommitRecord& c) {
    return json{{"id", c.id},
                {"timestamp", c.timestamp},
                {"author", c.author},
                {"changed_files", c.changed_files},
                {"changed_lines", c.changed_line_count}};
  });
}

std::vector<CommitRecord> parse_commits(std::string_view text, std::string_view source) {
  return parse_jsonl<CommitRecord>(text, "commits", source, [](const json& j) {
    CommitRecord c;
    c.id = j.at("id").get<std::string>();
    c.timestamp = j.at("timestamp").get<std::int64_t>();
    c.author = j.at("author").get<std::string>();
    c.changed_files = j.at("changed_files").get<std::vector<std::string>>();
    c.changed_line_count = j.at("changed_lines").get<std::int64_t>();
    return c;
  });
}

std::string serialize_samples(std::span<const SampledVersion> samples) {
  return write_jsonl("samples", samples, [](const SampledVersion& s) {
    return json{{"index", s.index}, {"commit", s.commit_id}, {"delta", s.cumulative_delta}};
  });
}

std::vector<SampledVersion> parse_samples(std::string_view text, std::string_view source) {
  return parse_jsonl<SampledVersion>(text, "samples", source, [](const json& j) {
    return SampledVersion{j.at("index").get<std::size_t>(), j.at("commit").get<std::string>(),
                          j.at("delta").get<std::int64_t>()};
  });
}

std::string serialize_groups(std::span<const LineageEntry> groups) {
  return write_jsonl("clones", groups, entry_json);
}

std::vector<LineageEntry> parse_groups(std::string_view text, std::string_view source) {
  return parse_jsonl<LineageEntry>(text, "clones", source, entry_from);
}

std::string serialize_lineages(std::span<const Lineage> lineages) {
  return write_jsonl("lineages", lineages, [](const Lineage& l) {
    json groups = json::array();
    for (const auto& g : l.groups) groups.push_back(entry_json(g));
    json links = json::array();
    for (const auto& step : l.links) {
      json s = json::array();
      for (const auto& link : step) {
        s.push_back({{"from", link.from.to_string()},
                     {"to", link.to.to_string()},
                     {"score", link.score}});
      }
      links.push_back(s);
    }
    return json{{"id", l.id},
                {"end_state", l.end_state == LineageEnd::kAlive ? "alive" : "dissolved"},
                {"groups", groups},
                {"links", links}};
  });
}

std::vector<Lineage> parse_lineages(std::string_view text, std::string_view source) {
  return parse_jsonl<Lineage>(text, "lineages", source, [](const json& j) {
    Lineage l;
    l.id = j.at("id").get<std::string>();
    const auto end = j.at("end_state").get<std::string>();
    if (end != "alive" && end != "dissolved") {
      throw Error(ErrorCode::kParseError, "bad end_state '" + end + "'");
    }
    l.end_state = end == "alive" ? LineageEnd::kAlive : LineageEnd::kDissolved;
    for (const auto& g : j.at("groups")) l.groups.push_back(entry_from(g));
    for (const auto& s : j.at("links")) {
      std::vector<CloneLink> step;
      for (const auto& link : s) {
        step.push_back({Location::parse(link.at("from").get<std::string>()),
                        Location::parse(link.at("to").get<std::string>()),
                        link.at("score").get<double>()});
      }
      l.links.push_back(std::move(step));
    }
    if (l.groups.empty() || l.links.size() + 1 != l.groups.size()) {
      throw Error(ErrorCode::kParseError, "lineage links do not join its groups");
    }
    return l;
  });
}

std::string serialize_labels(std::span<const LabelDecision> labels) {
  return write_jsonl("labels", labels, [](const LabelDecision& d) {
    json j{{"lineage_id", d.lineage_id}, {"label", label_name(d.label)}};
    j["version"] = d.version ? json(*d.version) : json(nullptr);
    json clones = json::array();
    for (const auto& c : d.clones) {
      clones.push_back({{"before", c.before.to_string()},
                        {"after", c.after.to_string()},
                        {"similarity", c.similarity}});
    }
    j["clones"] = clones;
    j["method"] = d.method_name;
    j["method_location"] =
        d.method_location ? json(d.method_location->to_string()) : json(nullptr);
    return j;
  });
}

std::vector<LabelDecision> parse_labels(std::string_view text, std::string_view source) {
  return parse_jsonl<LabelDecision>(text, "labels", source, [](const json& j) {
    LabelDecision d;
    d.lineage_id = j.at("lineage_id").get<std::string>();
    d.label = parse_label(j.at("label").get<std::string>());
    if (!j.at("version").is_null()) d.version = j.at("version").get<std::size_t>();
    for (const auto& c : j.at("clones")) {
      d.clones.push_back({Location::parse(c.at("before").get<std::string>()),
                          Location::parse(c.at("after").get<std::string>()),
                          c.at("similarity").get<double>()});
    }
    d.method_name = j.at("method").get<std::string>();
    if (!j.at("method_location").is_null()) {
      d.method_location = Location::parse(j.at("method_location").get<std::string>());
    }
    return d;
  });
}

std::string serialize_features(std::span<const LabeledExample> rows) {
  std::string out = format_header("features") + "\n" + feature_columns(true) + "\n";
  for (const auto& r : rows) out += feature_row(r.vector) + "," + std::to_string(r.label) + "\n";
  return out;
}

std::vector<LabeledExample> parse_features(std::string_view text, std::string_view source) {
  std::vector<LabeledExample> out;
  for_each_csv(text, "features", source, feature_columns(true), [&](const auto& fields) {
    const auto label = fields.back();
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::kParseError, "label must be 0 or 1");
    }
    out.push_back({feature_from(fields), label == "1" ? 1 : 0});
  });
  return out;
}

std::string serialize_candidates(std::span<const FeatureVector> rows) {
  std::string out = format_header("candidates") + "\n" + feature_columns(false) + "\n";
  for (const auto& r : rows) out += feature_row(r) + "\n";
  return out;
}

std::vector<FeatureVector> parse_candidates(std::string_view text, std::string_view source) {
  std::vector<FeatureVector> out;
  for_each_csv(text, "candidates", source, feature_columns(false),
               [&](const auto& fields) { out.push_back(feature_from(fields)); });
  return out;
}

std::string serialize_model(const Model& model) {
  json j;
  j["algorithm"] = algorithm_name(model_algorithm(model));
  j["feature_names"] = feature_names();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BoostModel>) {
          json stumps = json::array();
          for (const auto& s : m.stumps) {
            stumps.push_back({{"feature", feature_names()[s.feature_index - 1]},
                              {"threshold", number_or_null(s.threshold)},
                              {"polarity", s.polarity == Polarity::kLessEqualIsOne ? "le" : "gt"},
                              {"alpha", s.alpha}});
          }
          j["rounds"] = m.rounds;
          j["seed"] = m.seed;
          j["dataset_digest"] = m.dataset_digest;
          j["mask"] = mask_text(m.mask);
          j["errors"] = m.errors;
          j["stumps"] = stumps;
        } else if constexpr (std::is_same_v<T, TreeModel>) {
          j["tree"] = tree_json(m);
        } else if constexpr (std::is_same_v<T, ForestModel>) {
          json trees = json::array();
          for (const auto& t : m.trees) trees.push_back(tree_json(t));
          j["seed"] = m.seed;
          j["mask"] = mask_text(m.mask);
          j["trees"] = trees;
        } else {
          j["prior"] = {m.prior[0], m.prior[1]};
          j["mean"] = {m.mean[0], m.mean[1]};
          j["variance"] = {m.variance[0], m.variance[1]};
          j["mask"] = mask_text(m.mask);
        }
      },
      model);
  return format_header("model") + "\n" + j.dump() + "\n";
}

Model parse_model(std::string_view text, std::string_view source) {
  std::optional<Model> model;
  for_each_row(text, "model", source, [&](std::string_view row, std::size_t) {
    if (model) throw Error(ErrorCode::kParseError, "more than one model");
    const json j = json::parse(row);
    const auto algorithm_text = j.at("algorithm").get<std::string>();
    Algorithm algorithm;
    try {
      algorithm = parse_algorithm(algorithm_text);
    } catch (const Error&) {
      throw Error(ErrorCode::kParseError, "unknown algorithm '" + algorithm_text + "'");
    }
    switch (algorithm) {
      case Algorithm::kAdaBoost: {
        BoostModel m;
        m.rounds = j.at("rounds").get<std::size_t>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.dataset_digest = j.at("dataset_digest").get<std::string>();
        m.mask = parse_mask(j.at("mask").get<std::string>());
        m.errors = j.at("errors").get<std::vector<double>>();
        for (const auto& s : j.at("stumps")) {
          DecisionStump stump;
          stump.feature_index = parse_feature_name(s.at("feature").get<std::string>());
          stump.threshold = number_or_neg_inf(s.at("threshold"));
          const auto pol = s.at("polarity").get<std::string>();
          if (pol != "le" && pol != "gt") {
            throw Error(ErrorCode::kParseError, "bad polarity '" + pol + "'");
          }
          stump.polarity = pol == "le" ? Polarity::kLessEqualIsOne : Polarity::kGreaterIsOne;
          stump.alpha = s.at("alpha").get<double>();
          m.stumps.push_back(stump);
        }
        model = std::move(m);
        break;
      }
      case Algorithm::kDecisionTree:
        model = tree_from(j.at("tree"));
        break;
      case Algorithm::kRandomForest: {
        ForestModel m;
        m.seed = j.at("seed").get<std::uint64_t>();
        m.mask = parse_mask(j.at("mask").get<std::string>());
        for (const auto& t : j.at("trees")) m.trees.push_back(tree_from(t));
        model = std::move(m);
        break;
      }
      case Algorithm::kNaiveBayes: {
        NaiveBayesModel m;
        for (int c = 0; c < 2; ++c) {
          m.prior[c] = j.at("prior").at(c).get<double>();
          m.mean[c] = j.at("mean").at(c).get<std::vector<double>>();
          m.variance[c] = j.at("variance").at(c).get<std::vector<double>>();
          if (m.mean[c].size() != kFeatureCount || m.variance[c].size() != kFeatureCount) {
            throw Error(ErrorCode::kParseError, "naive Bayes tables need 34 entries");
          }
        }
        m.mask = parse_mask(j.at("mask").get<std::string>());
        model = std::move(m);
        break;
      }
    }
  });
  if (!model) throw Error(ErrorCode::kParseError, std::string(source) + ": no model");
  return std::move(*model);
}

std::string serialize_recommendations(std::span<const Recommendation> rows) {
  std::string out = format_header("recommendations") + "\ngroup_id,likelihood\n";
  for (const auto& r : rows) out += r.group_id + "," + format_double(r.likelihood) + "\n";
  return out;
}

std::vector<Recommendation> parse_recommendations(std::string_view text,
                                                  std::string_view source) {
  std::vector<Recommendation> out;
  for_each_csv(text, "recommendations", source, "group_id,likelihood",
               [&](const auto& fields) {
                 out.push_back({std::string(fields[0]), csv_double(fields[1])});
               });
  return out;
}

namespace {

std::string prf_fields(const Prf& m) {
  return format_double(m.precision) + "," + format_double(m.recall) + "," +
         format_double(m.fscore);
}

}  // namespace

std::string serialize_report(const EvalReport& r) {
  std::string out = format_header("report") + "\n";
  out += "setting=" + std::string(setting_name(r.setting)) + ";algorithm=" + r.algorithm +
         ";features=" + r.feature_subset + ";threshold=" + format_double(r.threshold) +
         ";seed=" + std::to_string(r.seed) + ";metrics=" +
         (r.setting == Setting::kWithin ? "pooled-over-folds" : "per-held-out-project") +
         "\n";
  out += "project,precision,recall,fscore,recommended,recommended_and_refactored,"
         "known_refactored,flag\n";
  for (const auto& p : r.projects) {
    out += p.name + "," + prf_fields(p.metrics) + "," + std::to_string(p.counts.recommended) +
           "," + std::to_string(p.counts.recommended_and_refactored) + "," +
           std::to_string(p.counts.known_refactored) + "," +
           (p.no_positives ? "no-positives" : "") + "\n";
  }
  out += "average," + prf_fields(r.average) + ",,,,\n";
  return out;
}

std::string serialize_ablation(std::span<const AblationRow> rows) {
  std::string out = format_header("ablation") + "\nrow,masked_features,precision,recall,fscore\n";
  for (const auto& r : rows) {
    out += r.name + "," + std::to_string(r.masked_features) + "," + prf_fields(r.metrics) + "\n";
  }
  return out;
}

std::string serialize_comparison(std::span<const ComparisonRow> rows) {
  std::string out = format_header("comparison") + "\nalgorithm,setting,precision,recall,fscore\n";
  for (const auto& r : rows) {
    out += std::string(algorithm_name(r.algorithm)) + "," + setting_name(r.setting) + "," +
           prf_fields(r.metrics) + "\n";
  }
  return out;
}

std::string serialize_label_sweep(std::span<const std::pair<double, std::size_t>> rows) {
  std::string out = format_header("label_sweep") + "\nl_th,reported\n";
  for (const auto& [t, n] : rows) out += format_double(t) + "," + std::to_string(n) + "\n";
  return out;
}

std::string read_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingInput, "missing input " + path.string() +
                                              " (run the preceding stage first)");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_artifact(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace crec
