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

// Command-line driver for the crec pipeline stages.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crec/common.h"
#include "crec/config.h"
#include "crec/pipeline.h"
#include "crec/repo_miner.h"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                 : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool needs_repo(const std::string& stage) {
  return stage == "mine" || stage == "detect" || stage == "genealogy" ||
         stage == "label" || stage == "featurize";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recommends clone groups for Extract Method refactoring"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string repo_path;
  std::string out_dir = "crec-out";
  std::string algorithm = "adaboost";
  std::string setting = "within";
  std::string projects;
  std::string algorithms = "adaboost,decision_tree,random_forest,naive_bayes";
  std::map<std::string, std::string> overrides;

  app.add_option("--config", config_path, "Config file (crec-format v1 config)");
  app.add_option("--repo", repo_path, "Git repository work tree");
  app.add_option("--out", out_dir, "Artifact directory")->capture_default_str();
  for (const auto& key : crec::config_keys()) {
    std::string names = "--" + key;
    if (key == "boost_rounds") names += ",--rounds";
    app.add_option_function<std::string>(
        names, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "Override " + key);
  }

  const std::vector<std::pair<std::string, std::string>> stages = {
      {"mine", "Enumerate commits and sample versions"},
      {"detect", "Detect clone groups at every sampled version"},
      {"genealogy", "Link clone groups into lineages"},
      {"label", "Label lineages R or NR"},
      {"featurize", "Extract feature vectors"},
      {"train", "Train a classifier on the labeled vectors"},
      {"recommend", "Rank live clone groups by likelihood"},
      {"evaluate", "Ten-fold or cross-project evaluation"},
      {"ablate", "Feature-category ablation"},
      {"compare", "Compare learning algorithms"},
  };
  for (const auto& [name, help] : stages) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    if (name == "train" || name == "evaluate" || name == "ablate") {
      sub->add_option("--algorithm", algorithm,
                      "adaboost, decision_tree, random_forest or naive_bayes")
          ->capture_default_str();
    }
    if (name == "evaluate" || name == "ablate" || name == "compare") {
      sub->add_option("--setting", setting, "within or cross")->capture_default_str();
      sub->add_option("--projects", projects,
                      "Comma-separated artifact directories, one per project");
    }
    if (name == "compare") {
      sub->add_option("--algorithms", algorithms, "Comma-separated algorithms")
          ->capture_default_str();
    }
  }

  CLI11_PARSE(app, argc, argv);
  const std::string stage = app.get_subcommands().front()->get_name();

  try {
    crec::StageOptions options;
    options.out = out_dir;
    if (!config_path.empty()) options.config = crec::load_config(config_path);
    for (const auto& [key, value] : overrides) {
      crec::set_config_value(options.config, key, value);
    }
    crec::validate_config(options.config);
    options.algorithm = crec::parse_algorithm(algorithm);
    options.setting = crec::parse_setting(setting);
    for (const auto& p : split_list(projects)) options.projects.emplace_back(p);
    options.algorithms.clear();
    for (const auto& a : split_list(algorithms)) {
      options.algorithms.push_back(crec::parse_algorithm(a));
    }

    std::optional<crec::Repository> repo;
    if (needs_repo(stage)) {
      if (repo_path.empty()) {
        throw crec::Error(crec::ErrorCode::kConfigError, stage + " requires --repo");
      }
      repo.emplace(crec::Repository::open(repo_path));
    }

    std::string summary;
    if (stage == "mine") summary = crec::run_mine(*repo, options);
    else if (stage == "detect") summary = crec::run_detect(*repo, options);
    else if (stage == "genealogy") summary = crec::run_genealogy(*repo, options);
    else if (stage == "label") summary = crec::run_label(*repo, options);
    else if (stage == "featurize") summary = crec::run_featurize(*repo, options);
    else if (stage == "train") summary = crec::run_train(options);
    else if (stage == "recommend") summary = crec::run_recommend(options);
    else if (stage == "evaluate") summary = crec::run_evaluate(options);
    else if (stage == "ablate") summary = crec::run_ablate(options);
    else if (stage == "compare") summary = crec::run_compare(options);
    std::cout << summary << "\n";
    return 0;
  } catch (const crec::Error& e) {
    std::cerr << "error: " << crec::error_code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 3;
  }
}
