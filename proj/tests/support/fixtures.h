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

#ifndef CREC_TESTS_SUPPORT_FIXTURES_H_
#define CREC_TESTS_SUPPORT_FIXTURES_H_

#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "support/fixture_repo.h"

namespace crec::testing {

enum class Scenario {
  kExtractSameFile,     // three clones in one class, two call a new helper
  kExtractAcrossFiles,  // clones in copied directories, helper in a util class
  kExtractLater,        // four clones, three extracted after a co-change
  kControlDeletion,     // two clones shrink by deleting lines, no new call
  kControlUnrelated,    // two clones call a new method unrelated to the removed code
};

inline constexpr Scenario kAllScenarios[] = {
    Scenario::kExtractSameFile, Scenario::kExtractAcrossFiles, Scenario::kExtractLater,
    Scenario::kControlDeletion, Scenario::kControlUnrelated};

const char* scenario_name(Scenario scenario);
bool is_planted(Scenario scenario);

struct ScenarioRepo {
  std::unique_ptr<FixtureRepo> repo;
  // (path, method name) of clones refactored by Extract Method.
  std::vector<std::pair<std::string, std::string>> planted;
  std::string helper;  // name of the extracted method, empty for controls
  // Sampled version whose commit performs the extraction; every commit is
  // sampled, so this is also the commit index.
  std::size_t refactor_version = 0;
};

void PrintTo(Scenario scenario, std::ostream* os);

// Every commit rewrites a filler text file with more than 200 fresh lines,
// so every commit becomes a sampled version at the default threshold.
ScenarioRepo build_scenario(Scenario scenario);

// The same-file extraction next to three classes whose clone pairs are
// edited but never refactored, so that training sees both labels and
// recommend has candidates.
ScenarioRepo build_pipeline_fixture(const std::string& name);

// Java method computing an average over items; tag varies a string literal
// and the method name.
std::string clone_method(const std::string& name, const std::string& tag);

}  // namespace crec::testing

#endif  // CREC_TESTS_SUPPORT_FIXTURES_H_
