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
#ifndef CREC_SRC_PROCESS_H_
#define CREC_SRC_PROCESS_H_

#include <optional>
#include <string>
#include <vector>

namespace crec::internal {

struct ProcessResult {
  int exit_status = -1;
  std::string out;
};

// Runs argv[0] (resolved through PATH) without a shell. When stdin_data is
// set it is written through a temporary file so large inputs cannot
// deadlock against a full stdout pipe. stderr is discarded.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::optional<std::string>& stdin_data = {});

}  // namespace crec::internal

#endif  // CREC_SRC_PROCESS_H_
