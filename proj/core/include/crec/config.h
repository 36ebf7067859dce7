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

#ifndef CREC_CONFIG_H_
#define CREC_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "crec/features.h"

namespace crec {

struct PipelineConfig {
  std::int64_t delta_threshold = 200;
  std::size_t min_tokens = 30;
  std::size_t min_lines = 6;
  double theta = 0.8;
  double link_floor = 0.5;
  double l_th = 0.4;
  double window_fraction = 0.1;
  double recent_fraction = 0.25;
  std::size_t boost_rounds = 50;
  double recommend_threshold = 0.5;
  Aggregation aggregation = Aggregation::kMean;
  std::uint64_t seed = 0;
  std::vector<std::string> extensions = {".java"};

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Keys in file order.
const std::vector<std::string>& config_keys();

// Sets one field from its text form. Throws Error{kConfigError} for an
// unknown key or an unparsable value.
void set_config_value(PipelineConfig& config, std::string_view key,
                      std::string_view value);
std::string get_config_value(const PipelineConfig& config, std::string_view key);

// Throws Error{kConfigError} when a field is outside its range.
void validate_config(const PipelineConfig& config);

// Header line, then one "key = value" line per field. Blank lines and lines
// starting with '#' are ignored when parsing.
std::string serialize_config(const PipelineConfig& config);
PipelineConfig parse_config(std::string_view text, std::string_view source = "config");

PipelineConfig load_config(const std::filesystem::path& path);

// Digest of the serialized form, for reports.
std::string config_digest(const PipelineConfig& config);

}  // namespace crec

#endif  // CREC_CONFIG_H_
