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

#include "crec/config.h"

#include <fstream>
#include <sstream>

#include "crec/common.h"

namespace crec {
namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw Error(ErrorCode::kConfigError, "invalid value '" + std::string(value) +
                                           "' for " + std::string(key) + ": expected " +
                                           std::string(expected));
}

double to_double(std::string_view key, std::string_view value) {
  auto v = parse_double(value);
  if (!v) bad_value(key, value, "a number");
  return *v;
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
  auto v = parse_uint(value);
  if (!v) bad_value(key, value, "a nonnegative integer");
  return *v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += items[i];
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> kKeys = {
      "delta_threshold", "min_tokens",      "min_lines",
      "theta",           "link_floor",      "l_th",
      "window_fraction", "recent_fraction", "boost_rounds",
      "recommend_threshold", "aggregation", "seed",
      "extensions"};
  return kKeys;
}

void set_config_value(PipelineConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "delta_threshold") {
    c.delta_threshold = static_cast<std::int64_t>(to_uint(key, value));
  } else if (key == "min_tokens") {
    c.min_tokens = to_uint(key, value);
  } else if (key == "min_lines") {
    c.min_lines = to_uint(key, value);
  } else if (key == "theta") {
    c.theta = to_double(key, value);
  } else if (key == "link_floor") {
    c.link_floor = to_double(key, value);
  } else if (key == "l_th") {
    c.l_th = to_double(key, value);
  } else if (key == "window_fraction") {
    c.window_fraction = to_double(key, value);
  } else if (key == "recent_fraction") {
    c.recent_fraction = to_double(key, value);
  } else if (key == "boost_rounds") {
    c.boost_rounds = to_uint(key, value);
  } else if (key == "recommend_threshold") {
    c.recommend_threshold = to_double(key, value);
  } else if (key == "aggregation") {
    c.aggregation = parse_aggregation(value);
  } else if (key == "seed") {
    c.seed = to_uint(key, value);
  } else if (key == "extensions") {
    c.extensions.clear();
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const auto comma = value.find(',', pos);
      const auto item = trim(value.substr(
          pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (!item.empty()) c.extensions.emplace_back(item);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } else {
    throw Error(ErrorCode::kConfigError, "unknown config key '" + std::string(key) + "'");
  }
}

std::string get_config_value(const PipelineConfig& c, std::string_view key) {
  if (key == "delta_threshold") return std::to_string(c.delta_threshold);
  if (key == "min_tokens") return std::to_string(c.min_tokens);
  if (key == "min_lines") return std::to_string(c.min_lines);
  if (key == "theta") return format_double(c.theta);
  if (key == "link_floor") return format_double(c.link_floor);
  if (key == "l_th") return format_double(c.l_th);
  if (key == "window_fraction") return format_double(c.window_fraction);
  if (key == "recent_fraction") return format_double(c.recent_fraction);
  if (key == "boost_rounds") return std::to_string(c.boost_rounds);
  if (key == "recommend_threshold") return format_double(c.recommend_threshold);
  if (key == "aggregation") return aggregation_name(c.aggregation);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "extensions") return join(c.extensions);
  throw Error(ErrorCode::kConfigError, "unknown config key '" + std::string(key) + "'");
}

void validate_config(const PipelineConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::kConfigError, what);
  };
  auto unit_open = [](double x) { return x > 0.0 && x <= 1.0; };
  require(c.delta_threshold >= 1, "delta_threshold must be at least 1");
  require(c.min_tokens >= 1, "min_tokens must be at least 1");
  require(c.min_lines >= 1, "min_lines must be at least 1");
  require(unit_open(c.theta), "theta must be in (0, 1]");
  require(unit_open(c.link_floor), "link_floor must be in (0, 1]");
  require(c.l_th >= 0.0 && c.l_th <= 1.0, "l_th must be in [0, 1]");
  require(unit_open(c.window_fraction), "window_fraction must be in (0, 1]");
  require(unit_open(c.recent_fraction), "recent_fraction must be in (0, 1]");
  require(c.boost_rounds >= 1, "boost_rounds must be at least 1");
  require(unit_open(c.recommend_threshold), "recommend_threshold must be in (0, 1]");
  require(!c.extensions.empty(), "extensions must not be empty");
  for (const auto& e : c.extensions) {
    require(e.size() > 1 && e.front() == '.', "extension '" + e + "' must start with '.'");
  }
}

std::string serialize_config(const PipelineConfig& c) {
  std::string out = format_header("config") + "\n";
  for (const auto& key : config_keys()) out += key + " = " + get_config_value(c, key) + "\n";
  return out;
}

PipelineConfig parse_config(std::string_view text, std::string_view source) {
  PipelineConfig c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!header) {
      check_format_header(trim(line), "config", source);
      header = true;
      continue;
    }
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, std::string(source) + ":" +
                                               std::to_string(line_no) +
                                               ": expected 'key = value'");
    }
    try {
      set_config_value(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(source) + ":" + std::to_string(line_no) + ": " +
                                e.what());
    }
  }
  if (!header) check_format_header("", "config", source);
  validate_config(c);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfigError, "cannot read config file " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string config_digest(const PipelineConfig& config) {
  return hex64(fnv1a64(serialize_config(config)));
}

}  // namespace crec
