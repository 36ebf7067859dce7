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

#include "crec/common.h"

#include <array>
#include <charconv>
#include <cmath>

namespace crec {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotARepository: return "NotARepository";
    case ErrorCode::kEmptyRepository: return "EmptyRepository";
    case ErrorCode::kUnknownCommit: return "UnknownCommit";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kWindowUnavailable: return "WindowUnavailable";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kInsufficientNegatives: return "InsufficientNegatives";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kTooFewProjects: return "TooFewProjects";
    case ErrorCode::kMissingInput: return "MissingInput";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kProcessError: return "ProcessError";
  }
  return "Unknown";
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::optional<double> parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::string format_header(std::string_view kind) {
  return "crec-format v" + std::to_string(kFormatVersion) + " " + std::string(kind);
}

void check_format_header(std::string_view line, std::string_view kind,
                         std::string_view source) {
  constexpr std::string_view kPrefix = "crec-format v";
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParseError,
                std::string(source) + ":1: " + why);
  };
  if (line.substr(0, kPrefix.size()) != kPrefix) fail("missing crec-format header");
  line.remove_prefix(kPrefix.size());
  const auto space = line.find(' ');
  if (space == std::string_view::npos) fail("malformed crec-format header");
  const auto version = parse_uint(line.substr(0, space));
  if (!version) fail("malformed format version");
  if (*version != kFormatVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                std::string(source) + ": format version " + std::to_string(*version) +
                    " is not supported (expected " + std::to_string(kFormatVersion) + ")");
  }
  const std::string_view found = line.substr(space + 1);
  if (found != kind) {
    fail("expected artifact kind '" + std::string(kind) + "', found '" +
         std::string(found) + "'");
  }
}

}  // namespace crec
