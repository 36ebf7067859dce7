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

#ifndef CREC_COMMON_H_
#define CREC_COMMON_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crec {

// Machine-readable error categories. The CLI prints these names verbatim.
enum class ErrorCode {
  kNotARepository,
  kEmptyRepository,
  kUnknownCommit,
  kTooFewSamples,
  kWindowUnavailable,
  kDegenerateData,
  kInsufficientNegatives,
  kTooSmall,
  kTooFewProjects,
  kMissingInput,
  kConfigError,
  kFormatVersionMismatch,
  kParseError,
  kRangeViolation,
  kInvalidArgument,
  kProcessError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// 64-bit FNV-1a, used for stable identifiers that must not depend on the
// standard library's std::hash.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 14695981039346656037ULL);

std::string hex64(std::uint64_t value);

// Shortest round-trip text; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double value);

// Inverse of format_double; nullopt unless the whole text is consumed.
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

inline constexpr int kFormatVersion = 1;

// "crec-format v1 <kind>".
std::string format_header(std::string_view kind);

// Throws Error{kFormatVersionMismatch} for another version and
// Error{kParseError} for a malformed header or a different kind.
void check_format_header(std::string_view line, std::string_view kind,
                         std::string_view source);

}  // namespace crec

#endif  // CREC_COMMON_H_
