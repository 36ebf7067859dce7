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

#ifndef CREC_LEVENSHTEIN_H_
#define CREC_LEVENSHTEIN_H_

#include <cstddef>
#include <string_view>

namespace crec {

// Unit-cost edit distance over bytes.
std::size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace crec

#endif  // CREC_LEVENSHTEIN_H_
