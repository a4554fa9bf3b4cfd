// Copyright 2026 The slicesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLICESIM_FORMATS_H_
#define SLICESIM_FORMATS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicesim/tensornet.h"

namespace slicesim {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t x);

std::string read_text_file(const std::string& path);
/// Writes to a temporary sibling, then renames over `path`.
void write_text_file_atomic(const std::string& path, std::string_view content);

/// Splits on '\n', dropping a trailing empty line and '\r'.
std::vector<std::string_view> split_lines(std::string_view text);
/// Whitespace-separated fields with their 1-based columns.
std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view line);

bool is_bitstring(std::string_view s);

/// "<bitstring> <re> <im>" per amplitude.
std::string format_amplitudes(const AmplitudeBatch& batch);
std::vector<std::pair<std::string, Complex>> parse_amplitudes(std::string_view text);

/// One bitstring per line.
std::string format_samples(const std::vector<std::string>& bitstrings);
std::vector<std::string> parse_samples(std::string_view text);

/// "<bitstring> <probability>" per line.
std::string format_probabilities(const std::vector<std::string>& bitstrings,
                                 const std::vector<double>& probabilities);
std::vector<std::pair<std::string, double>> parse_probabilities(std::string_view text);

}  // namespace slicesim

#endif  // SLICESIM_FORMATS_H_
