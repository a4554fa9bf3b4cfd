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

#include "slicesim/formats.h"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "slicesim/errors.h"

namespace slicesim {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InputError("not a number: '" + std::string(text) + "'");
  }
  return x;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw InputError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view line) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.emplace_back(line.substr(start, i - start), start + 1);
  }
  return out;
}

bool is_bitstring(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c != '0' && c != '1') return false;
  }
  return true;
}

namespace {

double field_double(std::string_view field, std::size_t line, std::size_t col) {
  try {
    return parse_double(field);
  } catch (const InputError& e) {
    throw ParseError(line, col, e.what());
  }
}

void check_bitstring(std::string_view s, std::size_t width, std::size_t line, std::size_t col) {
  if (!is_bitstring(s)) throw ParseError(line, col, "expected a bitstring");
  if (width != 0 && s.size() != width) throw ParseError(line, col, "bitstring length differs from earlier lines");
}

}  // namespace

std::string format_amplitudes(const AmplitudeBatch& batch) {
  std::string out;
  for (std::size_t i = 0; i < batch.amplitudes.size(); ++i) {
    out += batch.spec.bitstring(i);
    out += ' ';
    out += format_double(batch.amplitudes[i].real());
    out += ' ';
    out += format_double(batch.amplitudes[i].imag());
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, Complex>> parse_amplitudes(std::string_view text) {
  std::vector<std::pair<std::string, Complex>> out;
  std::size_t width = 0;
  const auto lines = split_lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l]);
    if (fields.empty()) continue;
    if (fields.size() != 3) throw ParseError(l + 1, 1, "expected '<bitstring> <re> <im>'");
    check_bitstring(fields[0].first, width, l + 1, fields[0].second);
    width = fields[0].first.size();
    out.emplace_back(std::string(fields[0].first),
                     Complex(field_double(fields[1].first, l + 1, fields[1].second),
                             field_double(fields[2].first, l + 1, fields[2].second)));
  }
  return out;
}

std::string format_samples(const std::vector<std::string>& bitstrings) {
  std::string out;
  for (const auto& b : bitstrings) {
    out += b;
    out += '\n';
  }
  return out;
}

std::vector<std::string> parse_samples(std::string_view text) {
  std::vector<std::string> out;
  std::size_t width = 0;
  const auto lines = split_lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l]);
    if (fields.empty()) continue;
    if (fields.size() != 1) throw ParseError(l + 1, fields[1].second, "expected one bitstring per line");
    check_bitstring(fields[0].first, width, l + 1, fields[0].second);
    width = fields[0].first.size();
    out.emplace_back(fields[0].first);
  }
  return out;
}

std::string format_probabilities(const std::vector<std::string>& bitstrings,
                                 const std::vector<double>& probabilities) {
  if (bitstrings.size() != probabilities.size()) {
    throw InputError("bitstring and probability counts differ");
  }
  std::string out;
  for (std::size_t i = 0; i < bitstrings.size(); ++i) {
    out += bitstrings[i];
    out += ' ';
    out += format_double(probabilities[i]);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, double>> parse_probabilities(std::string_view text) {
  std::vector<std::pair<std::string, double>> out;
  std::size_t width = 0;
  const auto lines = split_lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const auto fields = split_fields(lines[l]);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(l + 1, 1, "expected '<bitstring> <probability>'");
    check_bitstring(fields[0].first, width, l + 1, fields[0].second);
    width = fields[0].first.size();
    const double p = field_double(fields[1].first, l + 1, fields[1].second);
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError(l + 1, fields[1].second, "probability outside [0, 1]");
    out.emplace_back(std::string(fields[0].first), p);
  }
  return out;
}

}  // namespace slicesim
