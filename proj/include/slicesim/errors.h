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

#ifndef SLICESIM_ERRORS_H_
#define SLICESIM_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slicesim {

/// Bad user input: malformed files, out-of-range arguments, unknown ids.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A circuit file that does not conform to the grammar.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A numerical invariant was violated (normalization, probability range).
/// Signals a bug upstream rather than bad input.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A contraction plan would exceed the configured memory budget.
class MemoryBudgetError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace slicesim

#endif  // SLICESIM_ERRORS_H_
