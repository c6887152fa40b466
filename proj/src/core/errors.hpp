// Copyright 2026 The catl-decomp Authors
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

#ifndef CATL_CORE_ERRORS_HPP_
#define CATL_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace catl {

// Precondition violations: unknown states, out-of-range times, horizon
// overflow, scale guards.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed scenario files or inconsistent model data.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A file could not be opened or written.
class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A transformation rule was requested on a node whose preconditions fail.
class RuleNotApplicable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace catl

#endif  // CATL_CORE_ERRORS_HPP_
