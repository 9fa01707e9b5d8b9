// Copyright 2026 The CoVoSwitch Tools Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covoswitch {

/// Malformed input text. `line()` is 1-based, 0 when the error is not tied
/// to a line (e.g. a single alignment string parsed in isolation).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  /// Message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// Caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Metric or statistic is undefined on the given input (empty corpus,
/// zero denominator, constant rank sequence, ...).
class UndefinedInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covoswitch
