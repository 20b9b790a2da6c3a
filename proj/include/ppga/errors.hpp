// Copyright 2026 The PPGA Authors
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

#ifndef PPGA_ERRORS_HPP_
#define PPGA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ppga {

// Election file could not be parsed. `line` is 1-based; 0 when the failure is
// not tied to a specific line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) + ")"
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// The requested (epsilon, delta, alpha, K) combination has no positive
// per-iteration budget.
class PrivacyBudgetError : public std::runtime_error {
 public:
  explicit PrivacyBudgetError(const std::string& message)
      : std::runtime_error(message) {}
};

class MetricsError : public std::runtime_error {
 public:
  explicit MetricsError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace ppga

#endif  // PPGA_ERRORS_HPP_
