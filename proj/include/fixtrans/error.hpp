//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fixtrans {

// Input outside the declared domain: unknown item or name, malformed value.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive procedure asked to scan beyond its fixed bound.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An iteration chain that should have been monotone was not.
class MonotonicityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FuelExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input rejected by one of the parsers. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace fixtrans
