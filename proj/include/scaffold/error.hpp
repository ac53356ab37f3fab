// Copyright 2026 The Scaffold Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scaffold {

// Root of all errors raised by the library. Each subclass corresponds to one
// failure category the HTTP layer maps onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

  // Same position, message prefixed with e.g. a file name.
  ParseError prefixed(const std::string& prefix) const {
    return ParseError(prefix + ": " + what(), line_, column_, Raw{});
  }

 private:
  struct Raw {};
  ParseError(const std::string& full, int line, int column, Raw)
      : Error(full), line_(line), column_(column) {}

  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Event stream violates open/close pairing or sequence ordering.
class OrderingError : public Error {
 public:
  using Error::Error;
};

// Operation attempted in a session phase that does not allow it.
class PhaseError : public Error {
 public:
  PhaseError(const std::string& what, std::int64_t remaining_ms = 0)
      : Error(what), remaining_ms_(remaining_ms) {}

  // Time left before the operation becomes legal, when that is the reason.
  std::int64_t remaining_ms() const { return remaining_ms_; }

 private:
  std::int64_t remaining_ms_;
};

// Search adapter failed; callers may retry.
class BackendError : public Error {
 public:
  using Error::Error;
};

class BodyUnavailableError : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

}  // namespace scaffold
