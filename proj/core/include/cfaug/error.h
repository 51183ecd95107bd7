// Copyright 2026 The cfaug Authors.
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

#ifndef CFAUG_ERROR_H_
#define CFAUG_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfaug {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// A label that the declared schema does not know about.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid data, e.g. overlapping spans.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration or resources.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Transport-level failure that may succeed on a later attempt.
class RetriableError : public Error {
 public:
  using Error::Error;
};

// An augmenter could not produce anything usable.
class AugmentationError : public Error {
 public:
  using Error::Error;
};

// Training objective became NaN or infinite.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfaug

#endif  // CFAUG_ERROR_H_
