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

#include "cfaug/error.h"

namespace cfaug {

namespace {

std::string format_location(const std::string& source, std::size_t line,
                            const std::string& message) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line);
  out += ": " + message;
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line,
                       const std::string& message)
    : Error(format_location(source, line, message)),
      source_(source),
      line_(line) {}

}  // namespace cfaug
