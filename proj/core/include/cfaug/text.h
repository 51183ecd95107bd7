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

#ifndef CFAUG_TEXT_H_
#define CFAUG_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace cfaug::text {

std::vector<std::string_view> split(std::string_view s, char delim);
std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool is_ascii_upper(char c);
bool is_ascii_lower(char c);
bool is_ascii_alpha(char c);
bool is_ascii_digit(char c);
bool has_whitespace(std::string_view s);

// Digits with optional single-character grouping or decimal separators,
// e.g. "80", "3.5", "1,000".
bool is_number(std::string_view s);
// Every character is an ASCII digit.
bool is_all_digits(std::string_view s);
bool starts_upper(std::string_view s);
// At least one letter and no lowercase letters.
bool is_all_upper(std::string_view s);

// Copies the capitalization pattern of `model` onto `word`: all-caps models
// (longer than one letter) upper-case the word, an initial capital
// capitalizes it, otherwise the word is returned unchanged.
std::string match_case(std::string_view model, std::string_view word);

// One entry per line, trimmed. Blank lines and '#' comments are skipped.
std::vector<std::string> read_list(std::string_view contents);

}  // namespace cfaug::text

#endif  // CFAUG_TEXT_H_
