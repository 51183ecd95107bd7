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

#include "cfaug/text.h"

namespace cfaug::text {

std::vector<std::string_view> split(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const std::size_t begin = s.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  const std::size_t end = s.find_last_not_of(kSpace);
  return s.substr(begin, end - begin + 1);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ascii_alpha(char c) { return is_ascii_upper(c) || is_ascii_lower(c); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool has_whitespace(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      return true;
    }
  }
  return false;
}

bool is_number(std::string_view s) {
  if (s.empty() || !is_ascii_digit(s.front()) || !is_ascii_digit(s.back())) {
    return false;
  }
  bool prev_sep = false;
  for (char c : s) {
    if (is_ascii_digit(c)) {
      prev_sep = false;
    } else if (c == '.' || c == ',') {
      if (prev_sep) return false;
      prev_sep = true;
    } else {
      return false;
    }
  }
  return true;
}

bool is_all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_ascii_digit(c)) return false;
  }
  return true;
}

bool starts_upper(std::string_view s) {
  return !s.empty() && is_ascii_upper(s.front());
}

bool is_all_upper(std::string_view s) {
  bool any_letter = false;
  for (char c : s) {
    if (is_ascii_lower(c)) return false;
    if (is_ascii_upper(c)) any_letter = true;
  }
  return any_letter;
}

std::string match_case(std::string_view model, std::string_view word) {
  std::string out(word);
  if (model.size() > 1 && is_all_upper(model)) {
    for (char& c : out) {
      if (is_ascii_lower(c)) c = static_cast<char>(c - 'a' + 'A');
    }
  } else if (starts_upper(model) && !out.empty() && is_ascii_lower(out[0])) {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

std::vector<std::string> read_list(std::string_view contents) {
  std::vector<std::string> out;
  for (std::string_view line : split(contents, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.emplace_back(line);
  }
  return out;
}

}  // namespace cfaug::text
