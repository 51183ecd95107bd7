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

#ifndef CFAUG_CONFIG_H_
#define CFAUG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cfaug {

// Declarative INI-style configuration:
//
//   seed = 7
//   [augment]
//   method = VR_Random   ; comment
//
// Keys are addressed as "section.key"; keys before any section header are
// addressed by their bare name. Comments start with ';' or '#'.
class IniConfig {
 public:
  IniConfig() = default;

  static IniConfig parse(std::string_view contents, const std::string& source);
  static IniConfig load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  bool has(std::string_view key) const;

  std::optional<std::string> get(std::string_view key) const;
  // Throws ConfigError when the key is missing or the value does not parse.
  std::string require(std::string_view key) const;
  std::int64_t require_int(std::string_view key) const;
  std::uint64_t require_u64(std::string_view key) const;
  double require_double(std::string_view key) const;

  std::string get_or(std::string_view key, std::string fallback) const;
  std::int64_t get_int_or(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_u64_or(std::string_view key, std::uint64_t fallback) const;
  double get_double_or(std::string_view key, double fallback) const;
  bool get_bool_or(std::string_view key, bool fallback) const;
  // Comma-separated list, entries trimmed, empty entries dropped.
  std::vector<std::string> get_list(std::string_view key) const;

  // Keys of one section, without the "section." prefix.
  std::vector<std::string> section_keys(std::string_view section) const;

  void set(std::string key, std::string value);

 private:
  std::string source_;
  std::map<std::string, std::string, std::less<>> values_;
};

std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);

}  // namespace cfaug

#endif  // CFAUG_CONFIG_H_
