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

#include "cfaug/config.h"

#include <charconv>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cfaug/error.h"
#include "cfaug/io.h"
#include "cfaug/text.h"

namespace cfaug {

namespace pt = boost::property_tree;

namespace {

// Drops a trailing "; ..." or "# ..." comment; the marker must follow
// whitespace so values like "a;b" survive.
std::string strip_inline_comment(std::string_view value) {
  for (std::size_t i = 1; i < value.size(); ++i) {
    if ((value[i] == ';' || value[i] == '#') &&
        (value[i - 1] == ' ' || value[i - 1] == '\t')) {
      value = value.substr(0, i);
      break;
    }
  }
  return std::string(text::trim(value));
}

}  // namespace

IniConfig IniConfig::parse(std::string_view contents,
                           const std::string& source) {
  IniConfig config;
  config.source_ = source;
  pt::ptree tree;
  std::istringstream in{std::string(contents)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      config.values_[name] = strip_inline_comment(node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      config.values_[name + "." + key] = strip_inline_comment(leaf.data());
    }
  }
  return config;
}

IniConfig IniConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

bool IniConfig::has(std::string_view key) const {
  return values_.find(key) != values_.end();
}

std::optional<std::string> IniConfig::get(std::string_view key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string IniConfig::require(std::string_view key) const {
  auto value = get(key);
  if (!value) {
    throw ConfigError(source_ + ": missing required key '" +
                      std::string(key) + "'");
  }
  return *value;
}

std::int64_t IniConfig::require_int(std::string_view key) const {
  return parse_int(require(key), key);
}

std::uint64_t IniConfig::require_u64(std::string_view key) const {
  return parse_u64(require(key), key);
}

double IniConfig::require_double(std::string_view key) const {
  return parse_double(require(key), key);
}

std::string IniConfig::get_or(std::string_view key,
                              std::string fallback) const {
  auto value = get(key);
  return value ? *value : std::move(fallback);
}

std::int64_t IniConfig::get_int_or(std::string_view key,
                                   std::int64_t fallback) const {
  auto value = get(key);
  return value ? parse_int(*value, key) : fallback;
}

std::uint64_t IniConfig::get_u64_or(std::string_view key,
                                    std::uint64_t fallback) const {
  auto value = get(key);
  return value ? parse_u64(*value, key) : fallback;
}

double IniConfig::get_double_or(std::string_view key, double fallback) const {
  auto value = get(key);
  return value ? parse_double(*value, key) : fallback;
}

bool IniConfig::get_bool_or(std::string_view key, bool fallback) const {
  auto value = get(key);
  if (!value) return fallback;
  const std::string v = text::to_lower(*value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(source_ + ": '" + std::string(key) +
                    "' is not a boolean: " + *value);
}

std::vector<std::string> IniConfig::get_list(std::string_view key) const {
  std::vector<std::string> out;
  auto value = get(key);
  if (!value) return out;
  for (std::string_view item : text::split(*value, ',')) {
    item = text::trim(item);
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

std::vector<std::string> IniConfig::section_keys(
    std::string_view section) const {
  std::vector<std::string> out;
  const std::string prefix = std::string(section) + ".";
  for (const auto& [key, value] : values_) {
    if (key.starts_with(prefix)) out.push_back(key.substr(prefix.size()));
  }
  return out;
}

void IniConfig::set(std::string key, std::string value) {
  values_[std::move(key)] = std::move(value);
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(what) + "' is not an integer: " +
                      std::string(text));
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(what) +
                      "' is not an unsigned integer: " + std::string(text));
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(what) + "' is not a number: " +
                      std::string(text));
  }
  return value;
}

}  // namespace cfaug
