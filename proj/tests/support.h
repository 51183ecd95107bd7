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

#ifndef CFAUG_TESTS_SUPPORT_H_
#define CFAUG_TESTS_SUPPORT_H_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfaug/rng.h"
#include "cfaug/senttok.h"

namespace cfaug::testing {

// Replays a fixed list of draws and fails loudly when the code under test
// asks for more, or for a value outside the requested range.
class ScriptedChoices final : public ChoiceSource {
 public:
  ScriptedChoices(std::initializer_list<std::uint64_t> values) : values_(values) {}

  std::uint64_t below(std::uint64_t n) override {
    if (values_.empty()) throw std::logic_error("scripted choices exhausted");
    const std::uint64_t v = values_.front();
    values_.pop_front();
    if (v >= n) {
      throw std::logic_error("scripted choice " + std::to_string(v) +
                             " out of range " + std::to_string(n));
    }
    requested_.push_back(n);
    return v;
  }

  bool exhausted() const { return values_.empty(); }
  const std::vector<std::uint64_t>& requested() const { return requested_; }

 private:
  std::deque<std::uint64_t> values_;
  std::vector<std::uint64_t> requested_;
};

// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& path);
void spit(const std::filesystem::path& path, const std::string& contents);

// The claim sentence used by the golden augmentation tests.
inline constexpr const char* kClaimText = "80% of people diagnosed with IBS have Sibo.";

LabeledSentence claim_sentence();

// Random sentence over a small vocabulary of verbs, entities, numbers and
// plain words; every token carries `label`.
LabeledSentence random_sentence(Rng& rng, const std::string& label,
                                std::size_t index);

}  // namespace cfaug::testing

#endif  // CFAUG_TESTS_SUPPORT_H_
