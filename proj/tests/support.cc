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

#include "support.h"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace cfaug::testing {

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("cfaug_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
}

LabeledSentence claim_sentence() { return make_sentence("7", 0, kClaimText, "CLA"); }

LabeledSentence random_sentence(Rng& rng, const std::string& label,
                                std::size_t index) {
  static const std::vector<std::string> kWords = {
      "people", "the",     "gut",     "doctor", "with",   "of",    "my",
      "IBS",    "Sibo",    "Crohn",   "GERD",   "80",     "12",    "%",
      "have",   "causes",  "caused",  "taking", "tried",  "helps", "reduced",
      "stop",   "eat",     "writes",  "ran",    "seen",   "going", "is",
      "was",    "banana",  "quickly", "and",    "it",     "For",   "Research"};
  const std::size_t n = 1 + rng.below(14);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) text += " ";
    text += kWords[rng.below(kWords.size())];
  }
  if (rng.below(2) == 0) text += ".";
  return make_sentence("r" + std::to_string(index), 0, text, label);
}

}  // namespace cfaug::testing
