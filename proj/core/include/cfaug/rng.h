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

#ifndef CFAUG_RNG_H_
#define CFAUG_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace cfaug {

// Source of random choices consumed by the augmenters. Abstract so tests can
// script the exact draws an operator makes.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;

  // Uniform integer in [0, n). n must be positive.
  virtual std::uint64_t below(std::uint64_t n) = 0;
};

// Seeded generator whose output is identical on every platform: it uses
// mt19937_64 for raw bits and its own range reduction, never the
// implementation-defined std distributions.
class Rng final : public ChoiceSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) override;
  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double gaussian(double mean, double stddev);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Stable 64-bit hashing used to derive per-item seeds. Independent of
// std::hash and of thread scheduling.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_string(std::string_view s);
std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t value);
std::uint64_t combine_seed(std::uint64_t seed, std::string_view value);

// k distinct values from [0, n), returned in ascending order.
std::vector<std::size_t> sample_distinct(ChoiceSource& source, std::size_t n,
                                         std::size_t k);

}  // namespace cfaug

#endif  // CFAUG_RNG_H_
