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

#ifndef CFAUG_EVAL_H_
#define CFAUG_EVAL_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/corpus.h"

namespace cfaug {

// Token-level scores for one label, as percentages.
struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;    // gold tokens
  std::size_t predicted = 0;  // predicted tokens
  std::size_t true_positives = 0;
  // Neither in gold nor predicted; all scores are reported as 0.
  bool absent = false;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

struct MetricsReport {
  // Labels in schema order.
  std::vector<std::string> labels;
  std::string outside_label;
  std::map<std::string, ClassMetrics> per_class;
  std::size_t n_tokens = 0;
  // Unweighted means over every label, the outside label included.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  // The same means over the categories only.
  double macro_precision_no_outside = 0.0;
  double macro_recall_no_outside = 0.0;
  double macro_f1_no_outside = 0.0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Throws ValidationError on a length mismatch and SchemaError on unknown
// labels.
MetricsReport score(std::span<const std::string> gold,
                    std::span<const std::string> pred, const LabelSchema& schema);

std::string report_table(const MetricsReport& report);
std::string report_json(const MetricsReport& report);
MetricsReport parse_report_json(std::string_view contents, const std::string& source);

enum class Mark { kNone, kBest, kSecond, kWorst };

std::string_view mark_name(Mark mark);

// Methods side by side. Columns are per-class F1 (labels sorted by name)
// followed by macro Precision, Recall and F1.
struct Comparison {
  std::vector<std::string> methods;  // sorted by name
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // [method][column], rounded to 0.1
  std::vector<std::vector<Mark>> marks;
};

// Values are rounded to one decimal before ranking. In each column every
// method holding the highest value is best, every method holding the next
// distinct value is second, and every method holding the lowest value is
// worst when that value differs from both. Rows are ordered by method name.
Comparison compare(const std::map<std::string, MetricsReport>& reports);

// Aligned text; best, second and worst cells carry a trailing '*', '+' or '-'.
std::string comparison_table(const Comparison& comparison);
std::string comparison_json(const Comparison& comparison);

}  // namespace cfaug

#endif  // CFAUG_EVAL_H_
