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

#include "cfaug/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "cfaug/error.h"

namespace cfaug {

namespace {

using nlohmann::ordered_json;

double percent(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

double round1(double v) { return std::round(v * 10.0) / 10.0; }

std::string fixed1(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f", v);
  return buffer;
}

std::string pad(const std::string& s, std::size_t width, bool left) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

std::vector<std::string> sorted_labels(const MetricsReport& report) {
  std::vector<std::string> labels = report.labels;
  std::sort(labels.begin(), labels.end());
  return labels;
}

}  // namespace

MetricsReport score(std::span<const std::string> gold,
                    std::span<const std::string> pred, const LabelSchema& schema) {
  if (gold.size() != pred.size()) {
    throw ValidationError("gold has " + std::to_string(gold.size()) +
                          " tokens but prediction has " +
                          std::to_string(pred.size()));
  }
  MetricsReport report;
  report.labels = schema.labels();
  report.outside_label = schema.outside_label();
  report.n_tokens = gold.size();
  for (const auto& l : report.labels) report.per_class[l] = {};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    schema.require_index(gold[i]);
    schema.require_index(pred[i]);
    ++report.per_class[gold[i]].support;
    ++report.per_class[pred[i]].predicted;
    if (gold[i] == pred[i]) ++report.per_class[gold[i]].true_positives;
  }
  double sum_p = 0, sum_r = 0, sum_f = 0;
  for (const auto& l : report.labels) {
    ClassMetrics& m = report.per_class[l];
    m.absent = m.support == 0 && m.predicted == 0;
    m.precision = percent(m.true_positives, m.predicted);
    m.recall = percent(m.true_positives, m.support);
    m.f1 = harmonic(m.precision, m.recall);
    sum_p += m.precision;
    sum_r += m.recall;
    sum_f += m.f1;
  }
  const auto n = static_cast<double>(report.labels.size());
  report.macro_precision = sum_p / n;
  report.macro_recall = sum_r / n;
  report.macro_f1 = sum_f / n;
  const auto& outside = report.per_class[report.outside_label];
  const double k = n - 1.0;
  if (k > 0) {
    report.macro_precision_no_outside = (sum_p - outside.precision) / k;
    report.macro_recall_no_outside = (sum_r - outside.recall) / k;
    report.macro_f1_no_outside = (sum_f - outside.f1) / k;
  }
  return report;
}

std::string report_table(const MetricsReport& report) {
  std::size_t width = 5;
  for (const auto& l : report.labels) width = std::max(width, l.size());
  width = std::max<std::size_t>(width, 13);
  std::string out = pad("label", width, true) + "  precision     recall         f1    support\n";
  auto row = [&](const std::string& name, double p, double r, double f,
                 const std::string& support) {
    out += pad(name, width, true) + pad(fixed1(p), 11, false) +
           pad(fixed1(r), 11, false) + pad(fixed1(f), 11, false) +
           pad(support, 11, false) + "\n";
  };
  for (const auto& l : sorted_labels(report)) {
    const auto& m = report.per_class.at(l);
    row(l + (m.absent ? " (absent)" : ""), m.precision, m.recall, m.f1,
        std::to_string(m.support));
  }
  row("macro", report.macro_precision, report.macro_recall, report.macro_f1,
      std::to_string(report.n_tokens));
  row("macro w/o " + report.outside_label, report.macro_precision_no_outside,
      report.macro_recall_no_outside, report.macro_f1_no_outside, "");
  return out;
}

std::string report_json(const MetricsReport& report) {
  ordered_json j;
  j["labels"] = report.labels;
  j["outside_label"] = report.outside_label;
  j["n_tokens"] = report.n_tokens;
  ordered_json per = ordered_json::object();
  for (const auto& l : report.labels) {
    const auto& m = report.per_class.at(l);
    per[l] = {{"precision", m.precision}, {"recall", m.recall},
              {"f1", m.f1},               {"support", m.support},
              {"predicted", m.predicted}, {"true_positives", m.true_positives},
              {"absent", m.absent}};
  }
  j["per_class"] = per;
  j["macro"] = {{"precision", report.macro_precision},
                {"recall", report.macro_recall},
                {"f1", report.macro_f1}};
  j["macro_without_outside"] = {{"precision", report.macro_precision_no_outside},
                                {"recall", report.macro_recall_no_outside},
                                {"f1", report.macro_f1_no_outside}};
  return j.dump(2) + "\n";
}

MetricsReport parse_report_json(std::string_view contents, const std::string& source) {
  try {
    const auto j = nlohmann::json::parse(contents);
    MetricsReport report;
    report.labels = j.at("labels").get<std::vector<std::string>>();
    report.outside_label = j.at("outside_label").get<std::string>();
    report.n_tokens = j.at("n_tokens").get<std::size_t>();
    for (const auto& l : report.labels) {
      const auto& m = j.at("per_class").at(l);
      ClassMetrics c;
      c.precision = m.at("precision").get<double>();
      c.recall = m.at("recall").get<double>();
      c.f1 = m.at("f1").get<double>();
      c.support = m.at("support").get<std::size_t>();
      c.predicted = m.at("predicted").get<std::size_t>();
      c.true_positives = m.at("true_positives").get<std::size_t>();
      c.absent = m.at("absent").get<bool>();
      report.per_class[l] = c;
    }
    report.macro_precision = j.at("macro").at("precision").get<double>();
    report.macro_recall = j.at("macro").at("recall").get<double>();
    report.macro_f1 = j.at("macro").at("f1").get<double>();
    const auto& w = j.at("macro_without_outside");
    report.macro_precision_no_outside = w.at("precision").get<double>();
    report.macro_recall_no_outside = w.at("recall").get<double>();
    report.macro_f1_no_outside = w.at("f1").get<double>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("bad metrics report: ") + e.what());
  }
}

std::string_view mark_name(Mark mark) {
  switch (mark) {
    case Mark::kNone:
      return "";
    case Mark::kBest:
      return "best";
    case Mark::kSecond:
      return "second";
    case Mark::kWorst:
      return "worst";
  }
  return "";
}

Comparison compare(const std::map<std::string, MetricsReport>& reports) {
  Comparison out;
  if (reports.empty()) return out;
  const auto labels = sorted_labels(reports.begin()->second);
  for (const auto& [method, report] : reports) {
    if (sorted_labels(report) != labels) {
      throw ConfigError("report '" + method + "' uses a different label set");
    }
    out.methods.push_back(method);
    std::vector<double> row;
    for (const auto& l : labels) row.push_back(round1(report.per_class.at(l).f1));
    row.push_back(round1(report.macro_precision));
    row.push_back(round1(report.macro_recall));
    row.push_back(round1(report.macro_f1));
    out.values.push_back(std::move(row));
  }
  out.columns = labels;
  out.columns.insert(out.columns.end(), {"Precision", "Recall", "F1"});
  out.marks.assign(out.methods.size(),
                   std::vector<Mark>(out.columns.size(), Mark::kNone));
  for (std::size_t c = 0; c < out.columns.size(); ++c) {
    std::set<double, std::greater<>> distinct;
    for (const auto& row : out.values) distinct.insert(row[c]);
    auto it = distinct.begin();
    const double best = *it;
    const bool has_second = distinct.size() >= 2;
    const double second = has_second ? *std::next(it) : best;
    const bool has_worst = distinct.size() >= 3;
    const double worst = *distinct.rbegin();
    for (std::size_t m = 0; m < out.methods.size(); ++m) {
      const double v = out.values[m][c];
      if (v == best) {
        out.marks[m][c] = Mark::kBest;
      } else if (has_second && v == second) {
        out.marks[m][c] = Mark::kSecond;
      } else if (has_worst && v == worst) {
        out.marks[m][c] = Mark::kWorst;
      }
    }
  }
  return out;
}

std::string comparison_table(const Comparison& comparison) {
  std::size_t width = 6;
  for (const auto& m : comparison.methods) width = std::max(width, m.size());
  std::string out = pad("method", width, true);
  for (const auto& c : comparison.columns) out += pad(c, 11, false);
  out += "\n";
  for (std::size_t m = 0; m < comparison.methods.size(); ++m) {
    out += pad(comparison.methods[m], width, true);
    for (std::size_t c = 0; c < comparison.columns.size(); ++c) {
      std::string cell = fixed1(comparison.values[m][c]);
      switch (comparison.marks[m][c]) {
        case Mark::kBest:
          cell += "*";
          break;
        case Mark::kSecond:
          cell += "+";
          break;
        case Mark::kWorst:
          cell += "-";
          break;
        case Mark::kNone:
          cell += " ";
          break;
      }
      out += pad(cell, 11, false);
    }
    out += "\n";
  }
  return out;
}

std::string comparison_json(const Comparison& comparison) {
  ordered_json j;
  j["columns"] = comparison.columns;
  ordered_json rows = ordered_json::array();
  for (std::size_t m = 0; m < comparison.methods.size(); ++m) {
    ordered_json cells = ordered_json::object();
    for (std::size_t c = 0; c < comparison.columns.size(); ++c) {
      cells[comparison.columns[c]] = {
          {"value", comparison.values[m][c]},
          {"mark", std::string(mark_name(comparison.marks[m][c]))}};
    }
    rows.push_back({{"method", comparison.methods[m]}, {"cells", cells}});
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace cfaug
