// Copyright 2026 The regexpspace Authors.
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

// Scoring of externally produced model answers: answer extraction, outcome
// categories, task metrics and reports.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "regexpspace/automata.hpp"
#include "regexpspace/dataset.hpp"
#include "regexpspace/error.hpp"
#include "regexpspace/syntax.hpp"

namespace regexpspace {

enum class Task { Min, Eq };

struct ModelResponse {
  std::string id;
  Task task = Task::Min;
  std::string raw_text;
  bool truncated_by_limit = false;
};

struct ParsedAnswer {
  std::string answer_text;
  bool practical_flag = false;

  friend bool operator==(const ParsedAnswer&, const ParsedAnswer&) = default;
};

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find('\n', start);
    if (end == std::string_view::npos) end = s.size();
    auto line = s.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops separators and markdown emphasis around an answer taken from prose.
inline std::string_view undecorate(std::string_view s) {
  for (;;) {
    const auto before = s.size();
    s = trim(s);
    while (!s.empty() && s.front() == ':') s.remove_prefix(1);
    s = trim(s);
    if (s.size() >= 4 && s.starts_with("**") && s.ends_with("**")) {
      s = s.substr(2, s.size() - 4);
    } else if (s.starts_with("**")) {
      s.remove_prefix(2);
    }
    if (!s.empty() && s.back() == '.') s.remove_suffix(1);
    if (s.size() == before) return s;
  }
}

// Text after `open` (which ends with '{') up to the matching brace, or to
// the end when the braces never balance.
inline std::string balanced_after(std::string_view s, std::size_t open_end) {
  int depth = 1;
  std::string out;
  for (std::size_t i = open_end; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return out;
    out += s[i];
  }
  return out;
}

inline constexpr std::array<std::string_view, 2> kAnswerKeywords{"answer:", "answer**"};
inline constexpr std::array<std::string_view, 3> kIndicativePhrases{
    "minimal regex", "minimized regex", "simplified regex"};

inline std::optional<std::string> from_keyword_lines(const std::vector<std::string_view>& lines) {
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const std::string low = lower(*it);
    std::size_t best = std::string::npos;
    std::size_t best_len = 0;
    for (auto kw : kAnswerKeywords) {
      const auto pos = low.find(kw);
      if (pos < best) {
        best = pos;
        best_len = kw.size();
      }
    }
    if (best != std::string::npos) return std::string(undecorate(it->substr(best + best_len)));
  }
  return std::nullopt;
}

inline std::optional<std::string> from_indicative_lines(const std::vector<std::string_view>& lines) {
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const std::string low = lower(*it);
    for (auto phrase : kIndicativePhrases) {
      const auto pos = low.find(phrase);
      if (pos == std::string::npos) continue;
      const auto after = pos + phrase.size();
      const auto is_pos = low.find(" is ", after);
      const auto colon_pos = low.find(':', after);
      if (is_pos == std::string::npos && colon_pos == std::string::npos) continue;
      const auto cut = is_pos < colon_pos ? is_pos + 4 : colon_pos + 1;
      return std::string(undecorate(it->substr(cut)));
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Extracts the final answer from free-form model text: the last \boxed{...}
/// (with \text{...} unwrapped), else a line with an answer keyword, else a
/// line naming the minimal regex, else the last non-empty line. The result
/// has whitespace, '^' and braces removed, and '|' becomes '+' with
/// practical_flag set.
inline ParsedAnswer parse_answer(std::string_view raw) {
  std::string a;
  const auto boxed = raw.rfind("boxed");
  if (boxed == std::string_view::npos) {
    const auto lines = detail::split_lines(raw);
    if (auto kw = detail::from_keyword_lines(lines)) {
      a = *kw;
    } else if (auto phrase = detail::from_indicative_lines(lines)) {
      a = *phrase;
    } else {
      for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        if (!detail::trim(*it).empty()) {
          a = std::string(detail::trim(*it));
          break;
        }
      }
    }
  } else {
    std::size_t pos = boxed + 5;
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
    a = pos < raw.size() && raw[pos] == '{' ? detail::balanced_after(raw, pos + 1)
                                            : std::string(raw.substr(pos));
  }
  for (auto t = a.find("text{"); t != std::string::npos; t = a.find("text{")) {
    a = detail::balanced_after(a, t + 5);
  }

  ParsedAnswer out;
  for (char c : a) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == '{' || c == '}') continue;
    if (c == '|') {
      out.practical_flag = true;
      c = '+';
    }
    out.answer_text += c;
  }
  return out;
}

inline ParsedAnswer parse_answer(const ModelResponse& response) {
  return parse_answer(response.raw_text);
}

/// True when the text ends in a run of at least `repeats` back-to-back
/// copies of some block of at most `window` characters, and that run makes
/// up at least `min_fraction` of the text.
inline bool detect_repetition(std::string_view text, std::size_t window = 64,
                              std::size_t repeats = 5, double min_fraction = 0.25) {
  const std::size_t n = text.size();
  for (std::size_t p = 1; p <= window && p * repeats <= n; ++p) {
    std::size_t run = p;
    while (run < n && text[n - 1 - run] == text[n - 1 - run + p]) ++run;
    if (run >= p * repeats && static_cast<double>(run) >= min_fraction * static_cast<double>(n)) {
      return true;
    }
  }
  return false;
}

enum class MinOutcome {
  Minimal,
  EquivalentNotMinimal,
  ValidNotEquivalent,
  InvalidComplete,
  Repetition,
  IncompleteTokenLimit,
};

enum class EqOutcome { TP, TN, FP, FN, InvalidComplete, Repetition, IncompleteTokenLimit };

inline constexpr std::array<MinOutcome, 6> kMinOutcomes{
    MinOutcome::Minimal,         MinOutcome::EquivalentNotMinimal, MinOutcome::ValidNotEquivalent,
    MinOutcome::InvalidComplete, MinOutcome::Repetition,           MinOutcome::IncompleteTokenLimit};

inline constexpr std::array<EqOutcome, 7> kEqOutcomes{
    EqOutcome::TP,         EqOutcome::TN,
    EqOutcome::FP,         EqOutcome::FN,
    EqOutcome::InvalidComplete, EqOutcome::Repetition,
    EqOutcome::IncompleteTokenLimit};

constexpr std::string_view to_string(MinOutcome o) noexcept {
  switch (o) {
    case MinOutcome::Minimal: return "Minimal";
    case MinOutcome::EquivalentNotMinimal: return "EquivalentNotMinimal";
    case MinOutcome::ValidNotEquivalent: return "ValidNotEquivalent";
    case MinOutcome::InvalidComplete: return "InvalidComplete";
    case MinOutcome::Repetition: return "Repetition";
    case MinOutcome::IncompleteTokenLimit: return "IncompleteTokenLimit";
  }
  return "";
}

constexpr std::string_view to_string(EqOutcome o) noexcept {
  switch (o) {
    case EqOutcome::TP: return "TP";
    case EqOutcome::TN: return "TN";
    case EqOutcome::FP: return "FP";
    case EqOutcome::FN: return "FN";
    case EqOutcome::InvalidComplete: return "InvalidComplete";
    case EqOutcome::Repetition: return "Repetition";
    case EqOutcome::IncompleteTokenLimit: return "IncompleteTokenLimit";
  }
  return "";
}

struct MinJudgement {
  MinOutcome outcome;
  std::size_t answer_length = 0;  // 0 unless the answer parsed
  ParsedAnswer answer;
};

inline MinJudgement classify_min(const Regex& query, const ModelResponse& response,
                                 std::size_t oracle_min_length,
                                 const Alphabet& alphabet = Alphabet::standard()) {
  if (detect_repetition(response.raw_text)) return {MinOutcome::Repetition, 0, {}};
  if (response.truncated_by_limit) return {MinOutcome::IncompleteTokenLimit, 0, {}};
  ParsedAnswer answer = parse_answer(response);
  std::optional<Regex> parsed;
  try {
    parsed = parse(answer.answer_text, alphabet);
  } catch (const Error&) {
    return {MinOutcome::InvalidComplete, 0, std::move(answer)};
  }
  const std::size_t len = tree_length(*parsed);
  if (!equivalent(query, *parsed)) return {MinOutcome::ValidNotEquivalent, len, std::move(answer)};
  return {len > oracle_min_length ? MinOutcome::EquivalentNotMinimal : MinOutcome::Minimal, len,
          std::move(answer)};
}

inline EqOutcome classify_eq(bool pair_label, const ModelResponse& response) {
  if (detect_repetition(response.raw_text)) return EqOutcome::Repetition;
  if (response.truncated_by_limit) return EqOutcome::IncompleteTokenLimit;
  const std::string text = detail::lower(parse_answer(response).answer_text);
  if (text != "true" && text != "false") return EqOutcome::InvalidComplete;
  const bool predicted = text == "true";
  if (predicted) return pair_label ? EqOutcome::TP : EqOutcome::FP;
  return pair_label ? EqOutcome::FN : EqOutcome::TN;
}

inline double minimality_metric(const std::vector<MinOutcome>& outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyOutcomes, "no outcomes");
  const auto hits = std::count(outcomes.begin(), outcomes.end(), MinOutcome::Minimal);
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

inline double equivalence_metric(const std::vector<MinOutcome>& outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyOutcomes, "no outcomes");
  const auto hits = std::count_if(outcomes.begin(), outcomes.end(), [](MinOutcome o) {
    return o == MinOutcome::Minimal || o == MinOutcome::EquivalentNotMinimal;
  });
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

struct RatioItem {
  std::size_t query_length;
  MinOutcome outcome;
  std::size_t answer_length;
};

/// Geometric mean of answer/query length, where answers that are not
/// equivalent or not shorter-or-equal count as ratio 1.
inline double length_ratio_metric(const std::vector<RatioItem>& items) {
  if (items.empty()) throw Error(ErrorCode::EmptyOutcomes, "no outcomes");
  double log_sum = 0;
  for (const auto& item : items) {
    if (item.query_length == 0) throw Error(ErrorCode::InvalidConfig, "query length 0");
    const bool equivalent_answer = item.outcome == MinOutcome::Minimal ||
                                   item.outcome == MinOutcome::EquivalentNotMinimal;
    if (equivalent_answer && item.answer_length <= item.query_length) {
      log_sum += std::log(static_cast<double>(item.answer_length) /
                          static_cast<double>(item.query_length));
    }
  }
  return std::exp(log_sum / static_cast<double>(items.size()));
}

struct ConfusionMetrics {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double fail_rate = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

/// Accuracy and fail rate count every outcome; precision, recall and F1 use
/// only outcomes with an extracted True/False label. Zero denominators give
/// 0 with the matching flag set.
inline ConfusionMetrics confusion_metrics(const std::vector<EqOutcome>& outcomes) {
  std::map<EqOutcome, std::size_t> n;
  for (auto o : outcomes) ++n[o];
  const double tp = static_cast<double>(n[EqOutcome::TP]);
  const double tn = static_cast<double>(n[EqOutcome::TN]);
  const double fp = static_cast<double>(n[EqOutcome::FP]);
  const double fn = static_cast<double>(n[EqOutcome::FN]);
  const double total = static_cast<double>(outcomes.size());
  ConfusionMetrics m;
  if (total > 0) {
    m.accuracy = (tp + tn) / total;
    m.fail_rate = (total - tp - tn - fp - fn) / total;
  }
  m.precision_undefined = tp + fp == 0;
  m.recall_undefined = tp + fn == 0;
  if (!m.precision_undefined) m.precision = tp / (tp + fp);
  if (!m.recall_undefined) m.recall = tp / (tp + fn);
  m.f1_undefined = m.precision + m.recall == 0;
  if (!m.f1_undefined) m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

struct MetricReport {
  std::optional<double> minimality;
  std::optional<double> equivalence;
  std::optional<double> length_ratio;
  std::optional<double> accuracy;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> fail_rate;
  std::vector<std::pair<std::string, std::size_t>> histogram;
};

inline MetricReport make_min_report(const std::vector<RatioItem>& items) {
  std::vector<MinOutcome> outcomes;
  for (const auto& i : items) outcomes.push_back(i.outcome);
  MetricReport r;
  r.minimality = minimality_metric(outcomes);
  r.equivalence = equivalence_metric(outcomes);
  r.length_ratio = length_ratio_metric(items);
  for (auto o : kMinOutcomes) {
    r.histogram.emplace_back(to_string(o), std::count(outcomes.begin(), outcomes.end(), o));
  }
  return r;
}

inline MetricReport make_eq_report(const std::vector<EqOutcome>& outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyOutcomes, "no outcomes");
  const auto m = confusion_metrics(outcomes);
  MetricReport r;
  r.accuracy = m.accuracy;
  r.precision = m.precision;
  r.recall = m.recall;
  r.f1 = m.f1;
  r.fail_rate = m.fail_rate;
  for (auto o : kEqOutcomes) {
    r.histogram.emplace_back(to_string(o), std::count(outcomes.begin(), outcomes.end(), o));
  }
  return r;
}

enum class ReportFormat { Table, Csv };

namespace detail {

inline std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
  return buf;
}

using MetricField = std::optional<double> MetricReport::*;

inline constexpr std::array<std::pair<std::string_view, MetricField>, 8> kMetricColumns{{
    {"Min.", &MetricReport::minimality},
    {"Equi.", &MetricReport::equivalence},
    {"Ratio", &MetricReport::length_ratio},
    {"Acc.", &MetricReport::accuracy},
    {"Prec.", &MetricReport::precision},
    {"Rec.", &MetricReport::recall},
    {"F1", &MetricReport::f1},
    {"Fail", &MetricReport::fail_rate},
}};

}  // namespace detail

/// Metrics as percentages with two decimals, followed by the outcome
/// histogram. Metrics that do not apply to the task are left out of the
/// table and left empty in the CSV.
inline std::string render_report(const MetricReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    std::string header, row;
    bool first = true;
    for (const auto& [name, field] : detail::kMetricColumns) {
      const auto& value = report.*field;
      if (!first) {
        header += ',';
        row += ',';
      }
      first = false;
      header += name;
      if (value) row += detail::percent(*value);
    }
    for (const auto& [name, count] : report.histogram) {
      header += "," + name;
      row += "," + std::to_string(count);
    }
    out << header << "\n" << row << "\n";
    return out.str();
  }
  std::size_t total = 0;
  char line[96];
  out << "Metric                 Value\n";
  for (const auto& [name, field] : detail::kMetricColumns) {
    const auto& value = report.*field;
    if (!value) continue;
    std::snprintf(line, sizeof line, "%-22s %6s\n", std::string(name).c_str(),
                  detail::percent(*value).c_str());
    out << line;
  }
  out << "\nOutcome                Count\n";
  for (const auto& [name, count] : report.histogram) {
    std::snprintf(line, sizeof line, "%-22s %6zu\n", name.c_str(), count);
    out << line;
    total += count;
  }
  std::snprintf(line, sizeof line, "%-22s %6zu\n", "Total", total);
  out << line;
  return out.str();
}

/// Reads the CSV written by render_report. Metric values come back at the
/// printed precision.
inline MetricReport read_report_csv(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.size() < 2) throw Error(ErrorCode::MalformedRecord, "report CSV needs two lines");
  auto split = [](std::string_view s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const auto comma = s.find(',', start);
      cells.emplace_back(s.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  const auto header = split(lines[0]);
  const auto row = split(lines[1]);
  if (header.size() != row.size()) {
    throw Error(ErrorCode::MalformedRecord, "report CSV header and row differ in width");
  }
  MetricReport r;
  const auto& columns = detail::kMetricColumns;
  for (std::size_t i = 0; i < header.size(); ++i) {
    auto it = std::find_if(columns.begin(), columns.end(),
                           [&](const auto& c) { return c.first == header[i]; });
    try {
      if (it != columns.end()) {
        if (!row[i].empty()) r.*(it->second) = std::stod(row[i]) / 100.0;
      } else {
        r.histogram.emplace_back(header[i], std::stoul(row[i]));
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::MalformedRecord, "bad report cell '" + row[i] + "'");
    }
  }
  return r;
}

inline void to_json(nlohmann::json& j, const ModelResponse& r) {
  j = {{"id", r.id},
       {"task", r.task == Task::Min ? "min" : "eq"},
       {"raw_text", r.raw_text},
       {"truncated", r.truncated_by_limit}};
}

inline void from_json(const nlohmann::json& j, ModelResponse& r) {
  j.at("id").get_to(r.id);
  const auto task = j.at("task").get<std::string>();
  if (task != "min" && task != "eq") {
    throw nlohmann::json::other_error::create(501, "task must be \"min\" or \"eq\"", &j);
  }
  r.task = task == "min" ? Task::Min : Task::Eq;
  j.at("raw_text").get_to(r.raw_text);
  r.truncated_by_limit = j.value("truncated", false);
}

namespace detail {

inline std::unordered_map<std::string, const ModelResponse*> index_responses(
    const std::vector<ModelResponse>& responses, const std::vector<std::string>& ids) {
  std::unordered_map<std::string, const ModelResponse*> by_id;
  for (const auto& r : responses) by_id.emplace(r.id, &r);
  std::string missing;
  std::size_t count = 0;
  for (const auto& id : ids) {
    if (!by_id.count(id)) {
      if (count++ < 20) missing += (missing.empty() ? "" : ", ") + id;
    }
  }
  if (count > 0) {
    throw Error(ErrorCode::MissingResponse, std::to_string(count) + " id(s) without a response: " +
                                                missing + (count > 20 ? ", ..." : ""));
  }
  return by_id;
}

}  // namespace detail

/// Scores minimization responses against benchmark entries (matched by id).
inline MetricReport score_min(const std::vector<BenchmarkEntry>& entries,
                              const std::vector<ModelResponse>& responses,
                              const Alphabet& alphabet = Alphabet::standard()) {
  std::vector<std::string> ids;
  for (const auto& e : entries) ids.push_back(e.id);
  const auto by_id = detail::index_responses(responses, ids);
  std::vector<RatioItem> items;
  for (const auto& e : entries) {
    const auto j = classify_min(parse(e.query, alphabet), *by_id.at(e.id), e.minimal_length,
                                alphabet);
    items.push_back({e.query_length, j.outcome, j.answer_length});
  }
  return make_min_report(items);
}

/// Scores equivalence responses against labeled pairs (matched by id).
inline MetricReport score_eq(const std::vector<EqPair>& pairs,
                             const std::vector<ModelResponse>& responses) {
  std::vector<std::string> ids;
  for (const auto& p : pairs) ids.push_back(p.id);
  const auto by_id = detail::index_responses(responses, ids);
  std::vector<EqOutcome> outcomes;
  for (const auto& p : pairs) outcomes.push_back(classify_eq(p.label, *by_id.at(p.id)));
  return make_eq_report(outcomes);
}

}  // namespace regexpspace
