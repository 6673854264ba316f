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

// Command-line pipeline: enumerate -> label -> bench -> prompts -> score,
// plus urmt for the deep unlabeled set. Every stage reads and writes
// line-delimited JSON under --out-dir and leaves a manifest of its settings.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regexpspace/regexpspace.hpp"

namespace regexpspace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitMissingInput = 4;

struct RunConfig {
  std::string alphabet = "ab";
  std::size_t max_depth = 2;
  std::size_t max_length = 7;
  std::string split = "20:2:1";
  std::uint64_t seed_split = 1;
  std::uint64_t seed_filter = 2;
  std::uint64_t seed_pair = 3;
  std::uint64_t seed_sample = 4;
  std::uint64_t seed_exemplars = 5;
  std::uint64_t budget_nodes = kDefaultNodeBudget;
  std::size_t group_threshold = 32;
  std::size_t probe_max_len = 6;
  std::size_t probe_cap = 64;
  std::size_t examples_each = 20;
  std::size_t max_word_length = 8;
  std::size_t min_class_size = 10;
  std::size_t urmt_min_depth = 4;
  std::size_t urmt_max_depth = 6;
  std::size_t urmt_iterations = 10;
  std::size_t urmt_sample_size = 1000;
  std::size_t urmt_target = 300;
  std::string task = "min";
  int shots = 0;
  std::string format = "table";
  std::string input;
  std::string responses;
  std::string exemplars;
  std::string out_dir = "out";
};

namespace detail {

inline std::filesystem::path out_path(const RunConfig& c, const std::string& name) {
  return std::filesystem::path(c.out_dir) / name;
}

inline void require_file(const std::filesystem::path& p, ErrorCode code = ErrorCode::Io) {
  if (!std::filesystem::exists(p)) throw Error(code, "missing input file " + p.string());
}

inline PartitionOptions partition_options(const RunConfig& c) {
  return {c.group_threshold, c.probe_max_len, c.probe_cap};
}

inline SplitSpec split_spec(const RunConfig& c) {
  SplitSpec spec;
  spec.seed = c.seed_split;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(c.split);
  if (!(in >> spec.train >> sep1 >> spec.valid >> sep2 >> spec.test) || sep1 != ':' ||
      sep2 != ':' || spec.train == 0 || spec.valid == 0 || spec.test == 0) {
    throw Error(ErrorCode::InvalidConfig, "--split must look like 20:2:1, got '" + c.split + "'");
  }
  return spec;
}

inline StringBudget string_budget(const RunConfig& c) {
  return {c.examples_each, c.max_word_length, c.min_class_size};
}

inline void write_manifest(const RunConfig& c, const std::string& command,
                           const nlohmann::json& settings, const nlohmann::json& results) {
  nlohmann::json m = {{"command", command},
                      {"alphabet", c.alphabet},
                      {"out_dir", c.out_dir},
                      {"settings", settings},
                      {"results", results}};
  write_file_atomic(out_path(c, "manifest." + command + ".json"), m.dump(2) + "\n");
}

struct LevelRecord {
  std::size_t level;
  std::string regex;
};

inline void write_levels(const std::filesystem::path& path, const char* level_key,
                         const std::vector<std::vector<Regex>>& levels, std::size_t first) {
  std::string text;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& r : levels[i]) {
      text += nlohmann::json{{level_key, i + first},
                             {"regex", render(r, RenderStyle::FullyParenthesized)}}
                  .dump();
      text += '\n';
    }
  }
  write_file_atomic(path, text);
}

inline std::vector<std::vector<Regex>> read_levels(const std::filesystem::path& path,
                                                   const char* level_key, std::size_t first,
                                                   const Alphabet& alphabet) {
  require_file(path);
  std::ifstream in(path, std::ios::binary);
  std::vector<std::vector<Regex>> levels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto level = j.at(level_key).get<std::size_t>();
      if (level < first) throw Error(ErrorCode::MalformedRecord, "level below " + std::to_string(first));
      if (levels.size() <= level - first) levels.resize(level - first + 1);
      levels[level - first].push_back(parse(j.at("regex").get<std::string>(), alphabet));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return levels;
}

inline MinimalSet load_oracle(const RunConfig& c, const Alphabet& alphabet) {
  LengthLevels levels{alphabet,
                      read_levels(out_path(c, "length_levels.jsonl"), "length", 1, alphabet),
                      std::make_shared<LanguageIndex>(alphabet)};
  return build_minimal_set(levels, partition_options(c));
}

inline int cmd_enumerate(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  const auto depth = build_depth_levels(alphabet, c.max_depth, c.budget_nodes);
  const auto length = build_length_levels(alphabet, c.max_length, nullptr, c.budget_nodes);
  write_levels(out_path(c, "depth_levels.jsonl"), "depth", depth.levels, 0);
  write_levels(out_path(c, "length_levels.jsonl"), "length", length.levels, 1);

  nlohmann::json depth_counts = nlohmann::json::array();
  out << "depth-indexed levels (|D_i|)\n";
  for (std::size_t i = 0; i < depth.levels.size(); ++i) {
    out << "  depth " << i << ": " << depth.levels[i].size() << "\n";
    depth_counts.push_back(depth.levels[i].size());
  }
  nlohmann::json length_counts = nlohmann::json::array();
  std::size_t cumulative = 0;
  out << "length-indexed levels (|A_i|, cumulative)\n";
  for (std::size_t i = 0; i < length.levels.size(); ++i) {
    cumulative += length.levels[i].size();
    out << "  length " << i + 1 << ": " << length.levels[i].size() << " (" << cumulative << ")\n";
    length_counts.push_back(length.levels[i].size());
  }
  write_manifest(c, "enumerate",
                 {{"max_depth", c.max_depth},
                  {"max_length", c.max_length},
                  {"budget_nodes", c.budget_nodes}},
                 {{"depth_level_sizes", depth_counts}, {"length_level_sizes", length_counts}});
  return kExitOk;
}

inline int cmd_label(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  const auto oracle = load_oracle(c, alphabet);
  const DepthLevels depth{alphabet,
                          read_levels(out_path(c, "depth_levels.jsonl"), "depth", 0, alphabet)};
  const auto splits = build_lrd(depth, oracle, split_spec(c));

  std::size_t audit_failures = 0;
  for (const auto* part : {&splits.train, &splits.valid, &splits.test}) {
    for (const auto& ex : *part) {
      const Regex q = parse(ex.query, alphabet);
      const Regex m = parse(ex.minimal, alphabet);
      if (!equivalent(q, m) || tree_length(m) != ex.minimal_length ||
          ex.minimal_length > ex.query_length) {
        ++audit_failures;
      }
    }
  }
  write_records(out_path(c, "lrd.train.jsonl"), splits.train);
  write_records(out_path(c, "lrd.valid.jsonl"), splits.valid);
  write_records(out_path(c, "lrd.test.jsonl"), splits.test);

  nlohmann::json exemplar_note = "written";
  try {
    write_records(out_path(c, "exemplars.min.jsonl"),
                  default_min_exemplars(splits.train, c.seed_exemplars));
    write_records(out_path(c, "exemplars.eq.jsonl"),
                  default_eq_exemplars(splits.train, alphabet, c.seed_exemplars));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingExemplars) throw;
    exemplar_note = e.what();
  }

  out << "oracle classes: " << oracle.partition.classes.size() << "\n"
      << "train/valid/test: " << splits.train.size() << "/" << splits.valid.size() << "/"
      << splits.test.size() << "\n"
      << "equivalence audit failures: " << audit_failures << "\n";
  write_manifest(c, "label",
                 {{"split", c.split},
                  {"seed_split", c.seed_split},
                  {"seed_exemplars", c.seed_exemplars},
                  {"group_threshold", c.group_threshold},
                  {"probe_max_len", c.probe_max_len},
                  {"probe_cap", c.probe_cap}},
                 {{"oracle_max_length", oracle.max_length},
                  {"oracle_classes", oracle.partition.classes.size()},
                  {"train", splits.train.size()},
                  {"valid", splits.valid.size()},
                  {"test", splits.test.size()},
                  {"audit_failures", audit_failures},
                  {"exemplars", exemplar_note}});
  return audit_failures == 0 ? kExitOk : kExitValidation;
}

inline int cmd_bench(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  const auto test_path = out_path(c, "lrd.test.jsonl");
  require_file(test_path);
  const auto test = read_records<LabeledExample>(test_path);
  const auto oracle = load_oracle(c, alphabet);
  const auto budget = string_budget(c);

  FilterStats stats;
  auto filtered = filter_benchmark(test, oracle, alphabet, budget, c.seed_filter, &stats);
  const auto unpairable = unpairable_entries(filtered, alphabet);
  std::vector<BenchmarkEntry> entries;
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    if (!std::binary_search(unpairable.begin(), unpairable.end(), i)) {
      entries.push_back(std::move(filtered[i]));
      entries.back().id = entry_id(entries.size() - 1);
    }
  }
  const auto pairs = pair_for_equivalence(entries, oracle, alphabet, c.seed_pair);
  const auto audit = audit_benchmark(entries, alphabet, budget);
  const auto positives = std::count_if(pairs.begin(), pairs.end(), [](const EqPair& p) { return p.label; });
  const bool balanced = 2 * static_cast<std::size_t>(positives) == pairs.size();

  write_records(out_path(c, "benchmark.jsonl"), entries);
  write_records(out_path(c, "pairs.jsonl"), pairs);
  const nlohmann::json report = {
      {"input", stats.input},
      {"after_not_minimal", stats.not_minimal},
      {"after_class_size", stats.class_size},
      {"after_witnesses", stats.witnesses},
      {"after_isomorphism", stats.isomorphism},
      {"dropped_unpairable", unpairable.size()},
      {"entries", entries.size()},
      {"pairs", pairs.size()},
      {"positive_pairs", positives},
      {"violations",
       {{"already_minimal", audit.already_minimal},
        {"small_class", audit.small_class},
        {"bad_examples", audit.bad_examples},
        {"isomorphic_duplicates", audit.isomorphic_duplicates},
        {"bad_pairs", audit.bad_pairs}}}};
  write_file_atomic(out_path(c, "bench_audit.json"), report.dump(2) + "\n");
  out << "filter survivors: " << stats.input << " -> " << stats.not_minimal << " -> "
      << stats.class_size << " -> " << stats.witnesses << " -> " << stats.isomorphism << "\n"
      << "unpairable dropped: " << unpairable.size() << "\n"
      << "benchmark entries: " << entries.size() << ", pairs: " << pairs.size() << " ("
      << positives << " equivalent)\n"
      << "audit: " << (audit.ok() && balanced ? "clean" : "VIOLATIONS") << "\n";
  write_manifest(c, "bench",
                 {{"seed_filter", c.seed_filter},
                  {"seed_pair", c.seed_pair},
                  {"examples_each", c.examples_each},
                  {"max_word_length", c.max_word_length},
                  {"min_class_size", c.min_class_size},
                  {"group_threshold", c.group_threshold},
                  {"probe_max_len", c.probe_max_len},
                  {"probe_cap", c.probe_cap}},
                 report);
  return audit.ok() && balanced ? kExitOk : kExitValidation;
}

inline std::filesystem::path task_input(const RunConfig& c) {
  if (!c.input.empty()) return c.input;
  return out_path(c, c.task == "min" ? "benchmark.jsonl" : "pairs.jsonl");
}

inline int cmd_prompts(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  const auto input = task_input(c);
  require_file(input);
  const std::filesystem::path exemplar_path =
      c.exemplars.empty() ? out_path(c, "exemplars." + c.task + ".jsonl")
                          : std::filesystem::path(c.exemplars);
  if (c.shots == 5 && !std::filesystem::exists(exemplar_path)) {
    throw Error(ErrorCode::MissingExemplars, "missing exemplar file " + exemplar_path.string());
  }
  std::string text;
  std::size_t count = 0;
  auto emit = [&](const std::string& id, const std::string& prompt) {
    text += nlohmann::json{{"id", id}, {"prompt", prompt}}.dump();
    text += '\n';
    ++count;
  };
  if (c.task == "min") {
    const auto exemplars =
        c.shots == 5 ? read_records<MinExemplar>(exemplar_path) : std::vector<MinExemplar>{};
    for (const auto& e : read_records<BenchmarkEntry>(input)) {
      emit(e.id, c.shots == 5 ? min_prompt_five_shot(e.query, exemplars, alphabet)
                              : min_prompt(e.query, alphabet));
    }
  } else {
    const auto exemplars =
        c.shots == 5 ? read_records<EqExemplar>(exemplar_path) : std::vector<EqExemplar>{};
    for (const auto& p : read_records<EqPair>(input)) {
      emit(p.id, c.shots == 5 ? eq_prompt_five_shot(p.regex1, p.regex2, exemplars, alphabet)
                              : eq_prompt(p.regex1, p.regex2, alphabet));
    }
  }
  const std::string name = "prompts." + c.task + "." + std::to_string(c.shots) + "shot.jsonl";
  write_file_atomic(out_path(c, name), text);
  out << "wrote " << count << " prompts to " << out_path(c, name).string() << "\n";
  write_manifest(c, "prompts",
                 {{"task", c.task},
                  {"shots", c.shots},
                  {"input", input.string()},
                  {"exemplars", c.shots == 5 ? exemplar_path.string() : ""}},
                 {{"prompts", count}, {"output", name}});
  return kExitOk;
}

inline int cmd_score(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  const auto input = task_input(c);
  require_file(input);
  if (c.responses.empty()) throw Error(ErrorCode::MissingResponse, "--responses is required");
  require_file(c.responses, ErrorCode::MissingResponse);
  const auto responses = read_records<ModelResponse>(c.responses);
  const MetricReport report = c.task == "min"
                                  ? score_min(read_records<BenchmarkEntry>(input), responses, alphabet)
                                  : score_eq(read_records<EqPair>(input), responses);
  const auto table = render_report(report, ReportFormat::Table);
  const auto csv = render_report(report, ReportFormat::Csv);
  write_file_atomic(out_path(c, "report." + c.task + ".txt"), table);
  write_file_atomic(out_path(c, "report." + c.task + ".csv"), csv);
  out << (c.format == "csv" ? csv : table);
  write_manifest(c, "score",
                 {{"task", c.task},
                  {"input", input.string()},
                  {"responses", c.responses},
                  {"format", c.format}},
                 {{"responses", responses.size()}, {"report_csv", csv}});
  return kExitOk;
}

inline int cmd_urmt(const RunConfig& c, std::ostream& out) {
  const Alphabet alphabet(c.alphabet);
  DeepSampleOptions options;
  options.iterations = c.urmt_iterations;
  options.sample_size = c.urmt_sample_size;
  options.min_depth = c.urmt_min_depth;
  options.max_depth = c.urmt_max_depth;
  options.per_depth = c.urmt_target;
  options.seed = c.seed_sample;
  const auto pool = sample_deep_levels(alphabet, options);
  const auto examples = build_urmt(pool, c.urmt_target, c.seed_sample);
  write_records(out_path(c, "urmt.test.jsonl"), examples);
  std::map<std::size_t, std::size_t> per_depth;
  for (const auto& e : examples) ++per_depth[e.depth];
  nlohmann::json counts;
  for (auto [d, n] : per_depth) {
    out << "  depth " << d << ": " << n << "\n";
    counts[std::to_string(d)] = n;
  }
  write_manifest(c, "urmt",
                 {{"min_depth", c.urmt_min_depth},
                  {"max_depth", c.urmt_max_depth},
                  {"iterations", c.urmt_iterations},
                  {"sample_size", c.urmt_sample_size},
                  {"target", c.urmt_target},
                  {"seed_sample", c.seed_sample}},
                 {{"per_depth", counts}, {"pool", pool.size()}});
  return kExitOk;
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return kExitBudget;
    case ErrorCode::Io:
    case ErrorCode::MissingExemplars:
    case ErrorCode::MissingResponse: return kExitMissingInput;
    case ErrorCode::InvalidAlphabet:
    case ErrorCode::InvalidConfig: return kExitUsage;
    default: return kExitValidation;
  }
}

}  // namespace detail

/// Runs one subcommand; returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Regex enumeration, minimal-length labeling, benchmark building and scoring"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&c](CLI::App* sub) {
    sub->add_option("--alphabet", c.alphabet, "Symbols, 2 to 9 distinct characters")
        ->capture_default_str();
    sub->add_option("--out-dir", c.out_dir, "Directory for inputs and outputs")
        ->capture_default_str();
  };
  auto partition = [&c](CLI::App* sub) {
    sub->add_option("--group-threshold", c.group_threshold, "Largest group compared pairwise")
        ->capture_default_str();
    sub->add_option("--probe-max-len", c.probe_max_len, "Longest probe string")
        ->capture_default_str();
    sub->add_option("--probe-cap", c.probe_cap, "Most probes along one split chain")
        ->capture_default_str();
  };

  auto* enumerate = app.add_subcommand("enumerate", "Build depth and length levels");
  common(enumerate);
  enumerate->add_option("--max-depth", c.max_depth)->capture_default_str();
  enumerate->add_option("--max-length", c.max_length)->capture_default_str();
  enumerate->add_option("--budget-nodes", c.budget_nodes)->capture_default_str();

  auto* label = app.add_subcommand("label", "Label depth levels with minimal forms and split");
  common(label);
  partition(label);
  label->add_option("--split", c.split, "train:valid:test ratio")->capture_default_str();
  label->add_option("--seed-split", c.seed_split)->capture_default_str();
  label->add_option("--seed-exemplars", c.seed_exemplars)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Filter the test split and build pairs");
  common(bench);
  partition(bench);
  bench->add_option("--seed-filter", c.seed_filter)->capture_default_str();
  bench->add_option("--seed-pair", c.seed_pair)->capture_default_str();
  bench->add_option("--examples-each", c.examples_each, "Accepted and rejected words required")
      ->capture_default_str();
  bench->add_option("--max-word-length", c.max_word_length)->capture_default_str();
  bench->add_option("--min-class-size", c.min_class_size)->capture_default_str();

  auto* prompts = app.add_subcommand("prompts", "Render prompts for benchmark items");
  common(prompts);
  prompts->add_option("--task", c.task)->check(CLI::IsMember({"min", "eq"}))->capture_default_str();
  prompts->add_option("--shots", c.shots)->check(CLI::IsMember({0, 5}))->capture_default_str();
  prompts->add_option("--input", c.input, "Benchmark or pairs file");
  prompts->add_option("--exemplars", c.exemplars, "Five exemplar records");

  auto* score = app.add_subcommand("score", "Score model responses");
  common(score);
  score->add_option("--task", c.task)->check(CLI::IsMember({"min", "eq"}))->capture_default_str();
  score->add_option("--input", c.input, "Benchmark or pairs file");
  score->add_option("--responses", c.responses, "Response records")->required();
  score->add_option("--format", c.format)
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();

  auto* urmt = app.add_subcommand("urmt", "Sample the deep unlabeled test set");
  common(urmt);
  urmt->add_option("--min-depth", c.urmt_min_depth)->capture_default_str();
  urmt->add_option("--max-depth", c.urmt_max_depth)->capture_default_str();
  urmt->add_option("--iterations", c.urmt_iterations)->capture_default_str();
  urmt->add_option("--sample-size", c.urmt_sample_size)->capture_default_str();
  urmt->add_option("--target", c.urmt_target)->capture_default_str();
  urmt->add_option("--seed-sample", c.seed_sample)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate) return detail::cmd_enumerate(c, out);
    if (*label) return detail::cmd_label(c, out);
    if (*bench) return detail::cmd_bench(c, out);
    if (*prompts) return detail::cmd_prompts(c, out);
    if (*score) return detail::cmd_score(c, out);
    if (*urmt) return detail::cmd_urmt(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissingInput;
  }
  return kExitUsage;
}

}  // namespace regexpspace::cli
