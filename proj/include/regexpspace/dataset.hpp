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

// Labeled splits, the deep unlabeled test set, the filtered benchmark with
// balanced equivalence pairs, and their line-delimited JSON records.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "regexpspace/automata.hpp"
#include "regexpspace/enumerate.hpp"
#include "regexpspace/error.hpp"
#include "regexpspace/random.hpp"
#include "regexpspace/syntax.hpp"

namespace regexpspace {

struct LabeledExample {
  std::string query;  // fully parenthesized
  std::size_t query_length = 0;
  std::string minimal;
  std::size_t minimal_length = 0;
  std::optional<std::string> equivalent_alt;
  std::size_t depth = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct UrmtExample {
  std::string query;
  std::size_t query_length = 0;
  std::size_t depth = 0;

  friend bool operator==(const UrmtExample&, const UrmtExample&) = default;
};

struct BenchmarkEntry {
  std::string id;
  std::string query;
  std::size_t query_length = 0;
  std::string minimal;
  std::size_t minimal_length = 0;
  std::size_t class_size = 0;
  std::vector<std::string> positive_examples;
  std::vector<std::string> negative_examples;
  std::string equivalent_pair;
  std::string nonequivalent_pair;

  friend bool operator==(const BenchmarkEntry&, const BenchmarkEntry&) = default;
};

struct EqPair {
  std::string id;
  std::string regex1;
  std::string regex2;
  bool label = false;

  friend bool operator==(const EqPair&, const EqPair&) = default;
};

struct SplitSpec {
  std::size_t train = 20;
  std::size_t valid = 2;
  std::size_t test = 1;
  std::uint64_t seed = 0;
};

struct LrdSplits {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> valid;
  std::vector<LabeledExample> test;
};

/// Split sizes for n items: floor shares for train and validation, the
/// remainder to test.
inline std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitSpec& spec) {
  const std::size_t total = spec.train + spec.valid + spec.test;
  if (spec.train == 0 || spec.valid == 0 || spec.test == 0) {
    throw Error(ErrorCode::InvalidConfig, "split ratios must be positive");
  }
  const std::size_t train = n * spec.train / total;
  const std::size_t valid = n * spec.valid / total;
  return {train, valid, n - train - valid};
}

/// Labels one query against the oracle; `rng` picks the optional
/// non-minimal equivalent.
inline LabeledExample label_query(const Regex& query, const MinimalSet& oracle, Rng& rng) {
  LabeledExample ex;
  ex.query = render(query, RenderStyle::FullyParenthesized);
  ex.query_length = tree_length(query);
  ex.depth = depth(query);
  MinimalLength found{0, query, 0};
  try {
    found = minimal_length_of(query, oracle);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotCovered) throw;
    throw Error(ErrorCode::OracleGap, e.what());
  }
  ex.minimal = render(found.representative);
  ex.minimal_length = found.length;
  std::vector<Regex> alternatives;
  for (const auto& m : class_members_of(query, oracle)) {
    if (render(m) != ex.minimal && render(m, RenderStyle::FullyParenthesized) != ex.query) {
      alternatives.push_back(m);
    }
  }
  if (!alternatives.empty()) {
    ex.equivalent_alt =
        render(alternatives[rng.below(alternatives.size())], RenderStyle::FullyParenthesized);
  }
  return ex;
}

/// Labels every tree of the depth levels and splits them under the seed.
/// Throws OracleGap when a query's language is not in the oracle.
inline LrdSplits build_lrd(const DepthLevels& levels, const MinimalSet& oracle,
                           const SplitSpec& split) {
  std::vector<Regex> queries;
  for (const auto& level : levels.levels) queries.insert(queries.end(), level.begin(), level.end());
  Rng rng(split.seed);
  std::vector<LabeledExample> labeled;
  labeled.reserve(queries.size());
  for (const auto& q : queries) labeled.push_back(label_query(q, oracle, rng));

  std::vector<std::size_t> order(labeled.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  const auto sizes = split_sizes(order.size(), split);
  std::array<std::vector<std::size_t>, 3> parts;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t part = i < sizes[0] ? 0 : (i < sizes[0] + sizes[1] ? 1 : 2);
    parts[part].push_back(order[i]);
  }
  LrdSplits out;
  std::array<std::vector<LabeledExample>*, 3> targets{&out.train, &out.valid, &out.test};
  for (std::size_t p = 0; p < 3; ++p) {
    std::sort(parts[p].begin(), parts[p].end());
    for (auto i : parts[p]) targets[p]->push_back(labeled[i]);
  }
  return out;
}

/// Equal numbers of regexes for every depth present in the pool; when the
/// target is not divisible the shallower depths get one extra.
inline std::vector<UrmtExample> build_urmt(const std::vector<Regex>& pool, std::size_t target_size,
                                           std::uint64_t seed) {
  std::map<std::size_t, std::vector<Regex>> by_depth;
  for (const auto& r : pool) by_depth[depth(r)].push_back(r);
  if (by_depth.empty()) throw Error(ErrorCode::InsufficientPool, "empty pool");
  Rng rng(seed);
  std::vector<UrmtExample> out;
  std::size_t slot = 0;
  for (auto& [d, regexes] : by_depth) {
    const std::size_t want =
        target_size / by_depth.size() + (slot++ < target_size % by_depth.size() ? 1 : 0);
    if (regexes.size() < want) {
      throw Error(ErrorCode::InsufficientPool, "depth " + std::to_string(d) + " has " +
                                                   std::to_string(regexes.size()) +
                                                   " regexes, need " + std::to_string(want));
    }
    rng.shuffle(regexes);
    for (std::size_t i = 0; i < want; ++i) {
      out.push_back({render(regexes[i], RenderStyle::FullyParenthesized),
                     tree_length(regexes[i]), d});
    }
  }
  return out;
}

struct StringExamples {
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
};

/// `count_each` accepted and rejected words of length <= max_word_length
/// over the alphabet, chosen at random and listed in length-lexicographic
/// order. Throws InsufficientWitnesses when either side is too small.
inline StringExamples generate_string_examples(const Regex& regex, const Alphabet& alphabet,
                                               std::size_t count_each,
                                               std::size_t max_word_length, std::uint64_t seed) {
  const Dfa dfa = minimal_dfa(regex, alphabet.symbols());
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  std::vector<std::pair<std::string, std::size_t>> frontier{{"", dfa.start}};
  for (std::size_t len = 0; len <= max_word_length; ++len) {
    std::vector<std::pair<std::string, std::size_t>> next;
    for (const auto& [word, state] : frontier) {
      (dfa.finals[state] ? accepted : rejected).push_back(word);
      if (len == max_word_length) continue;
      for (std::size_t a = 0; a < alphabet.size(); ++a) {
        next.emplace_back(word + alphabet[a], dfa.next(state, a));
      }
    }
    frontier = std::move(next);
  }
  if (accepted.size() < count_each || rejected.size() < count_each) {
    throw Error(ErrorCode::InsufficientWitnesses,
                "'" + render(regex) + "' has " + std::to_string(accepted.size()) +
                    " accepted and " + std::to_string(rejected.size()) +
                    " rejected words, need " + std::to_string(count_each) + " each");
  }
  Rng rng(seed);
  StringExamples out;
  for (auto i : detail::sample_indices(accepted.size(), count_each, rng)) {
    out.positives.push_back(accepted[i]);
  }
  for (auto i : detail::sample_indices(rejected.size(), count_each, rng)) {
    out.negatives.push_back(rejected[i]);
  }
  return out;
}

struct StringBudget {
  std::size_t count_each = 20;
  std::size_t max_word_length = 8;
  std::size_t min_class_size = 10;
};

/// Survivors after each benchmark criterion, in application order.
struct FilterStats {
  std::size_t input = 0;
  std::size_t not_minimal = 0;
  std::size_t class_size = 0;
  std::size_t witnesses = 0;
  std::size_t isomorphism = 0;
};

inline std::string entry_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "min-%05zu", i);
  return buf;
}

inline std::string pair_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "eq-%05zu", i);
  return buf;
}

/// Applies, in order: the query is not already minimal; its class has at
/// least min_class_size trees; enough accepted and rejected words exist;
/// one query per alphabet-renaming orbit, chosen at random.
inline std::vector<BenchmarkEntry> filter_benchmark(const std::vector<LabeledExample>& examples,
                                                    const MinimalSet& oracle,
                                                    const Alphabet& alphabet,
                                                    const StringBudget& budget, std::uint64_t seed,
                                                    FilterStats* stats = nullptr) {
  FilterStats counts;
  counts.input = examples.size();
  Rng rng(seed);
  std::vector<BenchmarkEntry> candidates;
  std::vector<std::string> keys;
  for (const auto& ex : examples) {
    if (ex.query_length <= ex.minimal_length) continue;
    ++counts.not_minimal;
    const Regex query = parse(ex.query, alphabet);
    const auto members = class_members_of(query, oracle);
    if (members.size() < budget.min_class_size) continue;
    ++counts.class_size;
    StringExamples words;
    try {
      words = generate_string_examples(query, alphabet, budget.count_each, budget.max_word_length,
                                       rng.next());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientWitnesses) throw;
      continue;
    }
    ++counts.witnesses;
    BenchmarkEntry entry;
    entry.query = ex.query;
    entry.query_length = ex.query_length;
    entry.minimal = ex.minimal;
    entry.minimal_length = ex.minimal_length;
    entry.class_size = members.size();
    entry.positive_examples = std::move(words.positives);
    entry.negative_examples = std::move(words.negatives);
    candidates.push_back(std::move(entry));
    keys.push_back(canonical_permutation_key(query, alphabet));
  }

  std::map<std::string, std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < candidates.size(); ++i) orbits[keys[i]].push_back(i);
  std::vector<std::size_t> kept;
  for (const auto& [key, idx] : orbits) kept.push_back(idx[rng.below(idx.size())]);
  std::sort(kept.begin(), kept.end());

  std::vector<BenchmarkEntry> out;
  for (auto i : kept) {
    out.push_back(std::move(candidates[i]));
    out.back().id = entry_id(out.size() - 1);
  }
  counts.isomorphism = out.size();
  if (stats) *stats = counts;
  return out;
}

namespace detail {

/// Entries grouped by symbol set, each group split into language classes.
inline std::map<std::string, std::vector<std::vector<std::size_t>>> language_groups(
    const std::vector<Regex>& queries) {
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> keyed;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto key = symbol_key(queries[i]);
    keyed[key][canonical_key(minimal_dfa(queries[i], key))].push_back(i);
  }
  std::map<std::string, std::vector<std::vector<std::size_t>>> out;
  for (auto& [key, classes] : keyed) {
    for (auto& [lang, idx] : classes) out[key].push_back(std::move(idx));
  }
  return out;
}

}  // namespace detail

/// Indices (ascending) of entries that cannot all receive a non-equivalent
/// partner from their symbol-set group: lone entries, and the surplus of any
/// language class holding more than half of its group. Surplus is taken
/// from the back of the class.
inline std::vector<std::size_t> unpairable_entries(const std::vector<BenchmarkEntry>& entries,
                                                   const Alphabet& alphabet) {
  std::vector<Regex> queries;
  for (const auto& e : entries) queries.push_back(parse(e.query, alphabet));
  std::vector<std::size_t> out;
  for (const auto& [key, classes] : detail::language_groups(queries)) {
    std::size_t g = 0, largest = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      g += classes[c].size();
      if (classes[c].size() > classes[largest].size()) largest = c;
    }
    const auto& big = classes[largest];
    if (classes.size() == 1) {
      out.insert(out.end(), big.begin(), big.end());
      continue;
    }
    const std::size_t m = big.size();
    const std::size_t drop = 2 * m > g ? 2 * m - g : 0;
    out.insert(out.end(), big.end() - static_cast<std::ptrdiff_t>(drop), big.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Gives every entry one equivalent partner from its class and one
/// non-equivalent partner from the entries sharing its symbol set, and
/// returns the pairs (positive then negative per entry). Throws
/// PairingFailure when some entry has no usable negative partner.
inline std::vector<EqPair> pair_for_equivalence(std::vector<BenchmarkEntry>& entries,
                                                const MinimalSet& oracle, const Alphabet& alphabet,
                                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Regex> queries;
  for (const auto& e : entries) queries.push_back(parse(e.query, alphabet));

  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::vector<Regex> options;
    for (const auto& m : class_members_of(queries[i], oracle)) {
      if (!(m == queries[i]) &&
          render(m, RenderStyle::FullyParenthesized) != entries[i].query) {
        options.push_back(m);
      }
    }
    if (options.empty()) {
      throw Error(ErrorCode::PairingFailure,
                  "no equivalent partner for '" + entries[i].query + "'");
    }
    entries[i].equivalent_pair =
        render(options[rng.below(options.size())], RenderStyle::FullyParenthesized);
  }

  for (auto& [key, classes] : detail::language_groups(queries)) {
    // Shuffle within and across classes, then lay classes out largest first
    // and pair each slot with the one a largest-class-width further along.
    for (auto& cls : classes) rng.shuffle(cls);
    rng.shuffle(classes);
    std::stable_sort(classes.begin(), classes.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });
    std::vector<std::size_t> order;
    for (const auto& cls : classes) order.insert(order.end(), cls.begin(), cls.end());
    const std::size_t g = order.size();
    const std::size_t m = classes.front().size();
    if (2 * m > g) {
      throw Error(ErrorCode::PairingFailure,
                  "no non-equivalent partner for '" + entries[order.front()].query + "': " +
                      std::to_string(m) + " of the " + std::to_string(g) +
                      " entries over its symbols share one language");
    }
    for (std::size_t i = 0; i < g; ++i) {
      entries[order[i]].nonequivalent_pair = entries[order[(i + m) % g]].query;
    }
  }

  std::vector<EqPair> pairs;
  for (const auto& e : entries) {
    pairs.push_back({pair_id(pairs.size()), e.query, e.equivalent_pair, true});
    pairs.push_back({pair_id(pairs.size()), e.query, e.nonequivalent_pair, false});
  }
  return pairs;
}

/// Criterion violations found by re-checking finished entries from scratch.
struct BenchmarkAudit {
  std::size_t already_minimal = 0;
  std::size_t small_class = 0;
  std::size_t bad_examples = 0;
  std::size_t isomorphic_duplicates = 0;
  std::size_t bad_pairs = 0;

  bool ok() const {
    return already_minimal + small_class + bad_examples + isomorphic_duplicates + bad_pairs == 0;
  }
};

inline BenchmarkAudit audit_benchmark(const std::vector<BenchmarkEntry>& entries,
                                      const Alphabet& alphabet, const StringBudget& budget) {
  BenchmarkAudit audit;
  std::unordered_set<std::string> keys;
  for (const auto& e : entries) {
    const Regex q = parse(e.query, alphabet);
    const Regex m = parse(e.minimal, alphabet);
    if (tree_length(q) <= tree_length(m) || !equivalent(q, m)) ++audit.already_minimal;
    if (e.class_size < budget.min_class_size) ++audit.small_class;
    bool examples_ok = e.positive_examples.size() >= budget.count_each &&
                       e.negative_examples.size() >= budget.count_each;
    for (const auto& w : e.positive_examples) examples_ok = examples_ok && accepts(q, w, alphabet);
    for (const auto& w : e.negative_examples) examples_ok = examples_ok && !accepts(q, w, alphabet);
    if (!examples_ok) ++audit.bad_examples;
    if (!keys.insert(canonical_permutation_key(q, alphabet)).second) ++audit.isomorphic_duplicates;
    if (!e.equivalent_pair.empty() || !e.nonequivalent_pair.empty()) {
      const Regex pos = parse(e.equivalent_pair, alphabet);
      const Regex neg = parse(e.nonequivalent_pair, alphabet);
      if (!equivalent(q, pos) || equivalent(q, neg) || e.nonequivalent_pair == e.query ||
          e.equivalent_pair == e.query) {
        ++audit.bad_pairs;
      }
    }
  }
  return audit;
}

// JSON mapping for the record types.

inline void to_json(nlohmann::json& j, const LabeledExample& e) {
  j = {{"query", e.query},
       {"query_length", e.query_length},
       {"minimal", e.minimal},
       {"minimal_length", e.minimal_length},
       {"equivalent", e.equivalent_alt ? nlohmann::json(*e.equivalent_alt) : nlohmann::json()},
       {"depth", e.depth}};
}

inline void from_json(const nlohmann::json& j, LabeledExample& e) {
  j.at("query").get_to(e.query);
  j.at("query_length").get_to(e.query_length);
  j.at("minimal").get_to(e.minimal);
  j.at("minimal_length").get_to(e.minimal_length);
  const auto& alt = j.at("equivalent");
  e.equivalent_alt = alt.is_null() ? std::nullopt : std::optional(alt.get<std::string>());
  j.at("depth").get_to(e.depth);
}

inline void to_json(nlohmann::json& j, const UrmtExample& e) {
  j = {{"query", e.query}, {"query_length", e.query_length}, {"depth", e.depth}};
}

inline void from_json(const nlohmann::json& j, UrmtExample& e) {
  j.at("query").get_to(e.query);
  j.at("query_length").get_to(e.query_length);
  j.at("depth").get_to(e.depth);
}

inline void to_json(nlohmann::json& j, const BenchmarkEntry& e) {
  j = {{"id", e.id},
       {"query", e.query},
       {"query_length", e.query_length},
       {"minimal", e.minimal},
       {"minimal_length", e.minimal_length},
       {"class_size", e.class_size},
       {"positive_examples", e.positive_examples},
       {"negative_examples", e.negative_examples},
       {"equivalent_pair", e.equivalent_pair},
       {"nonequivalent_pair", e.nonequivalent_pair}};
}

inline void from_json(const nlohmann::json& j, BenchmarkEntry& e) {
  j.at("id").get_to(e.id);
  j.at("query").get_to(e.query);
  j.at("query_length").get_to(e.query_length);
  j.at("minimal").get_to(e.minimal);
  j.at("minimal_length").get_to(e.minimal_length);
  j.at("class_size").get_to(e.class_size);
  j.at("positive_examples").get_to(e.positive_examples);
  j.at("negative_examples").get_to(e.negative_examples);
  j.at("equivalent_pair").get_to(e.equivalent_pair);
  j.at("nonequivalent_pair").get_to(e.nonequivalent_pair);
}

inline void to_json(nlohmann::json& j, const EqPair& p) {
  j = {{"id", p.id}, {"regex1", p.regex1}, {"regex2", p.regex2}, {"label", p.label}};
}

inline void from_json(const nlohmann::json& j, EqPair& p) {
  j.at("id").get_to(p.id);
  j.at("regex1").get_to(p.regex1);
  j.at("regex2").get_to(p.regex2);
  j.at("label").get_to(p.label);
}

/// Writes `text` to `path` through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

template <class Record>
void write_records(const std::filesystem::path& path, const std::vector<Record>& records) {
  std::string text;
  for (const auto& r : records) {
    text += nlohmann::json(r).dump();
    text += '\n';
  }
  write_file_atomic(path, text);
}

template <class Record>
std::vector<Record> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<Record>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace regexpspace
