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

// Depth- and length-indexed regex universes, fingerprint partitioning into
// language classes, and the exhaustive minimal-length oracle.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "regexpspace/automata.hpp"
#include "regexpspace/error.hpp"
#include "regexpspace/random.hpp"
#include "regexpspace/syntax.hpp"

namespace regexpspace {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// D_0..D_n; levels[i] holds the trees of depth exactly i.
struct DepthLevels {
  Alphabet alphabet;
  std::vector<std::vector<Regex>> levels;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& level : levels) out.push_back(level.size());
    return out;
  }
};

/// Level sizes |D_0|..|D_max_depth| without building the trees. Values stay
/// exact while they fit in 64 bits.
inline std::vector<long double> depth_level_counts(std::size_t alphabet_size,
                                                   std::size_t max_depth) {
  using u128 = unsigned __int128;
  std::vector<long double> out;
  u128 prev = alphabet_size;
  u128 low = 0;
  out.push_back(static_cast<long double>(prev));
  for (std::size_t i = 1; i <= max_depth; ++i) {
    const u128 p = prev;
    const u128 next = 2 * p + 2 * (p * (p + 1) / 2 + low * p);
    low += p;
    prev = next;
    out.push_back(static_cast<long double>(next));
  }
  return out;
}

namespace detail {

[[noreturn]] inline void budget_exceeded(std::uint64_t budget,
                                         const std::vector<std::size_t>& partial) {
  std::string counts;
  for (auto c : partial) counts += (counts.empty() ? "" : ",") + std::to_string(c);
  throw Error(ErrorCode::BudgetExceeded, "node budget " + std::to_string(budget) +
                                             " exceeded; completed level sizes [" + counts +
                                             "]");
}

}  // namespace detail

/// Builds D_0..D_max_depth. A level contains x? and x* for x in D_{i-1}, and
/// x+y and xy for every x in D_{<i-1}, y in D_{i-1}; when both operands come
/// from D_{i-1} only pairs with x at or before y are taken.
inline DepthLevels build_depth_levels(const Alphabet& alphabet, std::size_t max_depth,
                                      std::uint64_t node_budget = kDefaultNodeBudget) {
  DepthLevels out{alphabet, {}};
  const auto predicted = depth_level_counts(alphabet.size(), max_depth);
  long double total = 0;
  std::vector<std::size_t> done;
  for (std::size_t i = 0; i <= max_depth; ++i) {
    total += predicted[i];
    if (total > static_cast<long double>(node_budget)) detail::budget_exceeded(node_budget, done);
    std::vector<Regex> level;
    if (i == 0) {
      for (char c : alphabet.symbols()) level.push_back(Regex::symbol(c));
    } else {
      const auto& prev = out.levels[i - 1];
      level.reserve(static_cast<std::size_t>(predicted[i]));
      for (const auto& x : prev) {
        level.push_back(Regex::option(x));
        level.push_back(Regex::star(x));
      }
      for (std::size_t d = 0; d + 1 < i; ++d) {
        for (const auto& x : out.levels[d]) {
          for (const auto& y : prev) {
            level.push_back(Regex::union_of(x, y));
            level.push_back(Regex::concat(x, y));
          }
        }
      }
      for (std::size_t a = 0; a < prev.size(); ++a) {
        for (std::size_t b = a; b < prev.size(); ++b) {
          level.push_back(Regex::union_of(prev[a], prev[b]));
          level.push_back(Regex::concat(prev[a], prev[b]));
        }
      }
    }
    done.push_back(level.size());
    out.levels.push_back(std::move(level));
  }
  return out;
}

/// A_1..A_n; levels[i - 1] holds the trees of tree length exactly i.
struct LengthLevels {
  Alphabet alphabet;
  std::vector<std::vector<Regex>> levels;
  std::shared_ptr<LanguageIndex> index;

  std::size_t max_length() const noexcept { return levels.size(); }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& level : levels) out.push_back(level.size());
    return out;
  }

  std::vector<Regex> all() const {
    std::vector<Regex> out;
    for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
    return out;
  }
};

/// Builds A_1..A_max_length: unary operators over A_{i-1}, and for
/// j = 1..(i-1)/2 the pairs x in A_j, y in A_{i-1-j}. Equivalent operands
/// only produce xy; others produce x+y, xy and yx. Duplicate trees within a
/// level are dropped.
inline LengthLevels build_length_levels(const Alphabet& alphabet, std::size_t max_length,
                                        std::shared_ptr<LanguageIndex> index = nullptr,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
  if (!index) index = std::make_shared<LanguageIndex>(alphabet);
  LengthLevels out{alphabet, {}, index};
  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= max_length; ++i) {
    std::vector<Regex> level;
    std::unordered_set<Regex, RegexHash> seen;
    auto emit = [&](Regex r) {
      if (seen.insert(r).second) {
        level.push_back(std::move(r));
        if (total + level.size() > node_budget) {
          detail::budget_exceeded(node_budget, out.sizes());
        }
      }
    };
    if (i == 1) {
      for (char c : alphabet.symbols()) emit(Regex::symbol(c));
    } else {
      for (const auto& x : out.levels[i - 2]) {
        emit(Regex::option(x));
        emit(Regex::star(x));
      }
      for (std::size_t j = 1; j <= (i - 1) / 2; ++j) {
        const auto& left = out.levels[j - 1];
        const auto& right = out.levels[i - 1 - j - 1];
        std::vector<std::size_t> right_ids;
        right_ids.reserve(right.size());
        for (const auto& y : right) right_ids.push_back(index->id_of(y));
        for (const auto& x : left) {
          const auto x_id = index->id_of(x);
          for (std::size_t k = 0; k < right.size(); ++k) {
            const auto& y = right[k];
            if (x_id == right_ids[k]) {
              emit(Regex::concat(x, y));
            } else {
              emit(Regex::union_of(x, y));
              emit(Regex::concat(x, y));
              emit(Regex::concat(y, x));
            }
          }
        }
      }
    }
    total += level.size();
    out.levels.push_back(std::move(level));
  }
  return out;
}

struct PartitionOptions {
  std::size_t group_threshold = 32;
  std::size_t probe_max_len = 6;
  std::size_t probe_cap = 64;
};

/// All strings over `symbols` of length <= max_len in length-lexicographic
/// order, starting with the empty string.
inline std::vector<std::string> probe_sequence(std::string_view symbols, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len && !symbols.empty(); ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : symbols) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

/// Group address in the split tree. `label` starts at 1 and gains one bit
/// per probe: 1 when the probe was accepted, 0 when it was rejected.
struct Fingerprint {
  std::string alphabet_key;
  std::uint64_t label = 1;

  std::vector<bool> acceptance_bits() const {
    std::vector<bool> bits;
    for (std::uint64_t l = label; l > 1; l >>= 1) bits.push_back(l & 1u);
    std::reverse(bits.begin(), bits.end());
    return bits;
  }

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct EquivClass {
  Regex representative;
  std::vector<Regex> members;
  Fingerprint fingerprint;
};

struct SplitNode {
  bool leaf = true;
  std::string probe;                // internal nodes
  std::vector<std::size_t> classes;  // leaves: indices into Partition::classes
};

struct Partition {
  std::vector<EquivClass> classes;
  std::map<std::pair<std::string, std::uint64_t>, SplitNode> nodes;
  PartitionOptions options;
};

namespace detail {

/// Shorter first, then the lexicographically least minimal rendering, then
/// the least fully parenthesized one.
inline bool preferred(const Regex& a, const Regex& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto ra = render(a);
  const auto rb = render(b);
  if (ra != rb) return ra < rb;
  return render(a, RenderStyle::FullyParenthesized) < render(b, RenderStyle::FullyParenthesized);
}

}  // namespace detail

/// Splits regexes by symbol set, then by acceptance of probe strings while a
/// group exceeds the threshold, and finally compares the members of each
/// small group pairwise. Classes are exactly the language classes of the
/// input.
inline Partition partition_by_fingerprint(const std::vector<Regex>& regexes, LanguageIndex& index,
                                          const PartitionOptions& options = {}) {
  Partition out;
  out.options = options;

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < regexes.size(); ++i) groups[symbol_key(regexes[i])].push_back(i);

  struct Pending {
    std::uint64_t label;
    std::size_t depth;
    std::vector<std::size_t> members;
  };

  for (auto& [key, members] : groups) {
    const auto probes = probe_sequence(key, options.probe_max_len);
    std::vector<Pending> stack;
    stack.push_back({1, 0, std::move(members)});
    while (!stack.empty()) {
      Pending group = std::move(stack.back());
      stack.pop_back();
      SplitNode& node = out.nodes[{key, group.label}];
      const bool can_split = group.members.size() > options.group_threshold &&
                             group.label <= probes.size() && group.depth < options.probe_cap &&
                             group.label < (std::uint64_t{1} << 62);
      if (can_split) {
        node.leaf = false;
        node.probe = probes[group.label - 1];
        Pending accepted{group.label << 1 | 1, group.depth + 1, {}};
        Pending rejected{group.label << 1, group.depth + 1, {}};
        for (auto m : group.members) {
          (index.accepts(regexes[m], node.probe) ? accepted : rejected).members.push_back(m);
        }
        if (!accepted.members.empty()) stack.push_back(std::move(accepted));
        if (!rejected.members.empty()) stack.push_back(std::move(rejected));
        continue;
      }
      std::vector<std::size_t> class_ids;
      for (auto m : group.members) {
        const Regex& r = regexes[m];
        const auto id = index.id_of(r);
        std::size_t c = 0;
        while (c < class_ids.size() && class_ids[c] != id) ++c;
        if (c == class_ids.size()) {
          class_ids.push_back(id);
          node.classes.push_back(out.classes.size());
          out.classes.push_back({r, {}, {key, group.label}});
        }
        EquivClass& cls = out.classes[node.classes[c]];
        cls.members.push_back(r);
        if (detail::preferred(r, cls.representative)) cls.representative = r;
      }
    }
  }
  return out;
}

/// Every language reachable with tree length <= max_length, each with its
/// shortest tree.
struct MinimalSet {
  Alphabet alphabet;
  std::size_t max_length;
  std::shared_ptr<LanguageIndex> index;
  Partition partition;

  std::vector<Regex> representatives() const {
    std::vector<Regex> out;
    out.reserve(partition.classes.size());
    for (const auto& c : partition.classes) out.push_back(c.representative);
    return out;
  }
};

inline MinimalSet build_minimal_set(const LengthLevels& levels,
                                    const PartitionOptions& options = {}) {
  auto index = levels.index ? levels.index : std::make_shared<LanguageIndex>(levels.alphabet);
  Partition partition = partition_by_fingerprint(levels.all(), *index, options);
  return {levels.alphabet, levels.max_length(), index, std::move(partition)};
}

struct MinimalLength {
  std::size_t length;
  Regex representative;
  std::size_t class_index;  // into set.partition.classes
};

namespace detail {

struct Located {
  std::size_t class_index;
  bool renamed;
  std::array<char, 256> back;
};

inline Located locate(const Regex& query, const MinimalSet& set) {
  const std::string symbols = symbol_key(query);
  Located out{0, false, {}};
  Regex probe_query = query;
  out.renamed = !std::all_of(symbols.begin(), symbols.end(),
                             [&](char c) { return set.alphabet.contains(c); });
  if (out.renamed) {
    if (symbols.size() > set.alphabet.size()) {
      throw Error(ErrorCode::NotCovered, "query '" + render(query) + "' uses more symbols than '" +
                                             std::string(set.alphabet.symbols()) + "'");
    }
    std::array<char, 256> forward{};
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      forward[static_cast<unsigned char>(symbols[i])] = set.alphabet[i];
      out.back[static_cast<unsigned char>(set.alphabet[i])] = symbols[i];
    }
    probe_query = relabel(query, forward);
  }

  const std::string key = symbol_key(probe_query);
  std::uint64_t label = 1;
  for (;;) {
    const auto it = set.partition.nodes.find({key, label});
    if (it == set.partition.nodes.end()) break;
    const SplitNode& node = it->second;
    if (!node.leaf) {
      label = label << 1 | (set.index->accepts(probe_query, node.probe) ? 1u : 0u);
      continue;
    }
    for (auto c : node.classes) {
      if (set.index->equivalent(probe_query, set.partition.classes[c].representative)) {
        out.class_index = c;
        return out;
      }
    }
    break;
  }
  throw Error(ErrorCode::NotCovered, "no regex of length <= " + std::to_string(set.max_length) +
                                         " is equivalent to '" + render(query) + "'");
}

}  // namespace detail

/// Shortest tree for the language of `query`. A query whose symbols are not
/// all in the set's alphabet is first renamed, order-preservingly, onto the
/// leading symbols of that alphabet and the answer is renamed back. Throws
/// NotCovered when the language needs more than max_length nodes.
inline MinimalLength minimal_length_of(const Regex& query, const MinimalSet& set) {
  const auto found = detail::locate(query, set);
  const Regex& rep = set.partition.classes[found.class_index].representative;
  return {rep.length(), found.renamed ? relabel(rep, found.back) : rep, found.class_index};
}

/// All enumerated trees equivalent to `query`, in the query's own symbols.
inline std::vector<Regex> class_members_of(const Regex& query, const MinimalSet& set) {
  const auto found = detail::locate(query, set);
  const auto& members = set.partition.classes[found.class_index].members;
  if (!found.renamed) return members;
  std::vector<Regex> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(relabel(m, found.back));
  return out;
}

struct DeepSampleOptions {
  std::size_t iterations = 10;
  std::size_t sample_size = 1000;
  std::size_t min_depth = 4;
  std::size_t max_depth = 6;
  std::size_t per_depth = 1000;
  std::uint64_t seed = 0;
};

namespace detail {

// The level built from sampled lower levels, addressed by index instead of
// being materialized. Index layout: unary forms, then pairs with a lower
// operand, then unordered pairs within the previous level.
class VirtualLevel {
 public:
  VirtualLevel(std::vector<Regex> below, const std::vector<Regex>& prev)
      : below_(std::move(below)), prev_(&prev) {
    const std::uint64_t p = prev.size();
    unary_ = 2 * p;
    lower_ = 2 * below_.size() * p;
    size_ = unary_ + lower_ + p * (p + 1);
  }

  std::uint64_t size() const noexcept { return size_; }

  Regex at(std::uint64_t idx) const {
    const auto& prev = *prev_;
    const std::uint64_t p = prev.size();
    if (idx < unary_) {
      const Regex& x = prev[idx / 2];
      return idx % 2 == 0 ? Regex::option(x) : Regex::star(x);
    }
    idx -= unary_;
    const bool is_union = idx % 2 == 0;
    std::uint64_t pair = idx / 2;
    const Regex* x;
    const Regex* y;
    if (idx < lower_) {
      x = &below_[pair / p];
      y = &prev[pair % p];
    } else {
      pair -= lower_ / 2;
      std::uint64_t row = 0;
      while (pair >= p - row) pair -= p - row++;
      x = &prev[row];
      y = &prev[row + pair];
    }
    return is_union ? Regex::union_of(*x, *y) : Regex::concat(*x, *y);
  }

 private:
  std::vector<Regex> below_;
  const std::vector<Regex>* prev_;
  std::uint64_t unary_ = 0;
  std::uint64_t lower_ = 0;
  std::uint64_t size_ = 0;
};

// Floyd's algorithm: m distinct values from [0, n), ascending.
inline std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t m, Rng& rng) {
  std::vector<std::uint64_t> out;
  if (n <= m) {
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = n - m; j < n; ++j) {
    const auto t = rng.below(j + 1);
    chosen.insert(chosen.count(t) ? j : t);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Deep regexes built from sampled lower levels, repeated `iterations`
/// times; returns up to `per_depth` distinct trees for each depth in
/// [min_depth, max_depth], ordered by depth.
inline std::vector<Regex> sample_deep_levels(const Alphabet& alphabet,
                                             const DeepSampleOptions& options) {
  if (options.iterations == 0 || options.min_depth == 0 || options.min_depth > options.max_depth) {
    throw Error(ErrorCode::InsufficientPool,
                "need iterations >= 1 and 1 <= min_depth <= max_depth");
  }
  Rng rng(options.seed);
  const std::size_t top = options.max_depth;
  // per_iteration[t][i] is the level D_i of iteration t; sampled[t][i] is
  // the subset carried forward.
  std::vector<std::vector<std::vector<Regex>>> sampled(options.iterations);
  std::vector<std::vector<detail::VirtualLevel>> per_iteration(options.iterations);

  for (std::size_t t = 0; t < options.iterations; ++t) {
    auto& hat = sampled[t];
    hat.reserve(top + 1);
    hat.emplace_back();
    for (char c : alphabet.symbols()) hat[0].push_back(Regex::symbol(c));
    std::vector<Regex> below;
    for (std::size_t i = 1; i <= top; ++i) {
      per_iteration[t].emplace_back(below, hat[i - 1]);
      const auto& level = per_iteration[t].back();
      if (i == top) break;
      std::vector<Regex> next;
      for (auto idx : detail::sample_indices(level.size(), options.sample_size, rng)) {
        next.push_back(level.at(idx));
      }
      below.insert(below.end(), hat[i - 1].begin(), hat[i - 1].end());
      hat.push_back(std::move(next));
    }
  }

  std::vector<Regex> out;
  for (std::size_t depth = options.min_depth; depth <= top; ++depth) {
    std::uint64_t total = 0;
    for (const auto& levels : per_iteration) total += levels[depth - 1].size();
    std::unordered_set<Regex, RegexHash> taken;
    const std::size_t attempts = options.per_depth * 20 + 100;
    for (std::size_t a = 0; a < attempts && taken.size() < options.per_depth; ++a) {
      std::uint64_t r = rng.below(total);
      std::size_t t = 0;
      while (r >= per_iteration[t][depth - 1].size()) r -= per_iteration[t++][depth - 1].size();
      Regex regex = per_iteration[t][depth - 1].at(r);
      if (taken.insert(regex).second) out.push_back(std::move(regex));
    }
  }
  return out;
}

}  // namespace regexpspace
