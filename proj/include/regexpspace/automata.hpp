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

// Thompson NFAs, subset construction, DFA minimization and language
// equivalence, plus a thread-safe memo from regexes to canonical minimal DFAs.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "regexpspace/error.hpp"
#include "regexpspace/syntax.hpp"

namespace regexpspace {

inline constexpr char kEpsilonLabel = '\0';

struct NfaTransition {
  std::size_t from;
  char label;  // kEpsilonLabel for an epsilon move
  std::size_t to;
};

struct Nfa {
  std::size_t state_count = 0;
  std::vector<NfaTransition> transitions;
  std::size_t start = 0;
  std::vector<std::size_t> finals;
};

/// Complete DFA over `symbols`; `table[s * symbols.size() + k]` is the
/// successor of state s on symbols[k].
struct Dfa {
  std::string symbols;
  std::size_t state_count = 0;
  std::vector<std::size_t> table;
  std::size_t start = 0;
  std::vector<bool> finals;

  std::size_t next(std::size_t state, std::size_t symbol_index) const {
    return table[state * symbols.size() + symbol_index];
  }

  /// Runs the DFA; a symbol outside `symbols` raises ForeignSymbol.
  bool run(std::string_view word) const {
    std::size_t s = start;
    for (char c : word) {
      const auto k = symbols.find(c);
      if (k == std::string::npos) {
        throw Error(ErrorCode::ForeignSymbol,
                    std::string("symbol '") + c + "' is not in '" + symbols + "'");
      }
      s = next(s, k);
    }
    return finals[s];
  }
};

namespace detail {

struct ThompsonBuilder {
  Nfa nfa;

  std::size_t add_state() { return nfa.state_count++; }
  void edge(std::size_t from, char label, std::size_t to) {
    nfa.transitions.push_back({from, label, to});
  }

  std::pair<std::size_t, std::size_t> build(const Regex& r) {
    switch (r.kind()) {
      case RegexKind::Symbol:
      case RegexKind::Epsilon: {
        const auto s = add_state();
        const auto e = add_state();
        edge(s, r.kind() == RegexKind::Symbol ? r.symbol() : kEpsilonLabel, e);
        return {s, e};
      }
      case RegexKind::Concat: {
        const auto [ls, le] = build(r.left());
        const auto [rs, re] = build(r.right());
        edge(le, kEpsilonLabel, rs);
        return {ls, re};
      }
      case RegexKind::Union: {
        const auto s = add_state();
        const auto [ls, le] = build(r.left());
        const auto [rs, re] = build(r.right());
        const auto e = add_state();
        edge(s, kEpsilonLabel, ls);
        edge(s, kEpsilonLabel, rs);
        edge(le, kEpsilonLabel, e);
        edge(re, kEpsilonLabel, e);
        return {s, e};
      }
      case RegexKind::Star:
      case RegexKind::Option: {
        const auto s = add_state();
        const auto [is, ie] = build(r.inner());
        const auto e = add_state();
        edge(s, kEpsilonLabel, is);
        edge(s, kEpsilonLabel, e);
        edge(ie, kEpsilonLabel, e);
        if (r.kind() == RegexKind::Star) edge(ie, kEpsilonLabel, is);
        return {s, e};
      }
    }
    return {0, 0};
  }
};

// Fixed-width bitset over NFA states, usable as a map key.
using StateSet = std::vector<std::uint64_t>;

inline void set_bit(StateSet& set, std::size_t i) { set[i / 64] |= std::uint64_t{1} << (i % 64); }
inline bool has_bit(const StateSet& set, std::size_t i) {
  return (set[i / 64] >> (i % 64)) & 1u;
}

struct NfaAdjacency {
  std::vector<std::vector<std::pair<char, std::size_t>>> out;
  std::vector<StateSet> closure;

  explicit NfaAdjacency(const Nfa& nfa) : out(nfa.state_count) {
    for (const auto& t : nfa.transitions) out[t.from].emplace_back(t.label, t.to);
    const std::size_t words = (nfa.state_count + 63) / 64;
    closure.assign(nfa.state_count, StateSet(words, 0));
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < nfa.state_count; ++s) {
      StateSet& c = closure[s];
      set_bit(c, s);
      stack.assign(1, s);
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& [label, v] : out[u]) {
          if (label == kEpsilonLabel && !has_bit(c, v)) {
            set_bit(c, v);
            stack.push_back(v);
          }
        }
      }
    }
  }

  StateSet close(const StateSet& set) const {
    StateSet result(set.size(), 0);
    for (std::size_t s = 0; s < closure.size(); ++s) {
      if (has_bit(set, s)) {
        for (std::size_t w = 0; w < result.size(); ++w) result[w] |= closure[s][w];
      }
    }
    return result;
  }

  StateSet step(const StateSet& set, char symbol) const {
    StateSet moved(set.size(), 0);
    bool any = false;
    for (std::size_t s = 0; s < out.size(); ++s) {
      if (!has_bit(set, s)) continue;
      for (const auto& [label, v] : out[s]) {
        if (label == symbol) {
          set_bit(moved, v);
          any = true;
        }
      }
    }
    return any ? close(moved) : moved;
  }
};

inline bool is_empty(const StateSet& set) {
  return std::all_of(set.begin(), set.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace detail

/// Thompson construction: at most two states per tree node.
inline Nfa compile_nfa(const Regex& r) {
  detail::ThompsonBuilder builder;
  const auto [s, e] = builder.build(r);
  builder.nfa.start = s;
  builder.nfa.finals = {e};
  return std::move(builder.nfa);
}

/// NFA simulation with on-the-fly epsilon closure.
inline bool accepts(const Nfa& nfa, std::string_view word) {
  const detail::NfaAdjacency adj(nfa);
  detail::StateSet current((nfa.state_count + 63) / 64, 0);
  detail::set_bit(current, nfa.start);
  current = adj.close(current);
  for (char c : word) {
    current = adj.step(current, c);
    if (detail::is_empty(current)) return false;
  }
  return std::any_of(nfa.finals.begin(), nfa.finals.end(),
                     [&](std::size_t f) { return detail::has_bit(current, f); });
}

inline bool accepts(const Regex& r, std::string_view word,
                    const Alphabet& alphabet = Alphabet::standard()) {
  for (char c : word) {
    if (!alphabet.contains(c)) {
      throw Error(ErrorCode::ForeignSymbol,
                  std::string("symbol '") + c + "' is not in alphabet '" +
                      std::string(alphabet.symbols()) + "'");
    }
  }
  return accepts(compile_nfa(r), word);
}

/// Subset construction over `symbols`. The sink (empty subset) is always
/// present and is the last state.
inline Dfa determinize(const Nfa& nfa, std::string_view symbols) {
  const detail::NfaAdjacency adj(nfa);
  const std::size_t k = symbols.size();
  const std::size_t words = (nfa.state_count + 63) / 64;

  std::map<detail::StateSet, std::size_t> ids;
  std::vector<detail::StateSet> subsets;
  std::vector<std::size_t> table;
  constexpr std::size_t kPendingSink = static_cast<std::size_t>(-1);

  detail::StateSet start(words, 0);
  detail::set_bit(start, nfa.start);
  start = adj.close(start);
  ids.emplace(start, 0);
  subsets.push_back(start);

  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (std::size_t a = 0; a < k; ++a) {
      detail::StateSet target = adj.step(subsets[cur], symbols[a]);
      if (detail::is_empty(target)) {
        table.push_back(kPendingSink);
        continue;
      }
      auto [it, inserted] = ids.emplace(target, subsets.size());
      if (inserted) subsets.push_back(std::move(target));
      table.push_back(it->second);
    }
  }

  Dfa dfa;
  dfa.symbols = std::string(symbols);
  dfa.state_count = subsets.size() + 1;
  const std::size_t sink = subsets.size();
  for (auto& t : table) {
    if (t == kPendingSink) t = sink;
  }
  table.insert(table.end(), k, sink);
  dfa.table = std::move(table);
  dfa.start = 0;
  dfa.finals.assign(dfa.state_count, false);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    for (std::size_t f : nfa.finals) {
      if (detail::has_bit(subsets[s], f)) dfa.finals[s] = true;
    }
  }
  return dfa;
}

/// Moore partition refinement on the reachable part, followed by
/// breadth-first renumbering from the start state. Equal languages over the
/// same symbols therefore yield identical tables.
inline Dfa minimize_dfa(const Dfa& dfa) {
  const std::size_t k = dfa.symbols.size();

  std::vector<std::size_t> reachable;
  std::vector<bool> seen(dfa.state_count, false);
  std::queue<std::size_t> frontier;
  frontier.push(dfa.start);
  seen[dfa.start] = true;
  while (!frontier.empty()) {
    const auto s = frontier.front();
    frontier.pop();
    reachable.push_back(s);
    for (std::size_t a = 0; a < k; ++a) {
      const auto t = dfa.next(s, a);
      if (!seen[t]) {
        seen[t] = true;
        frontier.push(t);
      }
    }
  }

  std::vector<std::size_t> block(dfa.state_count, 0);
  for (auto s : reachable) block[s] = dfa.finals[s] ? 1 : 0;
  std::size_t block_count = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signatures;
    std::vector<std::size_t> refined(dfa.state_count, 0);
    std::vector<std::size_t> sig(k + 1);
    for (auto s : reachable) {
      sig[0] = block[s];
      for (std::size_t a = 0; a < k; ++a) sig[a + 1] = block[dfa.next(s, a)];
      refined[s] = signatures.emplace(sig, signatures.size()).first->second;
    }
    const bool stable = signatures.size() == block_count;
    block_count = signatures.size();
    block.swap(refined);
    if (stable) break;
  }

  // Renumber blocks in BFS order from the start block.
  std::vector<std::size_t> order(block_count, static_cast<std::size_t>(-1));
  std::vector<std::size_t> representative;
  order[block[dfa.start]] = 0;
  representative.push_back(dfa.start);
  for (std::size_t i = 0; i < representative.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      const auto b = block[dfa.next(representative[i], a)];
      if (order[b] == static_cast<std::size_t>(-1)) {
        order[b] = representative.size();
        representative.push_back(dfa.next(representative[i], a));
      }
    }
  }

  Dfa out;
  out.symbols = dfa.symbols;
  out.state_count = representative.size();
  out.start = 0;
  out.table.resize(out.state_count * k);
  out.finals.resize(out.state_count);
  for (std::size_t i = 0; i < out.state_count; ++i) {
    out.finals[i] = dfa.finals[representative[i]];
    for (std::size_t a = 0; a < k; ++a) {
      out.table[i * k + a] = order[block[dfa.next(representative[i], a)]];
    }
  }
  return out;
}

/// Byte string identifying a minimized DFA up to its symbol set.
inline std::string canonical_key(const Dfa& minimal) {
  std::string key;
  key.reserve(minimal.state_count * (minimal.symbols.size() + 1) * 2 + minimal.symbols.size());
  key += minimal.symbols;
  key += '\x01';
  auto put = [&key](std::size_t v) {
    do {
      key += static_cast<char>((v & 0x7f) | (v > 0x7f ? 0x80 : 0));
      v >>= 7;
    } while (v != 0);
  };
  for (std::size_t s = 0; s < minimal.state_count; ++s) {
    key += minimal.finals[s] ? 'F' : 'N';
    for (std::size_t a = 0; a < minimal.symbols.size(); ++a) put(minimal.next(s, a));
  }
  return key;
}

inline Dfa minimal_dfa(const Regex& r, std::string_view symbols) {
  return minimize_dfa(determinize(compile_nfa(r), symbols));
}

/// Language equivalence over the union of both regexes' symbols.
inline bool equivalent(const Regex& r1, const Regex& r2) {
  if (r1 == r2) return true;
  std::string symbols = symbol_key(r1);
  for (char c : symbol_key(r2)) {
    if (symbols.find(c) == std::string::npos) symbols += c;
  }
  std::sort(symbols.begin(), symbols.end());
  return canonical_key(minimal_dfa(r1, symbols)) == canonical_key(minimal_dfa(r2, symbols));
}

/// Memo assigning each distinct language over a fixed alphabet a dense id.
/// Safe for concurrent use; results never depend on call order except for
/// the numeric value of freshly assigned ids.
class LanguageIndex {
 public:
  explicit LanguageIndex(const Alphabet& alphabet) : symbols_(alphabet.symbols()) {}

  std::string_view symbols() const noexcept { return symbols_; }

  std::size_t id_of(const Regex& r) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = by_regex_.find(r); it != by_regex_.end()) return it->second;
    }
    for (char c : symbol_key(r)) {
      if (symbols_.find(c) == std::string::npos) {
        throw Error(ErrorCode::ForeignSymbol,
                    std::string("symbol '") + c + "' is not in alphabet '" + symbols_ + "'");
      }
    }
    Dfa dfa = minimal_dfa(r, symbols_);
    std::string key = canonical_key(dfa);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = by_key_.emplace(std::move(key), dfas_.size());
    if (inserted) dfas_.push_back(std::make_shared<const Dfa>(std::move(dfa)));
    by_regex_.emplace(r, it->second);
    return it->second;
  }

  bool equivalent(const Regex& a, const Regex& b) { return id_of(a) == id_of(b); }

  std::shared_ptr<const Dfa> dfa_of(const Regex& r) {
    const auto id = id_of(r);
    std::lock_guard lock(mutex_);
    return dfas_[id];
  }

  bool accepts(const Regex& r, std::string_view word) { return dfa_of(r)->run(word); }

  std::size_t language_count() const {
    std::lock_guard lock(mutex_);
    return dfas_.size();
  }

 private:
  std::string symbols_;
  mutable std::mutex mutex_;
  std::unordered_map<Regex, std::size_t, RegexHash> by_regex_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::vector<std::shared_ptr<const Dfa>> dfas_;
};

}  // namespace regexpspace
