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

// Reference implementations used only by tests. Nothing here calls into the
// library's automata or enumeration code; they share the Regex tree type and
// the parser, and nothing else.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "regexpspace/syntax.hpp"

namespace oracle {

using regexpspace::Regex;
using regexpspace::RegexKind;

// Span semantics: spans(r, w)[i] holds every j such that r matches w[i..j).
inline std::vector<std::vector<bool>> spans(const Regex& r, std::string_view w) {
  const std::size_t n = w.size();
  std::vector<std::vector<bool>> m(n + 1, std::vector<bool>(n + 1, false));
  switch (r.kind()) {
    case RegexKind::Symbol:
      for (std::size_t i = 0; i < n; ++i) m[i][i + 1] = w[i] == r.symbol();
      break;
    case RegexKind::Epsilon:
      for (std::size_t i = 0; i <= n; ++i) m[i][i] = true;
      break;
    case RegexKind::Union: {
      const auto x = spans(r.left(), w), y = spans(r.right(), w);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) m[i][j] = x[i][j] || y[i][j];
      break;
    }
    case RegexKind::Concat: {
      const auto x = spans(r.left(), w), y = spans(r.right(), w);
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = i; k <= n; ++k)
          if (x[i][k])
            for (std::size_t j = k; j <= n; ++j) m[i][j] = m[i][j] || y[k][j];
      break;
    }
    case RegexKind::Option: {
      m = spans(r.inner(), w);
      for (std::size_t i = 0; i <= n; ++i) m[i][i] = true;
      break;
    }
    case RegexKind::Star: {
      const auto x = spans(r.inner(), w);
      for (std::size_t i = 0; i <= n; ++i) m[i][i] = true;
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = j + 1; i-- > 0;)
          for (std::size_t k = i; k <= j && !m[i][j]; ++k)
            if (x[i][k] && k > i && m[k][j]) m[i][j] = true;
      break;
    }
  }
  return m;
}

inline bool matches(const Regex& r, std::string_view w) { return spans(r, w)[0][w.size()]; }

// Every expression tree over `symbols` with tree length 1..max_len, no
// deduplication. by_len[L] holds the trees of length L.
inline std::vector<std::vector<Regex>> all_trees(std::string_view symbols, std::size_t max_len) {
  std::vector<std::vector<Regex>> by_len(max_len + 1);
  for (char c : symbols) by_len[1].push_back(Regex::symbol(c));
  for (std::size_t len = 2; len <= max_len; ++len) {
    for (const auto& x : by_len[len - 1]) {
      by_len[len].push_back(Regex::star(x));
      by_len[len].push_back(Regex::option(x));
    }
    for (std::size_t i = 1; i + 1 < len; ++i) {
      for (const auto& x : by_len[i])
        for (const auto& y : by_len[len - 1 - i]) {
          by_len[len].push_back(Regex::union_of(x, y));
          by_len[len].push_back(Regex::concat(x, y));
        }
    }
  }
  return by_len;
}

// Brzozowski derivatives over a private term type, with union kept as a
// sorted set so the number of dissimilar derivatives stays finite.
namespace deriv {

struct Term;
using TermPtr = std::shared_ptr<const Term>;
enum class Op { Empty, Eps, Sym, Alt, Cat, Star };

struct Term {
  Op op;
  char sym = 0;
  std::vector<TermPtr> kids;
  std::string key;
  bool nullable = false;
};

inline TermPtr make(Op op, char sym, std::vector<TermPtr> kids) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->sym = sym;
  t->kids = std::move(kids);
  switch (op) {
    case Op::Empty: t->key = "0"; break;
    case Op::Eps: t->key = "1"; t->nullable = true; break;
    case Op::Sym: t->key = std::string(1, sym); break;
    case Op::Star: t->key = "*(" + t->kids[0]->key + ")"; t->nullable = true; break;
    case Op::Cat:
      t->key = ".(" + t->kids[0]->key + "," + t->kids[1]->key + ")";
      t->nullable = t->kids[0]->nullable && t->kids[1]->nullable;
      break;
    case Op::Alt:
      t->key = "|(";
      for (const auto& k : t->kids) {
        t->key += k->key + ";";
        t->nullable = t->nullable || k->nullable;
      }
      t->key += ")";
      break;
  }
  return t;
}

inline TermPtr empty() { return make(Op::Empty, 0, {}); }
inline TermPtr eps() { return make(Op::Eps, 0, {}); }

inline TermPtr alt(const TermPtr& a, const TermPtr& b) {
  std::map<std::string, TermPtr> parts;
  for (const auto& t : {a, b}) {
    if (t->op == Op::Alt) {
      for (const auto& k : t->kids) parts.emplace(k->key, k);
    } else if (t->op != Op::Empty) {
      parts.emplace(t->key, t);
    }
  }
  if (parts.empty()) return empty();
  if (parts.size() == 1) return parts.begin()->second;
  std::vector<TermPtr> kids;
  for (auto& [k, t] : parts) kids.push_back(t);
  return make(Op::Alt, 0, std::move(kids));
}

inline TermPtr cat(const TermPtr& a, const TermPtr& b) {
  if (a->op == Op::Empty || b->op == Op::Empty) return empty();
  if (a->op == Op::Eps) return b;
  if (b->op == Op::Eps) return a;
  if (a->op == Op::Cat) return cat(a->kids[0], cat(a->kids[1], b));
  return make(Op::Cat, 0, {a, b});
}

inline TermPtr star(const TermPtr& a) {
  if (a->op == Op::Empty || a->op == Op::Eps) return eps();
  if (a->op == Op::Star) return a;
  return make(Op::Star, 0, {a});
}

inline TermPtr from_regex(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Symbol: return make(Op::Sym, r.symbol(), {});
    case RegexKind::Epsilon: return eps();
    case RegexKind::Union: return alt(from_regex(r.left()), from_regex(r.right()));
    case RegexKind::Concat: return cat(from_regex(r.left()), from_regex(r.right()));
    case RegexKind::Star: return star(from_regex(r.inner()));
    case RegexKind::Option: return alt(eps(), from_regex(r.inner()));
  }
  return empty();
}

inline TermPtr derive(const TermPtr& t, char c) {
  switch (t->op) {
    case Op::Empty:
    case Op::Eps: return empty();
    case Op::Sym: return t->sym == c ? eps() : empty();
    case Op::Alt: {
      TermPtr out = empty();
      for (const auto& k : t->kids) out = alt(out, derive(k, c));
      return out;
    }
    case Op::Cat: {
      TermPtr out = cat(derive(t->kids[0], c), t->kids[1]);
      return t->kids[0]->nullable ? alt(out, derive(t->kids[1], c)) : out;
    }
    case Op::Star: return cat(derive(t->kids[0], c), t);
  }
  return empty();
}

}  // namespace deriv

// Complete DFA whose states are the dissimilar derivatives of a regex.
struct DerivDfa {
  std::string symbols;
  std::vector<std::vector<std::size_t>> next;
  std::vector<bool> accept;
  std::size_t size() const { return accept.size(); }
};

inline DerivDfa derivative_dfa(const Regex& r, std::string_view symbols) {
  DerivDfa d;
  d.symbols = std::string(symbols);
  std::map<std::string, std::size_t> ids;
  std::vector<deriv::TermPtr> states;
  auto intern = [&](const deriv::TermPtr& t) {
    auto [it, fresh] = ids.emplace(t->key, states.size());
    if (fresh) {
      states.push_back(t);
      d.accept.push_back(t->nullable);
      d.next.emplace_back(symbols.size());
    }
    return it->second;
  };
  intern(deriv::from_regex(r));
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::size_t k = 0; k < symbols.size(); ++k) {
      const auto to = intern(deriv::derive(states[s], symbols[k]));
      d.next[s][k] = to;
    }
  }
  return d;
}

inline bool run(const DerivDfa& d, std::string_view w) {
  std::size_t s = 0;
  for (char c : w) s = d.next[s][d.symbols.find(c)];
  return d.accept[s];
}

// Compares acceptance of every word of length <= max_len by walking the
// word trie through both automata at once.
inline bool agree_up_to(const DerivDfa& x, const DerivDfa& y, std::size_t max_len) {
  struct Frame {
    std::size_t sx, sy, len;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const auto f = stack.back();
    stack.pop_back();
    if (x.accept[f.sx] != y.accept[f.sy]) return false;
    if (f.len == max_len) continue;
    for (std::size_t k = 0; k < x.symbols.size(); ++k) {
      stack.push_back({x.next[f.sx][k], y.next[f.sy][k], f.len + 1});
    }
  }
  return true;
}

// Two DFAs with m and n states that disagree do so on some word shorter
// than m + n - 1.
inline std::size_t word_bound(const DerivDfa& x, const DerivDfa& y) {
  return x.size() + y.size() - 2;
}

// Language equivalence by exhaustive word membership up to the state-sum
// bound. Both automata must share one symbol string.
inline bool same_language(const DerivDfa& x, const DerivDfa& y) {
  return agree_up_to(x, y, word_bound(x, y));
}

inline std::string symbols_of(const Regex& a, const Regex& b) {
  std::set<char> s = regexpspace::alphabet_of(a);
  for (char c : regexpspace::alphabet_of(b)) s.insert(c);
  return std::string(s.begin(), s.end());
}

inline bool same_language(const Regex& a, const Regex& b) {
  const auto symbols = symbols_of(a, b);
  return same_language(derivative_dfa(a, symbols), derivative_dfa(b, symbols));
}

// All words over `symbols` of length <= max_len, shortest first.
inline std::vector<std::string> words_up_to(std::string_view symbols, std::size_t max_len) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == max_len) continue;
    for (char c : symbols) out.push_back(out[i] + c);
  }
  return out;
}

// Whether some bijection of symbols maps a onto b exactly.
inline bool permutation_isomorphic(const Regex& a, const Regex& b) {
  auto sa = regexpspace::alphabet_of(a), sb = regexpspace::alphabet_of(b);
  if (sa.size() != sb.size()) return false;
  std::string from(sa.begin(), sa.end()), to(sb.begin(), sb.end());
  const auto target = regexpspace::render(b, regexpspace::RenderStyle::FullyParenthesized);
  do {
    std::array<char, 256> map{};
    for (std::size_t i = 0; i < from.size(); ++i) map[static_cast<unsigned char>(from[i])] = to[i];
    if (regexpspace::render(regexpspace::relabel(a, map),
                            regexpspace::RenderStyle::FullyParenthesized) == target) {
      return true;
    }
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

// Least fully parenthesized rendering over every bijection of `alphabet`.
inline std::string least_relabeling(const Regex& r, std::string_view alphabet) {
  std::string from(alphabet), to(alphabet);
  std::sort(from.begin(), from.end());
  std::sort(to.begin(), to.end());
  std::string best;
  do {
    std::array<char, 256> map{};
    for (std::size_t i = 0; i < from.size(); ++i) map[static_cast<unsigned char>(from[i])] = to[i];
    auto s = regexpspace::render(regexpspace::relabel(r, map),
                                 regexpspace::RenderStyle::FullyParenthesized);
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(to.begin(), to.end()));
  return best;
}

}  // namespace oracle
