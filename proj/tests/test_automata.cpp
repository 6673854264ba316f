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

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "regexpspace/automata.hpp"

using namespace regexpspace;

namespace {

std::vector<Regex> flatten(const std::vector<std::vector<Regex>>& levels) {
  std::vector<Regex> out;
  for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  return out;
}

}  // namespace

TEST(Nfa, EvenLengthAStrings) {
  const Regex r = parse("(aa)*", Alphabet("ab"));
  const Nfa nfa = compile_nfa(r);
  const Dfa dfa = minimal_dfa(r, "ab");
  for (std::size_t n = 0; n <= 6; ++n) {
    const std::string w(n, 'a');
    EXPECT_EQ(accepts(nfa, w), n % 2 == 0) << n;
    EXPECT_EQ(dfa.run(w), n % 2 == 0) << n;
  }
  EXPECT_EQ(dfa.state_count, 3u);
}

TEST(Nfa, ThompsonStateBound) {
  for (const auto& r : flatten(oracle::all_trees("ab", 5))) {
    EXPECT_LE(compile_nfa(r).state_count, 2 * tree_length(r)) << render(r);
  }
}

TEST(Accepts, MatchesSpanSemantics) {
  const auto words = oracle::words_up_to("ab", 5);
  const Alphabet ab("ab");
  for (const auto& r : flatten(oracle::all_trees("ab", 5))) {
    const Nfa nfa = compile_nfa(r);
    const Dfa dfa = minimal_dfa(r, "ab");
    for (const auto& w : words) {
      const bool expected = oracle::matches(r, w);
      ASSERT_EQ(accepts(nfa, w), expected) << render(r) << " on '" << w << "'";
      ASSERT_EQ(dfa.run(w), expected) << render(r) << " on '" << w << "'";
      ASSERT_EQ(accepts(r, w, ab), expected);
    }
  }
}

TEST(Accepts, EpsilonAndOption) {
  EXPECT_TRUE(accepts(parse("ε"), ""));
  EXPECT_FALSE(accepts(parse("ε"), "a"));
  EXPECT_TRUE(accepts(parse("a?b"), "b"));
  EXPECT_TRUE(accepts(parse("a?b"), "ab"));
  EXPECT_FALSE(accepts(parse("a?b"), "aab"));
}

TEST(Accepts, ForeignSymbolRaises) {
  try {
    accepts(parse("a*"), "ax");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForeignSymbol);
  }
  try {
    minimal_dfa(parse("a*"), "ab").run("c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForeignSymbol);
  }
}

// Every state reachable and every pair of states separated by some word:
// the Myhill-Nerode characterization of a minimal complete DFA.
TEST(Minimize, StatesReachableAndDistinguishable) {
  for (const auto& r : flatten(oracle::all_trees("ab", 5))) {
    const Dfa d = minimal_dfa(r, "ab");
    const auto words = oracle::words_up_to("ab", d.state_count);
    std::vector<std::string> sig(d.state_count);
    std::vector<bool> reached(d.state_count, false);
    for (std::size_t s = 0; s < d.state_count; ++s) {
      Dfa from = d;
      from.start = s;
      for (const auto& w : words) sig[s] += from.run(w) ? '1' : '0';
    }
    for (const auto& w : words) {
      std::size_t s = d.start;
      for (char c : w) s = d.next(s, d.symbols.find(c));
      reached[s] = true;
    }
    for (std::size_t s = 0; s < d.state_count; ++s) {
      EXPECT_TRUE(reached[s]) << render(r);
      for (std::size_t t = s + 1; t < d.state_count; ++t) EXPECT_NE(sig[s], sig[t]) << render(r);
    }
    EXPECT_LE(d.state_count, oracle::derivative_dfa(r, "ab").size());
  }
}

TEST(Equivalent, AgreesWithBoundedWordComparison) {
  const auto pool = flatten(oracle::all_trees("ab", 6));
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t positives = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto& x = pool[pick(gen)];
    const auto& y = pool[pick(gen)];
    const bool truth = oracle::same_language(x, y);
    positives += truth;
    ASSERT_EQ(equivalent(x, y), truth) << render(x) << " / " << render(y);
  }
  EXPECT_TRUE(equivalent(parse("a*+a+d"), parse("d+a*")));
  EXPECT_TRUE(equivalent(parse("(a*)*"), parse("a*")));
  EXPECT_TRUE(equivalent(parse("(a?)*"), parse("a*")));
  EXPECT_FALSE(equivalent(parse("a"), parse("b")));
  EXPECT_FALSE(equivalent(parse("a*"), parse("a?")));
}

TEST(Equivalent, CanonicalKeyIdentifiesLanguage) {
  EXPECT_EQ(canonical_key(minimal_dfa(parse("a*b+b"), "ab")),
            canonical_key(minimal_dfa(parse("a*b"), "ab")));
  EXPECT_NE(canonical_key(minimal_dfa(parse("a*b"), "ab")),
            canonical_key(minimal_dfa(parse("ab*"), "ab")));
}

TEST(LanguageIndex, IdsFollowEquivalence) {
  const Alphabet ab("ab");
  LanguageIndex index(ab);
  const auto pool = flatten(oracle::all_trees("ab", 4));
  for (std::size_t i = 0; i < pool.size(); i += 3) {
    for (std::size_t j = i; j < pool.size(); j += 7) {
      EXPECT_EQ(index.equivalent(pool[i], pool[j]), oracle::same_language(pool[i], pool[j]));
    }
  }
  EXPECT_TRUE(index.accepts(parse("ab*", ab), "abbb"));
  EXPECT_FALSE(index.accepts(parse("ab*", ab), "ba"));
  EXPECT_GT(index.language_count(), 1u);
}

TEST(LanguageIndex, RejectsForeignSymbols) {
  LanguageIndex index(Alphabet("ab"));
  try {
    index.id_of(parse("c"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForeignSymbol);
  }
}

TEST(LanguageIndex, ConcurrentLookupsAgree) {
  const auto pool = flatten(oracle::all_trees("ab", 5));
  LanguageIndex shared(Alphabet("ab"));
  std::vector<std::vector<std::size_t>> ids(4);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < ids.size(); ++t) {
    workers.emplace_back([&, t] {
      for (const auto& r : pool) ids[t].push_back(shared.id_of(r));
    });
  }
  for (auto& w : workers) w.join();
  for (std::size_t t = 1; t < ids.size(); ++t) EXPECT_EQ(ids[t], ids[0]);
  LanguageIndex serial(Alphabet("ab"));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j : {std::size_t{0}, i / 2}) {
      EXPECT_EQ(ids[0][i] == ids[0][j], serial.equivalent(pool[i], pool[j]));
    }
  }
}
