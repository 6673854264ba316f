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

#include "oracles.hpp"
#include "regexpspace/syntax.hpp"

using namespace regexpspace;

namespace {

ErrorCode code_of(std::string_view text, const Alphabet& alphabet = Alphabet::standard()) {
  try {
    parse(text, alphabet);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ErrorCode::Io;
}

std::string full(std::string_view text) {
  return render(parse(text), RenderStyle::FullyParenthesized);
}

}  // namespace

TEST(Alphabet, AcceptsTwoToNineDistinctSymbols) {
  EXPECT_EQ(Alphabet::standard().symbols(), "abcd");
  EXPECT_EQ(Alphabet("ab").size(), 2u);
  EXPECT_EQ(Alphabet("abcdefghi").size(), 9u);
  EXPECT_EQ(Alphabet("xy01").index_of('0'), 2);
  EXPECT_TRUE(Alphabet("ab").contains('b'));
  EXPECT_FALSE(Alphabet("ab").contains('c'));
}

TEST(Alphabet, RejectsBadSymbolSets) {
  for (const char* bad : {"a", "abcdefghij", "aa", "a+", "a b", ""}) {
    try {
      Alphabet a(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidAlphabet) << bad;
    }
  }
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(full("a+bc*"), "(a+(b(c*)))");
  EXPECT_EQ(full("a+b+c"), "((a+b)+c)");
  EXPECT_EQ(full("abc"), "((ab)c)");
  EXPECT_EQ(full("(a+b)c"), "((a+b)c)");
  EXPECT_EQ(full("a*?"), "((a*)?)");
  EXPECT_EQ(full("(ab)*"), "((ab)*)");
  EXPECT_EQ(full("a^*b^?"), "((a*)(b?))");
  EXPECT_EQ(full("((a))"), "a");
}

TEST(Parse, EpsilonSpellings) {
  EXPECT_EQ(parse("ε").kind(), RegexKind::Epsilon);
  EXPECT_EQ(parse("@epsilon").kind(), RegexKind::Epsilon);
  EXPECT_EQ(full("a+ε"), "(a+ε)");
  EXPECT_EQ(parse("a@epsilon"), parse("aε"));
}

TEST(Parse, ErrorCodes) {
  EXPECT_EQ(code_of(""), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of("(a"), ErrorCode::UnbalancedParens);
  EXPECT_EQ(code_of("a)"), ErrorCode::UnbalancedParens);
  EXPECT_EQ(code_of("(a))("), ErrorCode::UnbalancedParens);
  EXPECT_EQ(code_of("a|b"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("[ab]"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("a{2}"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("a."), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("\\d"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("a^2"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("a^"), ErrorCode::PracticalNotation);
  EXPECT_EQ(code_of("e"), ErrorCode::UnknownSymbol);
  EXPECT_EQ(code_of("a b"), ErrorCode::UnknownSymbol);
  EXPECT_EQ(code_of("c", Alphabet("ab")), ErrorCode::UnknownSymbol);
  EXPECT_EQ(code_of("a+"), ErrorCode::Syntax);
  EXPECT_EQ(code_of("+a"), ErrorCode::Syntax);
  EXPECT_EQ(code_of("*a"), ErrorCode::Syntax);
  EXPECT_EQ(code_of("()"), ErrorCode::Syntax);
  EXPECT_EQ(code_of("a++b"), ErrorCode::Syntax);
}

TEST(Parse, ErrorMessagesCarryTheCode) {
  try {
    parse("a|b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind("PracticalNotation", 0), 0u) << e.what();
  }
}

TEST(TreeLength, CountsSymbolsAndOperators) {
  EXPECT_EQ(tree_length(parse("b")), 1u);
  EXPECT_EQ(tree_length(parse("ab")), 3u);
  EXPECT_EQ(tree_length(parse("a*+a+d")), 6u);
  EXPECT_EQ(tree_length(parse("d+a*")), 4u);
  EXPECT_EQ(tree_length(parse("((a+(b*))+((a?)+(b?)))")), 10u);
  EXPECT_EQ(tree_length(parse("(((a+b)+(b+c))+((b+d)+(c+c)))")), 15u);
  EXPECT_EQ(tree_length(parse("(((b*)(bb))((d*)(d*)))")), 12u);
  EXPECT_EQ(tree_length(parse("a+b+c+d")), 7u);
}

TEST(Depth, SymbolsAreDepthZero) {
  EXPECT_EQ(depth(parse("a")), 0u);
  EXPECT_EQ(depth(parse("a*")), 1u);
  EXPECT_EQ(depth(parse("ab+c")), 2u);
  EXPECT_EQ(depth(parse("((a+(b*))+((a?)+(b?)))")), 3u);
}

TEST(Render, MinimalParenExamples) {
  EXPECT_EQ(render(parse("((a+b)+c)")), "a+b+c");
  EXPECT_EQ(render(parse("(a+(b+c))")), "a+b+c");
  EXPECT_EQ(render(parse("((a+b)c)")), "(a+b)c");
  EXPECT_EQ(render(parse("((ab)*)")), "(ab)*");
  EXPECT_EQ(render(parse("((a*)?)")), "a*?");
  EXPECT_EQ(render(parse("(((b*)(bb))((d*)(d*)))")), "b*bbd*d*");
  EXPECT_EQ(render(parse("(a+ε)")), "a+ε");
}

TEST(Render, RoundTripOverAllSmallTrees) {
  const auto trees = oracle::all_trees("abc", 5);
  for (const auto& level : trees) {
    for (const auto& r : level) {
      const auto fp = render(r, RenderStyle::FullyParenthesized);
      EXPECT_EQ(parse(fp), r) << fp;
      const auto mp = render(r);
      const Regex back = parse(mp);
      EXPECT_EQ(tree_length(back), tree_length(r)) << mp;
      EXPECT_EQ(render(back), mp);
      EXPECT_EQ(symbol_key(back), symbol_key(r));
      EXPECT_TRUE(oracle::same_language(back, r)) << mp << " vs " << fp;
    }
  }
}

TEST(Render, StructuralEqualityAndHash) {
  EXPECT_EQ(parse("a+b*"), parse("(a+(b*))"));
  EXPECT_FALSE(parse("a+b") == parse("b+a"));
  EXPECT_EQ(std::hash<Regex>{}(parse("ab*")), std::hash<Regex>{}(parse("a(b*)")));
}

TEST(Symbols, AlphabetOfAndRelabel) {
  const Regex r = parse("(ab)*+d?");
  EXPECT_EQ(symbol_key(r), "abd");
  std::array<char, 256> map{};
  map['a'] = 'c';
  map['d'] = 'a';
  EXPECT_EQ(render(relabel(r, map)), "(cb)*+a?");
}

TEST(CanonicalPermutationKey, EqualsLeastRelabeling) {
  const Alphabet abc("abc");
  for (const auto& level : oracle::all_trees("abc", 5)) {
    for (const auto& r : level) {
      EXPECT_EQ(canonical_permutation_key(r, abc), oracle::least_relabeling(r, "abc"));
    }
  }
}

TEST(CanonicalPermutationKey, EqualKeysIffIsomorphic) {
  const Alphabet abcd = Alphabet::standard();
  const auto trees = oracle::all_trees("abcd", 4);
  std::vector<Regex> pool;
  for (const auto& level : trees) pool.insert(pool.end(), level.begin(), level.end());
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::size_t positives = 0;
  for (int i = 0; i < 4000; ++i) {
    const auto& x = pool[pick(gen)];
    const auto& y = pool[pick(gen)];
    const bool iso = oracle::permutation_isomorphic(x, y);
    positives += iso;
    EXPECT_EQ(canonical_permutation_key(x, abcd) == canonical_permutation_key(y, abcd), iso)
        << render(x) << " / " << render(y);
  }
  EXPECT_GT(positives, 0u);
}
