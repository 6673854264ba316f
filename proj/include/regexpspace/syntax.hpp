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

// Regex expression trees over a small alphabet, the strict textual dialect,
// structural measures and alphabet-permutation canonicalization.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "regexpspace/error.hpp"

namespace regexpspace {

/// Ordered set of distinct single-character symbols (2 to 9 of them).
class Alphabet {
 public:
  explicit Alphabet(std::string_view symbols) : symbols_(symbols) {
    if (symbols_.size() < 2 || symbols_.size() > 9) {
      throw Error(ErrorCode::InvalidAlphabet,
                  "alphabet must have 2 to 9 symbols, got '" + symbols_ + "'");
    }
    index_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto c = static_cast<unsigned char>(symbols_[i]);
      if (!std::isalnum(c)) {
        throw Error(ErrorCode::InvalidAlphabet,
                    std::string("symbol '") + symbols_[i] + "' is not alphanumeric");
      }
      if (index_[c] != -1) {
        throw Error(ErrorCode::InvalidAlphabet,
                    std::string("duplicate symbol '") + symbols_[i] + "'");
      }
      index_[c] = static_cast<int>(i);
    }
  }

  static Alphabet standard() { return Alphabet("abcd"); }

  std::size_t size() const noexcept { return symbols_.size(); }
  std::string_view symbols() const noexcept { return symbols_; }
  char operator[](std::size_t i) const { return symbols_[i]; }

  bool contains(char c) const noexcept {
    return index_[static_cast<unsigned char>(c)] != -1;
  }
  /// Position of `c` in the alphabet, or -1.
  int index_of(char c) const noexcept {
    return index_[static_cast<unsigned char>(c)];
  }

  bool operator==(const Alphabet& other) const noexcept {
    return symbols_ == other.symbols_;
  }

 private:
  std::string symbols_;
  std::array<int, 256> index_{};
};

enum class RegexKind : std::uint8_t { Symbol, Epsilon, Union, Concat, Star, Option };

/// Immutable regex tree. Copies share structure, so values are cheap to pass
/// around and safe to read from several threads.
class Regex {
  struct Node {
    RegexKind kind;
    char symbol;
    std::uint32_t length;
    std::uint32_t depth;
    std::size_t hash;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

 public:
  static Regex symbol(char c) { return Regex(make(RegexKind::Symbol, c, nullptr, nullptr)); }
  static Regex epsilon() { return Regex(make(RegexKind::Epsilon, '\0', nullptr, nullptr)); }
  static Regex union_of(const Regex& l, const Regex& r) {
    return Regex(make(RegexKind::Union, '\0', l.node_, r.node_));
  }
  static Regex concat(const Regex& l, const Regex& r) {
    return Regex(make(RegexKind::Concat, '\0', l.node_, r.node_));
  }
  static Regex star(const Regex& inner) {
    return Regex(make(RegexKind::Star, '\0', inner.node_, nullptr));
  }
  static Regex option(const Regex& inner) {
    return Regex(make(RegexKind::Option, '\0', inner.node_, nullptr));
  }

  RegexKind kind() const noexcept { return node_->kind; }
  bool is_binary() const noexcept {
    return kind() == RegexKind::Union || kind() == RegexKind::Concat;
  }
  bool is_unary() const noexcept {
    return kind() == RegexKind::Star || kind() == RegexKind::Option;
  }
  char symbol() const noexcept { return node_->symbol; }
  // left() doubles as the operand of unary nodes.
  Regex left() const { return Regex(node_->left); }
  Regex right() const { return Regex(node_->right); }
  Regex inner() const { return Regex(node_->left); }

  std::size_t length() const noexcept { return node_->length; }
  std::size_t depth() const noexcept { return node_->depth; }
  std::size_t hash() const noexcept { return node_->hash; }

  friend bool operator==(const Regex& a, const Regex& b) noexcept {
    return equal_nodes(a.node_.get(), b.node_.get());
  }

 private:
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::size_t mix(std::size_t h, std::size_t v) noexcept {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  static std::shared_ptr<const Node> make(RegexKind kind, char symbol,
                                          std::shared_ptr<const Node> left,
                                          std::shared_ptr<const Node> right) {
    std::uint32_t length = 1;
    std::uint32_t depth = 0;
    std::size_t hash = mix(static_cast<std::size_t>(kind) * 1000003u,
                           static_cast<unsigned char>(symbol));
    if (left) {
      length += left->length;
      depth = std::max(depth, left->depth + 1);
      hash = mix(hash, left->hash);
    }
    if (right) {
      length += right->length;
      depth = std::max(depth, right->depth + 1);
      hash = mix(hash * 31u, right->hash);
    }
    return std::make_shared<const Node>(
        Node{kind, symbol, length, depth, hash, std::move(left), std::move(right)});
  }

  static bool equal_nodes(const Node* a, const Node* b) noexcept {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->symbol != b->symbol ||
        a->length != b->length) {
      return false;
    }
    return equal_nodes(a->left.get(), b->left.get()) &&
           equal_nodes(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

struct RegexHash {
  std::size_t operator()(const Regex& r) const noexcept { return r.hash(); }
};

enum class RenderStyle { FullyParenthesized, MinimalParen };

inline constexpr std::string_view kEpsilonText = "\xCE\xB5";  // ε
inline constexpr std::string_view kEpsilonAscii = "@epsilon";

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Regex run() {
    prescan();
    Regex r = parse_union();
    if (pos_ != text_.size()) fail_syntax("unexpected character");
    return r;
  }

 private:
  void prescan() const {
    int open = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      const char c = text_[i];
      if (c == '|' || c == '[' || c == ']' || c == '{' || c == '}' || c == '\\' ||
          c == '.') {
        throw Error(ErrorCode::PracticalNotation,
                    std::string("non-formal construct '") + c + "' at offset " +
                        std::to_string(i) + " in '" + std::string(text_) + "'");
      }
      if (c == '^' && (i + 1 >= text_.size() || (text_[i + 1] != '*' && text_[i + 1] != '?'))) {
        throw Error(ErrorCode::PracticalNotation,
                    "'^' must be followed by '*' or '?' in '" + std::string(text_) + "'");
      }
      if (c == '(') ++open;
      if (c == ')' && --open < 0) {
        throw Error(ErrorCode::UnbalancedParens,
                    "unmatched ')' at offset " + std::to_string(i));
      }
    }
    if (open != 0) {
      throw Error(ErrorCode::UnbalancedParens, "unclosed '(' in '" + std::string(text_) + "'");
    }
  }

  [[noreturn]] void fail_syntax(const char* what) const {
    throw Error(ErrorCode::Syntax, std::string(what) + " at offset " + std::to_string(pos_) +
                                       " in '" + std::string(text_) + "'");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  bool at_atom_start() const {
    if (at_end()) return false;
    const char c = peek();
    return c == '(' || alphabet_.contains(c) || starts_with(kEpsilonText) ||
           starts_with(kEpsilonAscii) || !is_operator(c);
  }

  static bool is_operator(char c) {
    return c == '+' || c == '*' || c == '?' || c == '^' || c == ')' || c == '(';
  }

  Regex parse_union() {
    Regex r = parse_concat();
    while (!at_end() && peek() == '+') {
      ++pos_;
      r = Regex::union_of(r, parse_concat());
    }
    return r;
  }

  Regex parse_concat() {
    if (!at_atom_start()) fail_syntax("expected an operand");
    Regex r = parse_postfix();
    while (at_atom_start()) r = Regex::concat(r, parse_postfix());
    return r;
  }

  Regex parse_postfix() {
    Regex r = parse_atom();
    for (;;) {
      if (starts_with("^*") || starts_with("^?")) ++pos_;
      if (at_end()) break;
      if (peek() == '*') {
        r = Regex::star(r);
      } else if (peek() == '?') {
        r = Regex::option(r);
      } else {
        break;
      }
      ++pos_;
    }
    return r;
  }

  Regex parse_atom() {
    if (peek() == '(') {
      ++pos_;
      if (!at_end() && peek() == ')') fail_syntax("empty group");
      Regex r = parse_union();
      if (at_end() || peek() != ')') fail_syntax("expected ')'");
      ++pos_;
      return r;
    }
    if (starts_with(kEpsilonText)) {
      pos_ += kEpsilonText.size();
      return Regex::epsilon();
    }
    if (starts_with(kEpsilonAscii)) {
      pos_ += kEpsilonAscii.size();
      return Regex::epsilon();
    }
    const char c = peek();
    if (!alphabet_.contains(c)) {
      throw Error(ErrorCode::UnknownSymbol,
                  std::string("symbol '") + c + "' at offset " + std::to_string(pos_) +
                      " is not in alphabet '" + std::string(alphabet_.symbols()) + "'");
    }
    ++pos_;
    return Regex::symbol(c);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

inline void render_full(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Symbol: out += r.symbol(); return;
    case RegexKind::Epsilon: out += kEpsilonText; return;
    case RegexKind::Star:
    case RegexKind::Option:
      out += '(';
      render_full(r.inner(), out);
      out += r.kind() == RegexKind::Star ? '*' : '?';
      out += ')';
      return;
    case RegexKind::Union:
    case RegexKind::Concat:
      out += '(';
      render_full(r.left(), out);
      if (r.kind() == RegexKind::Union) out += '+';
      render_full(r.right(), out);
      out += ')';
      return;
  }
}

// Binding strength: union 0, concat 1, postfix/atoms 2.
inline int precedence(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Union: return 0;
    case RegexKind::Concat: return 1;
    default: return 2;
  }
}

inline void render_minimal(const Regex& r, std::string& out);

inline void render_grouped(const Regex& r, bool parens, std::string& out) {
  if (parens) out += '(';
  render_minimal(r, out);
  if (parens) out += ')';
}

inline void render_minimal(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Symbol: out += r.symbol(); return;
    case RegexKind::Epsilon: out += kEpsilonText; return;
    case RegexKind::Star:
    case RegexKind::Option:
      render_grouped(r.inner(), precedence(r.inner()) < 2, out);
      out += r.kind() == RegexKind::Star ? '*' : '?';
      return;
    case RegexKind::Union:
    case RegexKind::Concat: {
      // Union and concatenation are associative, so nesting of the same
      // operator needs no parentheses on either side.
      const int p = precedence(r);
      render_grouped(r.left(), precedence(r.left()) < p, out);
      if (r.kind() == RegexKind::Union) out += '+';
      render_grouped(r.right(), precedence(r.right()) < p, out);
      return;
    }
  }
}

inline void collect_symbols(const Regex& r, std::set<char>& out) {
  if (r.kind() == RegexKind::Symbol) {
    out.insert(r.symbol());
  } else if (r.is_unary()) {
    collect_symbols(r.inner(), out);
  } else if (r.is_binary()) {
    collect_symbols(r.left(), out);
    collect_symbols(r.right(), out);
  }
}

inline void first_occurrence_order(const Regex& r, std::string& order) {
  if (r.kind() == RegexKind::Symbol) {
    if (order.find(r.symbol()) == std::string::npos) order += r.symbol();
  } else if (r.is_unary()) {
    first_occurrence_order(r.inner(), order);
  } else if (r.is_binary()) {
    first_occurrence_order(r.left(), order);
    first_occurrence_order(r.right(), order);
  }
}

}  // namespace detail

/// Parses the strict formal dialect: `+` union, juxtaposition for
/// concatenation, postfix `*`/`?` (also `^*`/`^?`), parentheses, and `ε` or
/// `@epsilon` for the empty word. Union and concatenation are left-associative.
inline Regex parse(std::string_view text, const Alphabet& alphabet = Alphabet::standard()) {
  if (text.empty()) throw Error(ErrorCode::EmptyInput, "empty regex text");
  return detail::Parser(text, alphabet).run();
}

inline std::string render(const Regex& r, RenderStyle style = RenderStyle::MinimalParen) {
  std::string out;
  if (style == RenderStyle::FullyParenthesized) {
    detail::render_full(r, out);
  } else {
    detail::render_minimal(r, out);
  }
  return out;
}

/// Node count: symbols and every operator including implicit concatenation.
inline std::size_t tree_length(const Regex& r) noexcept { return r.length(); }

inline std::size_t depth(const Regex& r) noexcept { return r.depth(); }

inline std::set<char> alphabet_of(const Regex& r) {
  std::set<char> out;
  detail::collect_symbols(r, out);
  return out;
}

/// The symbols of `r` as a sorted string; handy as a grouping key.
inline std::string symbol_key(const Regex& r) {
  const auto symbols = alphabet_of(r);
  return std::string(symbols.begin(), symbols.end());
}

/// Applies a symbol substitution. Symbols without an entry are kept.
inline Regex relabel(const Regex& r, const std::array<char, 256>& mapping) {
  switch (r.kind()) {
    case RegexKind::Symbol: {
      const char to = mapping[static_cast<unsigned char>(r.symbol())];
      return to == '\0' ? r : Regex::symbol(to);
    }
    case RegexKind::Epsilon: return r;
    case RegexKind::Star: return Regex::star(relabel(r.inner(), mapping));
    case RegexKind::Option: return Regex::option(relabel(r.inner(), mapping));
    case RegexKind::Union:
      return Regex::union_of(relabel(r.left(), mapping), relabel(r.right(), mapping));
    case RegexKind::Concat:
      return Regex::concat(relabel(r.left(), mapping), relabel(r.right(), mapping));
  }
  return r;
}

/// Lexicographically least fully parenthesized rendering over all symbol
/// bijections of `alphabet`. The least string gives the smallest available
/// symbol to each symbol in order of first appearance, so no search over the
/// |Σ|! bijections is needed.
inline std::string canonical_permutation_key(const Regex& r, const Alphabet& alphabet) {
  std::string order;
  detail::first_occurrence_order(r, order);
  std::string sorted(alphabet.symbols());
  std::sort(sorted.begin(), sorted.end());
  std::array<char, 256> mapping{};
  for (std::size_t i = 0; i < order.size() && i < sorted.size(); ++i) {
    mapping[static_cast<unsigned char>(order[i])] = sorted[i];
  }
  return render(relabel(r, mapping), RenderStyle::FullyParenthesized);
}

}  // namespace regexpspace

template <>
struct std::hash<regexpspace::Regex> {
  std::size_t operator()(const regexpspace::Regex& r) const noexcept { return r.hash(); }
};
