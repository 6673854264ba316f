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

// Zero-shot and five-shot prompt texts for both tasks.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "regexpspace/dataset.hpp"
#include "regexpspace/error.hpp"
#include "regexpspace/random.hpp"
#include "regexpspace/syntax.hpp"

namespace regexpspace {

struct MinExemplar {
  std::string input;
  std::string output;

  friend bool operator==(const MinExemplar&, const MinExemplar&) = default;
};

struct EqExemplar {
  std::string regex1;
  std::string regex2;
  std::string output;

  friend bool operator==(const EqExemplar&, const EqExemplar&) = default;
};

namespace detail {

inline std::string quoted_symbols(const Alphabet& alphabet) {
  std::string out;
  for (char c : alphabet.symbols()) {
    if (!out.empty()) out += ", ";
    out += '`';
    out += c;
    out += '`';
  }
  return out;
}

inline std::string prompt_preamble() {
  return "You are an expert in formal regular expressions, commonly referred to as regex.\n\n"
         "The formal regex must follow these rules:\n"
         "- Allowed operations: concatenation, union (`+`), Kleene star (`*`), and option (`?`).\n"
         "- Concatenation is implicit (no symbol is written).\n"
         "- Parentheses `()` specify precedence.\n"
         "- Do not use practical regex notations such as `|` for union or `+` for repetition.\n\n";
}

inline std::string min_task(const Alphabet& alphabet) {
  const auto symbols = quoted_symbols(alphabet);
  return prompt_preamble() + "Your task is to minimize a given formal regex over the fixed alphabet {" +
         symbols +
         "}. The minimized regex must be functionally equivalent to the input and have the "
         "smallest total number of symbols, where both characters (" +
         symbols +
         ") and operations (`+`, `*`, `?`), and concatenations are counted, but parentheses are "
         "not.\n\n"
         "Enclose your final answer within `\\\\boxed{}`.\n\n";
}

inline std::string eq_task(const Alphabet& alphabet) {
  return prompt_preamble() +
         "Your task is to determine whether two given formal regexes over the fixed alphabet {" +
         quoted_symbols(alphabet) +
         "} are equivalent. You must output either True or False.\n\n"
         "Enclose your final answer within `\\\\boxed{}`.\n\n";
}

template <class T>
void require_five(const std::vector<T>& exemplars) {
  if (exemplars.size() != 5) {
    throw Error(ErrorCode::MissingExemplars,
                "five-shot prompts need exactly 5 exemplars, got " +
                    std::to_string(exemplars.size()));
  }
}

}  // namespace detail

inline std::string min_prompt(std::string_view regex,
                              const Alphabet& alphabet = Alphabet::standard()) {
  return detail::min_task(alphabet) + "Minimize the following regex:\n\nInput Regex: " +
         std::string(regex) + "\nOutput: ";
}

inline std::string min_prompt_five_shot(std::string_view regex,
                                        const std::vector<MinExemplar>& exemplars,
                                        const Alphabet& alphabet = Alphabet::standard()) {
  detail::require_five(exemplars);
  std::string out = detail::min_task(alphabet) + "Below are five input-output examples:\n\n";
  for (std::size_t k = 0; k < exemplars.size(); ++k) {
    out += "[Example " + std::to_string(k + 1) + "]\nInput Regex: " + exemplars[k].input +
           "\nOutput: " + exemplars[k].output + "\n\n";
  }
  return out + "Minimize the following regex:\n\nInput Regex: " + std::string(regex) +
         "\nOutput: ";
}

inline std::string eq_prompt(std::string_view regex1, std::string_view regex2,
                             const Alphabet& alphabet = Alphabet::standard()) {
  return detail::eq_task(alphabet) +
         "Determine the equivalence of the following regexes:\n\nInput Regex 1: " +
         std::string(regex1) + "\nInput Regex 2: " + std::string(regex2) + "\nOutput: ";
}

inline std::string eq_prompt_five_shot(std::string_view regex1, std::string_view regex2,
                                       const std::vector<EqExemplar>& exemplars,
                                       const Alphabet& alphabet = Alphabet::standard()) {
  detail::require_five(exemplars);
  std::string out = detail::eq_task(alphabet) + "Below are five input-output examples:\n\n";
  for (std::size_t k = 0; k < exemplars.size(); ++k) {
    out += "[Example " + std::to_string(k + 1) + "]\nInput Regex 1: " + exemplars[k].regex1 +
           "\nInput Regex 2: " + exemplars[k].regex2 + "\nOutput: " + exemplars[k].output + "\n\n";
  }
  return out + "Determine the equivalence of the following regexes:\n\nInput Regex 1: " +
         std::string(regex1) + "\nInput Regex 2: " + std::string(regex2) + "\nOutput: ";
}

/// Five non-minimal training queries with their minimal forms as boxed
/// answers, chosen under the seed.
inline std::vector<MinExemplar> default_min_exemplars(const std::vector<LabeledExample>& train,
                                                      std::uint64_t seed) {
  std::vector<const LabeledExample*> pool;
  for (const auto& ex : train) {
    if (ex.query_length > ex.minimal_length) pool.push_back(&ex);
  }
  if (pool.size() < 5) {
    throw Error(ErrorCode::MissingExemplars, "training split has " + std::to_string(pool.size()) +
                                                 " non-minimal queries, need 5");
  }
  Rng rng(seed);
  std::vector<MinExemplar> out;
  for (auto i : detail::sample_indices(pool.size(), 5, rng)) {
    out.push_back({pool[i]->query, "\\boxed{" + pool[i]->minimal + "}"});
  }
  return out;
}

/// Five training pairs alternating True and False (three True), each
/// answer boxed. True pairs use a query and its recorded equivalent; False
/// pairs use two training queries with different minimal forms.
inline std::vector<EqExemplar> default_eq_exemplars(const std::vector<LabeledExample>& train,
                                                    const Alphabet& alphabet, std::uint64_t seed) {
  std::vector<const LabeledExample*> with_alt;
  for (const auto& ex : train) {
    if (ex.equivalent_alt) with_alt.push_back(&ex);
  }
  if (with_alt.size() < 3 || train.size() < 4) {
    throw Error(ErrorCode::MissingExemplars, "training split too small for equivalence exemplars");
  }
  Rng rng(seed);
  std::vector<EqExemplar> out;
  for (std::size_t k = 0; k < 5; ++k) {
    if (k % 2 == 0) {
      const auto* ex = with_alt[rng.below(with_alt.size())];
      const Regex alt = parse(*ex->equivalent_alt, alphabet);
      out.push_back({ex->query, render(alt, RenderStyle::FullyParenthesized), "\\boxed{True}"});
      continue;
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const auto& a = train[rng.below(train.size())];
      const auto& b = train[rng.below(train.size())];
      if (a.query == b.query) continue;
      if (equivalent(parse(a.query, alphabet), parse(b.query, alphabet))) continue;
      out.push_back({a.query, b.query, "\\boxed{False}"});
      break;
    }
    if (out.size() != k + 1) {
      throw Error(ErrorCode::MissingExemplars, "no non-equivalent training pair found");
    }
  }
  return out;
}

inline void to_json(nlohmann::json& j, const MinExemplar& e) {
  j = {{"input", e.input}, {"output", e.output}};
}

inline void from_json(const nlohmann::json& j, MinExemplar& e) {
  j.at("input").get_to(e.input);
  j.at("output").get_to(e.output);
}

inline void to_json(nlohmann::json& j, const EqExemplar& e) {
  j = {{"regex1", e.regex1}, {"regex2", e.regex2}, {"output", e.output}};
}

inline void from_json(const nlohmann::json& j, EqExemplar& e) {
  j.at("regex1").get_to(e.regex1);
  j.at("regex2").get_to(e.regex2);
  j.at("output").get_to(e.output);
}

}  // namespace regexpspace
