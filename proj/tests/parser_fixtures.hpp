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

// Synthetic model responses with the answer the parser must extract.

#pragma once

#include <string_view>
#include <vector>

struct ParserFixture {
  std::string_view branch;
  std::string_view raw;
  std::string_view answer;
  bool practical;
};

inline const std::vector<ParserFixture>& parser_fixtures() {
  static const std::vector<ParserFixture> fixtures{
      {"boxed", R"(\boxed{a+b*})", "a+b*", false},
      {"boxed", "Thinking.\n\\boxed{a}\nso finally \\boxed{(a+b)*}", "(a+b)*", false},
      {"boxed", R"(\boxed{ a + b })", "a+b", false},
      {"boxed", R"($\boxed{a^*b}$)", "a*b", false},
      {"boxed", R"(\boxed{{a}b})", "ab", false},
      {"boxed", R"(\boxed{True})", "True", false},
      {"boxed", R"(\boxed {a?})", "a?", false},
      {"boxed", R"(\boxed{a+b)", "a+b", false},
      {"boxed", "Answer: b\n\\boxed{c*}", "c*", false},
      {"boxed", "The minimal regex is d.\n\\boxed{d?}", "d?", false},
      {"nested-text", R"(\boxed{\text{a+b}})", "a+b", false},
      {"nested-text", R"(\boxed{\text{\text{ab*}}})", "ab*", false},
      {"nested-text", R"(\boxed{\text{True}})", "True", false},
      {"nested-text", R"(Answer: \text{b?a})", "b?a", false},
      {"keyword", "Reasoning first.\nAnswer: a+b*", "a+b*", false},
      {"keyword", "**Answer:** b*a", "b*a", false},
      {"keyword", "**Answer** a*", "a*", false},
      {"keyword", "Answer: first\nmore text\nFinal answer: (ab)*.", "(ab)*", false},
      {"keyword", "answer: True", "True", false},
      {"keyword", "The minimal regex is a*\nAnswer: b*", "b*", false},
      {"keyword", "Answer: b*\nThe minimal regex is a*", "b*", false},
      {"indicative", "The minimal regex is a+b.", "a+b", false},
      {"indicative", "Minimized regex: (a+b)*", "(a+b)*", false},
      {"indicative", "So the simplified regex is **b*a?**", "b*a?", false},
      {"indicative", "The minimal regex for this language is a*", "a*", false},
      {"indicative", "Therefore the minimal regex is c|d", "c+d", true},
      {"last-line", "minimal regex follows\na?b", "a?b", false},
      {"last-line", "Let me think.\n\na*b*\n\n", "a*b*", false},
      {"last-line", "some reasoning\n(a+b)^*", "(a+b)*", false},
      {"last-line", "x\r\ny*\r\n", "y*", false},
      {"last-line", "just text", "justtext", false},
      {"last-line", "", "", false},
      {"pipe", "a|b", "a+b", true},
      {"pipe", R"(\boxed{(a|b)^*})", "(a+b)*", true},
      {"pipe", "answer: a | b", "a+b", true},
      {"pipe", R"(\boxed{\text{c|d|a}})", "c+d+a", true},
  };
  return fixtures;
}
