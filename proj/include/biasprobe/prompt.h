// Copyright 2026 The biasprobe Authors
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

// Few-shot task prompts and normalization of raw model answers into label
// sets.
//
// Template file (JSON):
//   {
//     "task_id": "imdb",
//     "system_prompt": "... positive or negative.",
//     "question": "Is the expressed sentiment ...?",
//     "few_shot": [{"example": "...", "answer": "Positive"}, ...],
//     "label_universe": ["Positive", "Negative"]        (optional)
//   }
// A "[LABELS]" placeholder in the system prompt is replaced by the label
// universe joined with ", ".

#ifndef BIASPROBE_PROMPT_H_
#define BIASPROBE_PROMPT_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

struct FewShotExample {
  std::string example;
  std::string answer;
};

struct PromptTemplate {
  std::string task_id;
  std::string system_prompt;
  std::string question;
  std::vector<FewShotExample> few_shot;
  std::optional<std::vector<std::string>> label_universe;
};

// Throws ParseError on malformed JSON and ValidationError when a few-shot
// answer uses a label outside the universe.
PromptTemplate LoadPromptTemplate(const std::filesystem::path& path);
PromptTemplate ParsePromptTemplate(std::string_view json,
                                   const std::string& origin = "<memory>");
void ValidatePromptTemplate(const PromptTemplate& tmpl);

// Sends the document text alone: no system prompt, examples or question.
PromptTemplate PassthroughTemplate();

// System part goes to the system message of chat endpoints; the user part
// carries the examples, the document and the question.
struct Prompt {
  std::string system;
  std::string user;

  // system + blank line + user (just user when system is empty). This is the
  // string mocks match against and caches key on.
  std::string Full() const;
};

// Deterministic layout:
//   <system prompt>
//
//   <example 1>
//   Answer: <answer 1>
//   ...
//   <text>
//
//   <question>
// Throws PreconditionError for blank text.
Prompt BuildPrompt(const PromptTemplate& tmpl, std::string_view text);

struct Outcome {
  std::set<std::string> labels;   // lowercase, trimmed
  std::string raw;
  std::set<std::string> flagged;  // labels outside the template's universe

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Strips an optional leading "Answer:" (any case) and one trailing '.',
// splits on commas, trims and lowercases each piece. "none" and empty pieces
// contribute nothing. With a label universe, pieces are matched ignoring case
// and unmatched ones are kept but also listed in `flagged`.
Outcome NormalizeOutcome(std::string_view raw, const PromptTemplate& tmpl);

// Labels joined by ", ", e.g. to re-normalize an outcome.
std::string JoinLabels(const std::set<std::string>& labels);

}  // namespace biasprobe

#endif  // BIASPROBE_PROMPT_H_
