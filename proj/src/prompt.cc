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

#include "biasprobe/prompt.h"

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"
#include "json.hpp"

namespace biasprobe {
namespace {

constexpr std::string_view kLabelsPlaceholder = "[LABELS]";

std::vector<std::string> SplitAnswer(std::string_view raw) {
  std::string_view body = Trim(raw);
  constexpr std::string_view kAnswer = "answer:";
  if (body.size() >= kAnswer.size() &&
      EqualsIgnoreCase(body.substr(0, kAnswer.size()), kAnswer)) {
    body = Trim(body.substr(kAnswer.size()));
  }
  if (!body.empty() && body.back() == '.') body.remove_suffix(1);

  std::vector<std::string> pieces;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    std::string piece = AsciiLower(Trim(body.substr(start, comma - start)));
    if (!piece.empty() && piece != "none") pieces.push_back(std::move(piece));
    start = comma + 1;
  }
  return pieces;
}

}  // namespace

PromptTemplate PassthroughTemplate() {
  PromptTemplate tmpl;
  tmpl.task_id = "passthrough";
  return tmpl;
}

void ValidatePromptTemplate(const PromptTemplate& tmpl) {
  if (!tmpl.label_universe) return;
  for (std::size_t i = 0; i < tmpl.few_shot.size(); ++i) {
    const Outcome o = NormalizeOutcome(tmpl.few_shot[i].answer, tmpl);
    if (!o.flagged.empty()) {
      throw ValidationError("template '" + tmpl.task_id + "': few-shot answer " +
                            std::to_string(i + 1) + " (\"" +
                            tmpl.few_shot[i].answer +
                            "\") uses labels outside the label universe: " +
                            JoinLabels(o.flagged));
    }
  }
}

PromptTemplate ParsePromptTemplate(std::string_view json,
                                   const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, 0, e.what());
  }
  PromptTemplate tmpl;
  try {
    tmpl.task_id = doc.at("task_id").get<std::string>();
    tmpl.system_prompt = doc.value("system_prompt", "");
    tmpl.question = doc.value("question", "");
    if (doc.contains("few_shot")) {
      for (const auto& shot : doc.at("few_shot")) {
        tmpl.few_shot.push_back({shot.at("example").get<std::string>(),
                                 shot.at("answer").get<std::string>()});
      }
    }
    if (doc.contains("label_universe") && !doc["label_universe"].is_null()) {
      tmpl.label_universe =
          doc["label_universe"].get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin, 0, e.what());
  }
  ValidatePromptTemplate(tmpl);
  return tmpl;
}

PromptTemplate LoadPromptTemplate(const std::filesystem::path& path) {
  return ParsePromptTemplate(ReadFile(path), path.string());
}

std::string Prompt::Full() const {
  if (system.empty()) return user;
  return system + "\n\n" + user;
}

Prompt BuildPrompt(const PromptTemplate& tmpl, std::string_view text) {
  if (Trim(text).empty()) throw PreconditionError("prompt text is empty");

  Prompt prompt;
  prompt.system = tmpl.system_prompt;
  if (tmpl.label_universe) {
    std::string labels;
    for (const auto& l : *tmpl.label_universe) {
      if (!labels.empty()) labels += ", ";
      labels += l;
    }
    for (std::size_t at = prompt.system.find(kLabelsPlaceholder);
         at != std::string::npos;
         at = prompt.system.find(kLabelsPlaceholder, at + labels.size())) {
      prompt.system.replace(at, kLabelsPlaceholder.size(), labels);
    }
  }

  std::string& user = prompt.user;
  for (const auto& shot : tmpl.few_shot) {
    user += shot.example;
    user += "\nAnswer: ";
    user += shot.answer;
    user += "\n\n";
  }
  user += text;
  if (!tmpl.question.empty()) {
    user += "\n\n";
    user += tmpl.question;
  }
  return prompt;
}

Outcome NormalizeOutcome(std::string_view raw, const PromptTemplate& tmpl) {
  Outcome outcome;
  outcome.raw = std::string(raw);
  for (std::string& piece : SplitAnswer(raw)) {
    if (tmpl.label_universe) {
      bool known = false;
      for (const auto& label : *tmpl.label_universe) {
        if (EqualsIgnoreCase(Trim(label), piece)) {
          known = true;
          break;
        }
      }
      if (!known) outcome.flagged.insert(piece);
    }
    outcome.labels.insert(std::move(piece));
  }
  return outcome;
}

std::string JoinLabels(const std::set<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += ", ";
    out += l;
  }
  return out;
}

}  // namespace biasprobe
