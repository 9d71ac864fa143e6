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

#include "biasprobe/corpus.h"

#include <cstdio>
#include <unordered_map>

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"
#include "json.hpp"

namespace biasprobe {
namespace {

std::string PaddedLineNumber(std::size_t line) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%07zu", line);
  return buf;
}

GoldLabel ParseLabel(const nlohmann::json& value, const std::string& name,
                     std::size_t line) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::vector<std::string> labels;
    for (const auto& item : value) {
      if (!item.is_string()) {
        throw ParseError(name, line, "label array must hold strings");
      }
      labels.push_back(item.get<std::string>());
    }
    return labels;
  }
  throw ParseError(name, line, "label must be a string or an array of strings");
}

}  // namespace

Corpus ParseCorpus(std::string_view content, const std::string& name) {
  Corpus corpus;
  corpus.name = name;
  std::unordered_map<std::string, std::size_t> id_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = Trim(content.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(name, line_no, e.what());
    }
    if (!row.is_object()) throw ParseError(name, line_no, "expected an object");
    if (!row.contains("text") || !row["text"].is_string()) {
      throw ParseError(name, line_no, "missing string field 'text'");
    }

    OriginalInput input;
    if (row.contains("id") && !row["id"].is_null()) {
      if (!row["id"].is_string()) {
        throw ParseError(name, line_no, "'id' must be a string");
      }
      input.id = row["id"].get<std::string>();
    } else {
      input.id = PaddedLineNumber(line_no);
    }
    input.text = row["text"].get<std::string>();
    if (row.contains("label") && !row["label"].is_null()) {
      input.label = ParseLabel(row["label"], name, line_no);
    }

    if (Trim(input.text).empty()) {
      corpus.warnings.push_back("line " + std::to_string(line_no) +
                                ": empty text, row rejected");
      continue;
    }
    auto [it, inserted] = id_lines.emplace(input.id, line_no);
    if (!inserted) {
      throw ValidationError(name + ": duplicate id '" + input.id +
                            "' on lines " + std::to_string(it->second) +
                            " and " + std::to_string(line_no));
    }
    corpus.inputs.push_back(std::move(input));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path) {
  return ParseCorpus(ReadFile(path), path.string());
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const auto& input : corpus.inputs) {
    nlohmann::ordered_json row;
    row["id"] = input.id;
    row["text"] = input.text;
    if (input.label) {
      std::visit([&](const auto& v) { row["label"] = v; }, *input.label);
    }
    out += row.dump();
    out += '\n';
  }
  return out;
}

std::string TruncateForModel(std::string_view text, std::size_t limit) {
  if (limit == 0) throw PreconditionError("token budget must be positive");
  const auto tokens = SplitWhitespace(text);
  if (tokens.size() <= limit) return std::string(text);
  const std::string_view last = tokens[limit - 1];
  const std::size_t end = static_cast<std::size_t>(last.data() - text.data()) +
                          last.size();
  return std::string(text.substr(0, end));
}

}  // namespace biasprobe
