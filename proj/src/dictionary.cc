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

#include "biasprobe/dictionary.h"

#include <algorithm>

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"
#include "json.hpp"

namespace biasprobe {
namespace {

std::string DescribePair(const WordPair& pair) {
  return "(" + pair.attribute.name() + ", \"" + pair.source + "\" -> \"" +
         pair.target + "\")";
}

void ValidatePhrase(const WordPair& pair, const std::string& phrase,
                    const char* role) {
  const auto tokens = SplitWhitespace(phrase);
  if (tokens.empty()) {
    throw ValidationError(std::string("empty ") + role + " in pair " +
                          DescribePair(pair));
  }
  if (tokens.size() > kMaxPhraseTokens) {
    throw ValidationError(std::string(role) + " has more than " +
                          std::to_string(kMaxPhraseTokens) +
                          " tokens in pair " + DescribePair(pair));
  }
  if (phrase.find_first_of(".!?") != std::string::npos) {
    throw ValidationError(std::string(role) +
                          " contains a sentence terminator in pair " +
                          DescribePair(pair));
  }
}

// Adds one row, rewriting validation failures so they name the row.
void AddRow(BiasDictionary& dict, std::string_view attribute,
            std::string_view source, std::string_view target,
            const std::string& origin, std::size_t line) {
  try {
    dict.Add(WordPair{std::string(Trim(source)), std::string(Trim(target)),
                      SensitiveAttribute(attribute)});
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

BiasDictionary ParseTsv(std::string_view content, const std::string& origin) {
  BiasDictionary dict;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw ParseError(origin, line_no,
                       "expected 3 tab-separated fields "
                       "(attribute, source, target), got " +
                           std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (Trim(fields[i]).empty()) {
        static constexpr const char* kNames[] = {"attribute", "source",
                                                 "target"};
        throw ParseError(origin, line_no,
                         std::string("missing field '") + kNames[i] + "'");
      }
    }
    AddRow(dict, fields[0], fields[1], fields[2], origin, line_no);
  }
  return dict;
}

BiasDictionary ParseJson(std::string_view content, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, 0, e.what());
  }
  if (!doc.is_array()) throw ParseError(origin, 0, "expected a JSON array");
  BiasDictionary dict;
  std::size_t row = 0;
  for (const auto& entry : doc) {
    ++row;
    // Rows are numbered by array position since JSON has no useful lines.
    for (const char* key : {"attribute", "source", "target"}) {
      if (!entry.is_object() || !entry.contains(key) ||
          !entry[key].is_string() ||
          Trim(entry[key].get_ref<const std::string&>()).empty()) {
        throw ParseError(origin, row, std::string("missing field '") + key + "'");
      }
    }
    AddRow(dict, entry["attribute"].get_ref<const std::string&>(),
           entry["source"].get_ref<const std::string&>(),
           entry["target"].get_ref<const std::string&>(), origin, row);
  }
  return dict;
}

}  // namespace

SensitiveAttribute::SensitiveAttribute(std::string_view name)
    : name_(AsciiLower(Trim(name))) {
  if (name_.empty()) throw ValidationError("sensitive attribute name is empty");
}

void ValidateWordPair(const WordPair& pair) {
  if (pair.attribute.name().empty()) {
    throw ValidationError("pair has no attribute: " + DescribePair(pair));
  }
  ValidatePhrase(pair, pair.source, "source");
  ValidatePhrase(pair, pair.target, "target");
  if (EqualsIgnoreCase(pair.source, pair.target)) {
    throw ValidationError("source equals target in pair " + DescribePair(pair));
  }
}

bool BiasDictionary::Add(WordPair pair) {
  ValidateWordPair(pair);
  auto& list = entries_[pair.attribute];
  const bool duplicate =
      std::any_of(list.begin(), list.end(), [&](const WordPair& p) {
        return p.source == pair.source && p.target == pair.target;
      });
  if (duplicate) {
    ++duplicate_count_;
    return false;
  }
  list.push_back(std::move(pair));
  return true;
}

const std::vector<WordPair>& BiasDictionary::PairsFor(
    const SensitiveAttribute& attribute) const {
  auto it = entries_.find(attribute);
  if (it == entries_.end()) {
    std::string available;
    for (const auto& [attr, pairs] : entries_) {
      if (!available.empty()) available += ", ";
      available += attr.name();
    }
    throw LookupError("unknown attribute '" + attribute.name() +
                      "'; available: [" + available + "]");
  }
  return it->second;
}

bool BiasDictionary::Contains(const SensitiveAttribute& attribute) const {
  return entries_.count(attribute) > 0;
}

std::vector<SensitiveAttribute> BiasDictionary::Attributes() const {
  std::vector<SensitiveAttribute> out;
  for (const auto& [attr, pairs] : entries_) out.push_back(attr);
  return out;
}

std::size_t BiasDictionary::size() const {
  std::size_t n = 0;
  for (const auto& [attr, pairs] : entries_) n += pairs.size();
  return n;
}

BiasDictionary ParseDictionary(std::string_view content, DictionaryFormat format,
                               const std::string& origin) {
  if (format == DictionaryFormat::kJson) return ParseJson(content, origin);
  return ParseTsv(content, origin);
}

BiasDictionary LoadDictionary(const std::filesystem::path& path,
                              DictionaryFormat format) {
  if (format == DictionaryFormat::kAuto) {
    format = AsciiLower(path.extension().string()) == ".json"
                 ? DictionaryFormat::kJson
                 : DictionaryFormat::kTsv;
  }
  return ParseDictionary(ReadFile(path), format, path.string());
}

}  // namespace biasprobe
