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

// Bias dictionary: directed word pairs (source -> target) grouped by the
// sensitive attribute they perturb. Immutable once loaded.
//
// File forms:
//   TSV   attribute<TAB>source<TAB>target, '#' starts a comment line
//   JSON  [{"attribute": ..., "source": ..., "target": ...}, ...]

#ifndef BIASPROBE_DICTIONARY_H_
#define BIASPROBE_DICTIONARY_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace biasprobe {

// Lowercased, non-empty attribute identifier such as "race" or "gender".
class SensitiveAttribute {
 public:
  SensitiveAttribute() = default;
  // Throws ValidationError when `name` is blank.
  explicit SensitiveAttribute(std::string_view name);

  const std::string& name() const { return name_; }

  friend auto operator<=>(const SensitiveAttribute&,
                          const SensitiveAttribute&) = default;

 private:
  std::string name_;
};

inline constexpr std::size_t kMaxPhraseTokens = 5;

struct WordPair {
  std::string source;
  std::string target;
  SensitiveAttribute attribute;

  friend bool operator==(const WordPair&, const WordPair&) = default;
};

// Throws ValidationError if `pair` breaks a phrase rule: empty phrase, more
// than kMaxPhraseTokens whitespace tokens, sentence terminators, or
// source == target ignoring case.
void ValidateWordPair(const WordPair& pair);

class BiasDictionary {
 public:
  // Validates `pair` and appends it to its attribute's list. Returns false,
  // and bumps duplicate_count(), when the same (source, target) is already
  // stored for that attribute.
  bool Add(WordPair pair);

  // Pairs for `attribute` in insertion order. Throws LookupError naming the
  // attribute and the available ones.
  const std::vector<WordPair>& PairsFor(const SensitiveAttribute& attribute) const;

  bool Contains(const SensitiveAttribute& attribute) const;
  std::vector<SensitiveAttribute> Attributes() const;
  std::size_t size() const;
  std::size_t duplicate_count() const { return duplicate_count_; }

  friend bool operator==(const BiasDictionary& a, const BiasDictionary& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<SensitiveAttribute, std::vector<WordPair>> entries_;
  std::size_t duplicate_count_ = 0;
};

enum class DictionaryFormat { kAuto, kTsv, kJson };

// kAuto picks JSON for a ".json" extension and TSV otherwise.
BiasDictionary LoadDictionary(const std::filesystem::path& path,
                              DictionaryFormat format = DictionaryFormat::kAuto);

// Same as LoadDictionary over in-memory content; `origin` names the source in
// error messages. kAuto is treated as TSV.
BiasDictionary ParseDictionary(std::string_view content, DictionaryFormat format,
                               const std::string& origin = "<memory>");

}  // namespace biasprobe

#endif  // BIASPROBE_DICTIONARY_H_
