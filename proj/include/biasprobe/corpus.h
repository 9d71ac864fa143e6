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

#ifndef BIASPROBE_CORPUS_H_
#define BIASPROBE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace biasprobe {

// Gold label as it appeared in the file: a single string or a list. Carried
// into reports only; the oracle never reads it.
using GoldLabel = std::variant<std::string, std::vector<std::string>>;

struct OriginalInput {
  std::string id;
  std::string text;
  std::optional<GoldLabel> label;

  friend bool operator==(const OriginalInput&, const OriginalInput&) = default;
};

struct Corpus {
  std::string name;
  std::vector<OriginalInput> inputs;
  // One message per rejected row (blank text), e.g. "line 4: empty text".
  std::vector<std::string> warnings;
};

// Reads JSON Lines objects {"id"?, "text", "label"?}. Missing ids become the
// 7-digit zero-padded physical line number. Blank lines are skipped.
// Throws ParseError for malformed lines and ValidationError for duplicate ids.
Corpus LoadCorpus(const std::filesystem::path& path);
Corpus ParseCorpus(std::string_view content, const std::string& name);

// One JSON object per line, in corpus order.
std::string SerializeCorpus(const Corpus& corpus);

// Longest prefix of `text` holding at most `limit` whitespace tokens; `text`
// itself when already within budget. Throws PreconditionError for limit 0.
std::string TruncateForModel(std::string_view text, std::size_t limit);

}  // namespace biasprobe

#endif  // BIASPROBE_CORPUS_H_
