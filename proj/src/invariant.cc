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

#include "biasprobe/invariant.h"

#include <algorithm>
#include <cstddef>

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"

namespace biasprobe {
namespace {

// `equal(i, j)` compares element i of the first sequence with element j of
// the second. Signed indices: the pseudocode's tail term may in principle go
// negative and is kept that way.
template <typename Equal>
bool TolerantCompare(std::ptrdiff_t st1, std::ptrdiff_t st2, Equal equal) {
  std::ptrdiff_t is1 = 0;
  std::ptrdiff_t is2 = 0;
  const std::ptrdiff_t error_limit = st1 > st2 ? st1 - st2 : st2 - st1;
  std::ptrdiff_t error = 0;
  std::ptrdiff_t shift = 0;
  while (is1 < st1 && is2 < st2) {
    if (!equal(is1, is2)) {
      ++error;
      if (shift < error_limit) {
        ++shift;
        if (st1 > st2) {
          ++is1;
        } else if (st1 < st2) {
          ++is2;
        }
      }
    }
    ++is1;
    ++is2;
  }
  error += (st1 - is1) + (st2 - is2);
  return error <= error_limit;
}

bool SameTags(const SentenceAnnotation& a, const SentenceAnnotation& b,
              std::string TokenAnnotation::*field) {
  return TolerantCompare(
      static_cast<std::ptrdiff_t>(a.tokens.size()),
      static_cast<std::ptrdiff_t>(b.tokens.size()),
      [&](std::ptrdiff_t i, std::ptrdiff_t j) {
        return a.tokens[static_cast<std::size_t>(i)].*field ==
               b.tokens[static_cast<std::size_t>(j)].*field;
      });
}

// Per-sentence part of both InvCheck variants; nullopt when it conforms.
std::optional<InvariantVerdict> CompareSentence(const SentenceAnnotation& o,
                                                const SentenceAnnotation& m,
                                                std::size_t index) {
  if (!SameTags(o, m, &TokenAnnotation::pos)) {
    return InvariantVerdict::Fail(VerdictReason::kPosMismatch, index);
  }
  if (!SameTags(o, m, &TokenAnnotation::dep)) {
    return InvariantVerdict::Fail(VerdictReason::kDepMismatch, index);
  }
  return std::nullopt;
}

std::vector<std::string> DefaultAbbreviations() {
  return {"Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "St.", "No.",
          "vs.", "etc.", "e.g.", "i.e.", "Jr.", "Sr."};
}

}  // namespace

std::string_view ToString(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::kOk:
      return "ok";
    case VerdictReason::kSentenceCountMismatch:
      return "sentence_count_mismatch";
    case VerdictReason::kPosMismatch:
      return "pos_mismatch";
    case VerdictReason::kDepMismatch:
      return "dep_mismatch";
  }
  return "ok";
}

VerdictReason VerdictReasonFromString(std::string_view name) {
  for (VerdictReason r :
       {VerdictReason::kOk, VerdictReason::kSentenceCountMismatch,
        VerdictReason::kPosMismatch, VerdictReason::kDepMismatch}) {
    if (ToString(r) == name) return r;
  }
  throw ParseError("verdict", 0, "unknown reason \"" + std::string(name) + "\"");
}

SentenceSplitter::SentenceSplitter() : abbreviations_(DefaultAbbreviations()) {}

SentenceSplitter::SentenceSplitter(std::vector<std::string> abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

SentenceSplitter SentenceSplitter::FromFile(const std::filesystem::path& path) {
  const std::string content = ReadFile(path);
  std::vector<std::string> cleaned;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    const std::string_view line =
        Trim(std::string_view(content).substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    cleaned.emplace_back(line);
  }
  return SentenceSplitter(std::move(cleaned));
}

bool SentenceSplitter::IsAbbreviation(std::string_view word) const {
  return std::find(abbreviations_.begin(), abbreviations_.end(), word) !=
         abbreviations_.end();
}

std::vector<Span> SentenceSplitter::SplitSpans(std::string_view text) const {
  std::vector<Span> spans;
  auto push = [&](std::size_t begin, std::size_t end) {
    const std::string_view piece = Trim(text.substr(begin, end - begin));
    if (piece.empty()) return;
    const auto b = static_cast<std::size_t>(piece.data() - text.data());
    spans.push_back({b, b + piece.size()});
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (!IsSpaceByte(static_cast<unsigned char>(text[i + 1]))) continue;
    if (c == '.') {
      std::size_t word_begin = i;
      while (word_begin > start &&
             !IsSpaceByte(static_cast<unsigned char>(text[word_begin - 1]))) {
        --word_begin;
      }
      if (IsAbbreviation(text.substr(word_begin, i + 1 - word_begin))) continue;
    }
    push(start, i + 1);
    start = i + 1;
  }
  push(start, text.size());
  return spans;
}

std::vector<std::string> SentenceSplitter::Split(std::string_view text) const {
  std::vector<std::string> out;
  for (const Span& s : SplitSpans(text)) {
    out.emplace_back(text.substr(s.begin, s.end - s.begin));
  }
  return out;
}

std::vector<std::string> SentenceSplit(std::string_view text) {
  static const SentenceSplitter kDefault;
  return kDefault.Split(text);
}

bool TolerantTableComp(std::span<const std::string> original,
                       std::span<const std::string> mutant) {
  return TolerantCompare(static_cast<std::ptrdiff_t>(original.size()),
                         static_cast<std::ptrdiff_t>(mutant.size()),
                         [&](std::ptrdiff_t i, std::ptrdiff_t j) {
                           return original[static_cast<std::size_t>(i)] ==
                                  mutant[static_cast<std::size_t>(j)];
                         });
}

AnnotatedText AnnotateText(std::string_view text, const Annotator& annotator,
                           const SentenceSplitter& splitter) {
  AnnotatedText out;
  for (const Span& s : splitter.SplitSpans(text)) {
    out.sentences.push_back(
        Annotate(annotator, text.substr(s.begin, s.end - s.begin)));
  }
  return out;
}

InvariantVerdict CompareAnnotated(const AnnotatedText& original,
                                  const AnnotatedText& mutant) {
  if (original.sentences.size() != mutant.sentences.size()) {
    return InvariantVerdict::Fail(VerdictReason::kSentenceCountMismatch);
  }
  for (std::size_t i = 0; i < original.sentences.size(); ++i) {
    if (auto failure =
            CompareSentence(original.sentences[i], mutant.sentences[i], i)) {
      return *failure;
    }
  }
  return InvariantVerdict::Ok();
}

InvariantVerdict InvCheck(std::string_view original, std::string_view mutant,
                          const Annotator& annotator,
                          const SentenceSplitter& splitter) {
  const auto original_spans = splitter.SplitSpans(original);
  const auto mutant_spans = splitter.SplitSpans(mutant);
  if (original_spans.size() != mutant_spans.size()) {
    return InvariantVerdict::Fail(VerdictReason::kSentenceCountMismatch);
  }
  for (std::size_t i = 0; i < original_spans.size(); ++i) {
    const Span& os = original_spans[i];
    const Span& ms = mutant_spans[i];
    const auto o = Annotate(annotator, original.substr(os.begin, os.end - os.begin));
    const auto m = Annotate(annotator, mutant.substr(ms.begin, ms.end - ms.begin));
    if (auto failure = CompareSentence(o, m, i)) return *failure;
  }
  return InvariantVerdict::Ok();
}

InvariantVerdict InvCheck(const AnnotatedText& original, std::string_view mutant,
                          const Annotator& annotator,
                          const SentenceSplitter& splitter) {
  const auto mutant_spans = splitter.SplitSpans(mutant);
  if (original.sentences.size() != mutant_spans.size()) {
    return InvariantVerdict::Fail(VerdictReason::kSentenceCountMismatch);
  }
  for (std::size_t i = 0; i < mutant_spans.size(); ++i) {
    const Span& ms = mutant_spans[i];
    const auto m = Annotate(annotator, mutant.substr(ms.begin, ms.end - ms.begin));
    if (auto failure = CompareSentence(original.sentences[i], m, i)) {
      return *failure;
    }
  }
  return InvariantVerdict::Ok();
}

}  // namespace biasprobe
