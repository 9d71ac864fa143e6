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

// Dependency invariant: a mutant is kept only when it has as many sentences as
// its original and, sentence by sentence, its POS sequence and then its
// dependency-relation sequence match the original's up to the tolerance of
// TolerantTableComp.

#ifndef BIASPROBE_INVARIANT_H_
#define BIASPROBE_INVARIANT_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/annotation.h"
#include "biasprobe/mutation.h"

namespace biasprobe {

enum class VerdictReason {
  kOk,
  kSentenceCountMismatch,
  kPosMismatch,
  kDepMismatch,
};

std::string_view ToString(VerdictReason reason);
// Throws ParseError for an unknown name.
VerdictReason VerdictReasonFromString(std::string_view name);

struct InvariantVerdict {
  bool passed = true;
  VerdictReason reason = VerdictReason::kOk;
  // Set for kPosMismatch and kDepMismatch only.
  std::optional<std::size_t> failing_sentence_index;

  static InvariantVerdict Ok() { return {}; }
  static InvariantVerdict Fail(VerdictReason reason,
                               std::optional<std::size_t> sentence = {}) {
    return {false, reason, sentence};
  }

  friend bool operator==(const InvariantVerdict&,
                         const InvariantVerdict&) = default;
};

// Splits after '.', '!' or '?' when followed by whitespace, unless the
// whitespace-delimited word ending at a '.' is a listed abbreviation
// (case-sensitive). Text with no split point is a single sentence; blank
// text has none.
class SentenceSplitter {
 public:
  // Mr. Mrs. Ms. Dr. Prof. St. No. vs. etc. e.g. i.e. Jr. Sr.
  SentenceSplitter();
  explicit SentenceSplitter(std::vector<std::string> abbreviations);

  // One abbreviation per line; '#' comments. Replaces the default list.
  static SentenceSplitter FromFile(const std::filesystem::path& path);

  // Sentence extents; leading and trailing whitespace of each sentence is
  // left outside its span.
  std::vector<Span> SplitSpans(std::string_view text) const;
  std::vector<std::string> Split(std::string_view text) const;

  const std::vector<std::string>& abbreviations() const {
    return abbreviations_;
  }

 private:
  bool IsAbbreviation(std::string_view word) const;

  std::vector<std::string> abbreviations_;
};

// Default-splitter shorthand.
std::vector<std::string> SentenceSplit(std::string_view text);

// Tolerant sequence comparison. The error limit is the length difference of
// the two sequences; on a mismatch the longer sequence may skip one element,
// at most error-limit times in total. Unconsumed tails count as errors. Equal
// lengths therefore demand exact equality.
bool TolerantTableComp(std::span<const std::string> original,
                       std::span<const std::string> mutant);

// Annotations of every sentence of a text, reusable across many comparisons
// against the same original.
struct AnnotatedText {
  std::vector<SentenceAnnotation> sentences;
};

AnnotatedText AnnotateText(std::string_view text, const Annotator& annotator,
                           const SentenceSplitter& splitter);

// Sentence-count check, then POS and then DEPREL per sentence.
InvariantVerdict CompareAnnotated(const AnnotatedText& original,
                                  const AnnotatedText& mutant);

// Propagates AnnotationError from the annotator.
InvariantVerdict InvCheck(std::string_view original, std::string_view mutant,
                          const Annotator& annotator,
                          const SentenceSplitter& splitter = SentenceSplitter());

// Same, with the original already annotated; the mutant's sentences are
// annotated lazily so that an early failure skips the rest.
InvariantVerdict InvCheck(const AnnotatedText& original, std::string_view mutant,
                          const Annotator& annotator,
                          const SentenceSplitter& splitter);

}  // namespace biasprobe

#endif  // BIASPROBE_INVARIANT_H_
