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

// Per-sentence part-of-speech and dependency-relation annotation.
//
// The invariant checker only compares tag sequences for equality, so any
// annotator works as long as the original and the mutant go through the same
// one. Two are provided:
//
//   LexiconAnnotator  word -> tag tables with suffix heuristics; needs no
//                     model and is fast enough for large campaigns.
//   ConlluAnnotator   serves parser output prepared offline in CoNLL-U,
//                     keyed by the exact sentence string.

#ifndef BIASPROBE_ANNOTATION_H_
#define BIASPROBE_ANNOTATION_H_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace biasprobe {

struct TokenAnnotation {
  std::string token;
  std::string pos;  // e.g. "PRP$", "NN"
  std::string dep;  // e.g. "poss", "nsubj"

  friend bool operator==(const TokenAnnotation&, const TokenAnnotation&) = default;
};

struct SentenceAnnotation {
  std::vector<TokenAnnotation> tokens;

  std::vector<std::string> PosSequence() const;
  std::vector<std::string> DepSequence() const;

  friend bool operator==(const SentenceAnnotation&,
                         const SentenceAnnotation&) = default;
};

// Implementations must be deterministic and safe to call concurrently.
class Annotator {
 public:
  virtual ~Annotator() = default;

  virtual std::string name() const = 0;
  virtual std::string tagset() const = 0;

  // Throws AnnotationError when no annotation can be produced.
  virtual SentenceAnnotation Annotate(std::string_view sentence) const = 0;
};

// Throws PreconditionError for a blank sentence, then defers to `annotator`.
SentenceAnnotation Annotate(const Annotator& annotator,
                            std::string_view sentence);

// Unknown words get POS "NN" unless a suffix rule applies ("-ly" RB, "-ing"
// VBG, "-ed" VBD); dependency labels come from a function-word table and
// default to "dep". Punctuation is tagged with Penn punctuation tags and
// "punct".
class LexiconAnnotator : public Annotator {
 public:
  // Empty tables: every word falls through to the suffix rules.
  LexiconAnnotator() = default;

  // Built-in English function-word and common-word lexicon.
  static LexiconAnnotator Builtin();

  // Lowercased lookups; later entries override earlier ones.
  void SetPos(std::string_view word, std::string pos);
  void SetDep(std::string_view word, std::string dep);

  // Merges a TSV lexicon (word<TAB>pos[<TAB>dep], '#' comments).
  void LoadLexicon(const std::filesystem::path& path);

  std::string name() const override { return "lexicon"; }
  std::string tagset() const override { return "penn/lexicon-dep"; }
  SentenceAnnotation Annotate(std::string_view sentence) const override;

  std::string TagWord(std::string_view word) const;
  std::string DepWord(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::string> pos_;
  std::unordered_map<std::string, std::string> dep_;
};

class ConlluAnnotator : public Annotator {
 public:
  explicit ConlluAnnotator(
      std::unordered_map<std::string, SentenceAnnotation> sentences)
      : sentences_(std::move(sentences)) {}

  std::string name() const override { return "conllu"; }
  std::string tagset() const override { return "xpos|upos/deprel"; }
  SentenceAnnotation Annotate(std::string_view sentence) const override;

  std::size_t size() const { return sentences_.size(); }

 private:
  std::unordered_map<std::string, SentenceAnnotation> sentences_;
};

// CoNLL-U subset: ID (col 1, integer), FORM (2), UPOS (4), XPOS (5, preferred
// unless "_"), DEPREL (8). Blank lines end sentences; "# text = ..." binds a
// sentence to its exact string (space-joined FORMs otherwise). Multiword
// ranges ("3-4") and empty nodes ("3.1") are skipped. Throws ParseError with
// the line number on malformed input.
std::unique_ptr<ConlluAnnotator> LoadConlluAnnotations(
    const std::filesystem::path& path);
std::unique_ptr<ConlluAnnotator> ParseConllu(std::string_view content,
                                             const std::string& origin);

}  // namespace biasprobe

#endif  // BIASPROBE_ANNOTATION_H_
