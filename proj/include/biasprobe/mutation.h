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

// Word-pair substitution mutants.
//
// An atomic mutant replaces every occurrence of one pair's source phrase. An
// intersectional mutant composes two atomic replacements drawn from two
// different attributes; it is emitted together with both of its atomic
// siblings so the oracle can tell hidden intersectional bias apart from bias
// that single-attribute testing would already catch.

#ifndef BIASPROBE_MUTATION_H_
#define BIASPROBE_MUTATION_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/corpus.h"
#include "biasprobe/dictionary.h"

namespace biasprobe {

enum class MatchMode {
  // Case-sensitive; the match may not be flanked by word bytes, so "man"
  // never matches inside "humanity".
  kWholeToken,
  // Plain substring containment, the same as str.replace semantics.
  kRawSubstring,
};

// Half-open byte interval [begin, end).
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Occurrence {
  WordPair pair;
  Span span;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Non-overlapping left-to-right matches of `phrase` in `text`.
std::vector<Span> FindSpans(std::string_view text, std::string_view phrase,
                            MatchMode mode = MatchMode::kWholeToken);

// All matches of every pair's source, sorted by span start (ties keep pair
// order). Matches of one pair never overlap each other; matches of different
// pairs may.
std::vector<Occurrence> FindOccurrences(std::string_view text,
                                        std::span<const WordPair> pairs,
                                        MatchMode mode = MatchMode::kWholeToken);

// Replaces every occurrence of pair.source with pair.target; all other bytes
// are copied unchanged. Throws PreconditionError when nothing matches.
std::string ApplyReplacement(std::string_view text, const WordPair& pair,
                             MatchMode mode = MatchMode::kWholeToken);

enum class MutantKind { kAtomic, kIntersectional };

struct Mutant {
  std::string origin_id;
  MutantKind kind = MutantKind::kAtomic;
  std::vector<WordPair> applied;  // 1 pair for atomic, 2 for intersectional
  std::string text;

  friend bool operator==(const Mutant&, const Mutant&) = default;
};

struct MutantTriple {
  Mutant atomic_1;
  Mutant atomic_2;
  Mutant intersectional;

  friend bool operator==(const MutantTriple&, const MutantTriple&) = default;
};

// One mutant per pair whose source occurs in `input`, in pair order.
std::vector<Mutant> GenerateAtomic(const OriginalInput& input,
                                   std::span<const WordPair> pairs,
                                   MatchMode mode = MatchMode::kWholeToken);

struct IntersectionalMutants {
  std::vector<MutantTriple> triples;
  // Combinations whose source spans overlap in the original.
  std::size_t skipped_overlapping = 0;
  // Combinations whose replacements interfere after composition (e.g. one
  // target introduces a new occurrence of the other source), so that the two
  // application orders disagree.
  std::size_t skipped_interacting = 0;
};

// For every (p1, p2), pairs_1 outer and pairs_2 inner, with both sources
// present: t1 = c[p1], t2 = c[p2], m = t1[p2]. Throws PreconditionError when
// the two lists do not belong to two distinct attributes.
IntersectionalMutants GenerateIntersectional(
    const OriginalInput& input, std::span<const WordPair> pairs_1,
    std::span<const WordPair> pairs_2, MatchMode mode = MatchMode::kWholeToken);

}  // namespace biasprobe

#endif  // BIASPROBE_MUTATION_H_
