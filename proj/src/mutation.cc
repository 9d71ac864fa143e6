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

#include "biasprobe/mutation.h"

#include <algorithm>
#include <optional>

#include "biasprobe/errors.h"
#include "biasprobe/text.h"

namespace biasprobe {
namespace {

bool BoundaryAt(std::string_view text, std::size_t begin, std::size_t end) {
  if (begin > 0 && IsWordByte(static_cast<unsigned char>(text[begin - 1])))
    return false;
  if (end < text.size() && IsWordByte(static_cast<unsigned char>(text[end])))
    return false;
  return true;
}

std::string Splice(std::string_view text, const std::vector<Span>& spans,
                   std::string_view replacement) {
  std::string out;
  out.reserve(text.size() + spans.size() * replacement.size());
  std::size_t cursor = 0;
  for (const Span& s : spans) {
    out.append(text.substr(cursor, s.begin - cursor));
    out.append(replacement);
    cursor = s.end;
  }
  out.append(text.substr(cursor));
  return out;
}

// Both span lists are sorted and internally disjoint.
bool AnyOverlap(const std::vector<Span>& a, const std::vector<Span>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].end <= b[j].begin) {
      ++i;
    } else if (b[j].end <= a[i].begin) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

void CheckSingleAttribute(std::span<const WordPair> pairs,
                          std::optional<SensitiveAttribute>& attribute) {
  for (const WordPair& p : pairs) {
    if (!attribute) {
      attribute = p.attribute;
    } else if (*attribute != p.attribute) {
      throw PreconditionError("pair list mixes attributes '" +
                              attribute->name() + "' and '" +
                              p.attribute.name() + "'");
    }
  }
}

struct Prepared {
  const WordPair* pair;
  std::vector<Span> spans;
  std::string mutated;
};

std::vector<Prepared> PrepareAtomic(std::string_view text,
                                    std::span<const WordPair> pairs,
                                    MatchMode mode) {
  std::vector<Prepared> out;
  for (const WordPair& p : pairs) {
    auto spans = FindSpans(text, p.source, mode);
    if (spans.empty()) continue;
    std::string mutated = Splice(text, spans, p.target);
    if (mutated == text) continue;
    out.push_back({&p, std::move(spans), std::move(mutated)});
  }
  return out;
}

}  // namespace

std::vector<Span> FindSpans(std::string_view text, std::string_view phrase,
                            MatchMode mode) {
  std::vector<Span> spans;
  if (phrase.empty()) return spans;
  std::size_t from = 0;
  while (from + phrase.size() <= text.size()) {
    const std::size_t at = text.find(phrase, from);
    if (at == std::string_view::npos) break;
    const std::size_t end = at + phrase.size();
    if (mode == MatchMode::kRawSubstring || BoundaryAt(text, at, end)) {
      spans.push_back({at, end});
      from = end;
    } else {
      from = at + 1;
    }
  }
  return spans;
}

std::vector<Occurrence> FindOccurrences(std::string_view text,
                                        std::span<const WordPair> pairs,
                                        MatchMode mode) {
  std::vector<Occurrence> out;
  for (const WordPair& p : pairs) {
    for (const Span& s : FindSpans(text, p.source, mode)) {
      out.push_back({p, s});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Occurrence& a, const Occurrence& b) {
                     return a.span.begin < b.span.begin;
                   });
  return out;
}

std::string ApplyReplacement(std::string_view text, const WordPair& pair,
                             MatchMode mode) {
  const auto spans = FindSpans(text, pair.source, mode);
  if (spans.empty()) {
    throw PreconditionError("source \"" + pair.source +
                            "\" does not occur in the text");
  }
  return Splice(text, spans, pair.target);
}

std::vector<Mutant> GenerateAtomic(const OriginalInput& input,
                                   std::span<const WordPair> pairs,
                                   MatchMode mode) {
  std::vector<Mutant> out;
  for (auto& prepared : PrepareAtomic(input.text, pairs, mode)) {
    out.push_back({input.id, MutantKind::kAtomic, {*prepared.pair},
                   std::move(prepared.mutated)});
  }
  return out;
}

IntersectionalMutants GenerateIntersectional(const OriginalInput& input,
                                             std::span<const WordPair> pairs_1,
                                             std::span<const WordPair> pairs_2,
                                             MatchMode mode) {
  std::optional<SensitiveAttribute> attr_1;
  std::optional<SensitiveAttribute> attr_2;
  CheckSingleAttribute(pairs_1, attr_1);
  CheckSingleAttribute(pairs_2, attr_2);
  if (attr_1 && attr_2 && *attr_1 == *attr_2) {
    throw PreconditionError("intersectional mutation needs two distinct "
                            "attributes, got '" + attr_1->name() + "' twice");
  }

  IntersectionalMutants result;
  const auto first = PrepareAtomic(input.text, pairs_1, mode);
  if (first.empty()) return result;
  const auto second = PrepareAtomic(input.text, pairs_2, mode);

  for (const Prepared& a : first) {
    for (const Prepared& b : second) {
      if (AnyOverlap(a.spans, b.spans)) {
        ++result.skipped_overlapping;
        continue;
      }
      const auto in_t1 = FindSpans(a.mutated, b.pair->source, mode);
      const auto in_t2 = FindSpans(b.mutated, a.pair->source, mode);
      if (in_t1.empty() || in_t2.empty()) {
        ++result.skipped_interacting;
        continue;
      }
      std::string m = Splice(a.mutated, in_t1, b.pair->target);
      if (m != Splice(b.mutated, in_t2, a.pair->target) || m == input.text) {
        ++result.skipped_interacting;
        continue;
      }
      result.triples.push_back(
          {{input.id, MutantKind::kAtomic, {*a.pair}, a.mutated},
           {input.id, MutantKind::kAtomic, {*b.pair}, b.mutated},
           {input.id, MutantKind::kIntersectional, {*a.pair, *b.pair},
            std::move(m)}});
    }
  }
  return result;
}

}  // namespace biasprobe
