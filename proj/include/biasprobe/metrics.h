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

// Aggregate measures over a stream of BiasRecords.

#ifndef BIASPROBE_METRICS_H_
#define BIASPROBE_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biasprobe/campaign.h"

namespace biasprobe {

// A ratio that is "undefined" rather than zero when its denominator is zero.
struct Rate {
  std::size_t numerator = 0;
  std::size_t denominator = 0;

  std::optional<double> value() const;
  // "%.6f" of the value, or "undefined".
  std::string Format() const;

  friend bool operator==(const Rate&, const Rate&) = default;
};

struct GroupCounts {
  std::size_t generated = 0;
  std::size_t valid = 0;
  std::size_t discarded = 0;
  // Valid mutants whose queries all succeeded; the error-rate denominator.
  std::size_t resolved = 0;
  std::size_t unresolved = 0;
  std::size_t errors = 0;
  std::size_t hidden = 0;
  // Errors whose hidden status could not be settled.
  std::size_t hidden_indeterminate = 0;
  std::size_t hidden_unresolved = 0;
  std::size_t audited = 0;
  // Audited discarded mutants whose outcome changed.
  std::size_t false_positives = 0;
  std::size_t flagged = 0;
  // Distinct origins with at least one resolved valid mutant / one bias.
  std::size_t origins_tested = 0;
  std::size_t origins_biased = 0;

  friend bool operator==(const GroupCounts&, const GroupCounts&) = default;
};

struct GroupMetrics {
  // Attribute name ("race") or pair in enumeration order ("race+gender");
  // "total" for the whole stream.
  std::string group;
  // "atomic", "intersectional", or "mixed" for a total over both kinds.
  std::string mode;
  GroupCounts counts;

  Rate bias_error_rate() const { return {counts.errors, counts.resolved}; }
  // Errors with an unresolved sibling query are left out of the denominator.
  Rate hidden_rate() const {
    return {counts.hidden, counts.errors - counts.hidden_unresolved};
  }
  Rate bias_inducing_original_fraction() const {
    return {counts.origins_biased, counts.origins_tested};
  }
  Rate discard_fraction() const { return {counts.discarded, counts.generated}; }

  friend bool operator==(const GroupMetrics&, const GroupMetrics&) = default;
};

// Origins, and (origin, word pair) units, biased under atomic mutation only,
// intersectional mutation only, or both. An intersectional bias credits each
// of its two pairs.
struct OverlapCounts {
  std::size_t only_atomic = 0;
  std::size_t only_intersectional = 0;
  std::size_t both = 0;

  friend bool operator==(const OverlapCounts&, const OverlapCounts&) = default;
};

struct MetricSet {
  GroupMetrics total;
  // Sorted by mode, then group name.
  std::vector<GroupMetrics> groups;
  OverlapCounts origin_overlap;
  OverlapCounts pair_overlap;

  friend bool operator==(const MetricSet&, const MetricSet&) = default;
};

// Group key of a record: its applied pairs' attributes joined by '+'.
std::string GroupKey(const BiasRecord& record);

MetricSet ComputeMetrics(std::span<const BiasRecord> records);

}  // namespace biasprobe

#endif  // BIASPROBE_METRICS_H_
