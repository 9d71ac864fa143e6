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

#include "biasprobe/metrics.h"

#include <cstdio>
#include <map>
#include <set>
#include <tuple>
#include <utility>

namespace biasprobe {
namespace {

struct GroupAccumulator {
  std::string mode;
  GroupCounts counts;
  std::set<std::string> tested;
  std::set<std::string> biased;
};

void Accumulate(GroupAccumulator& acc, const BiasRecord& r) {
  GroupCounts& c = acc.counts;
  ++c.generated;
  if (r.verdict.passed) {
    ++c.valid;
    if (!r.unresolved) {
      ++c.resolved;
      acc.tested.insert(r.origin_id);
    }
  } else {
    ++c.discarded;
  }
  if (r.unresolved) ++c.unresolved;
  if (r.bias) {
    ++c.errors;
    acc.biased.insert(r.origin_id);
  }
  switch (r.hidden_status) {
    case HiddenStatus::kHidden:
      ++c.hidden;
      break;
    case HiddenStatus::kIndeterminate:
      ++c.hidden_indeterminate;
      break;
    case HiddenStatus::kUnresolved:
      ++c.hidden_unresolved;
      break;
    default:
      break;
  }
  if (r.audited) {
    ++c.audited;
    if (!r.unresolved && r.original_outcome && r.mutant_outcome &&
        !OutcomesEqual(*r.original_outcome, *r.mutant_outcome)) {
      ++c.false_positives;
    }
  }
  if (r.flagged_labels) ++c.flagged;
}

GroupMetrics Finish(std::string group, GroupAccumulator& acc) {
  acc.counts.origins_tested = acc.tested.size();
  acc.counts.origins_biased = acc.biased.size();
  return {std::move(group), acc.mode, acc.counts};
}

template <typename T>
OverlapCounts Overlap(const std::set<T>& atomic, const std::set<T>& inter) {
  OverlapCounts out;
  for (const T& x : atomic) {
    if (inter.count(x)) {
      ++out.both;
    } else {
      ++out.only_atomic;
    }
  }
  out.only_intersectional = inter.size() - out.both;
  return out;
}

}  // namespace

std::optional<double> Rate::value() const {
  if (denominator == 0) return std::nullopt;
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::string Rate::Format() const {
  const auto v = value();
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

std::string GroupKey(const BiasRecord& record) {
  std::string key;
  for (const WordPair& p : record.applied) {
    if (!key.empty()) key += '+';
    key += p.attribute.name();
  }
  return key;
}

MetricSet ComputeMetrics(std::span<const BiasRecord> records) {
  GroupAccumulator total;
  // Keyed by (mode, group) so rows come out sorted.
  std::map<std::pair<std::string, std::string>, GroupAccumulator> groups;
  using PairUnit = std::tuple<std::string, std::string, std::string, std::string>;
  std::set<std::string> atomic_origins, inter_origins;
  std::set<PairUnit> atomic_units, inter_units;
  std::set<std::string> modes;

  for (const BiasRecord& r : records) {
    const std::string mode(r.kind == MutantKind::kAtomic ? "atomic"
                                                         : "intersectional");
    modes.insert(mode);
    auto& acc = groups[{mode, GroupKey(r)}];
    acc.mode = mode;
    Accumulate(acc, r);
    Accumulate(total, r);
    if (!r.bias) continue;
    const bool atomic = r.kind == MutantKind::kAtomic;
    (atomic ? atomic_origins : inter_origins).insert(r.origin_id);
    for (const WordPair& p : r.applied) {
      (atomic ? atomic_units : inter_units)
          .emplace(r.origin_id, p.attribute.name(), p.source, p.target);
    }
  }

  MetricSet out;
  total.mode = modes.empty() ? "none" : modes.size() == 1 ? *modes.begin() : "mixed";
  out.total = Finish("total", total);
  for (auto& [key, acc] : groups) out.groups.push_back(Finish(key.second, acc));
  out.origin_overlap = Overlap(atomic_origins, inter_origins);
  out.pair_overlap = Overlap(atomic_units, inter_units);
  return out;
}

}  // namespace biasprobe
