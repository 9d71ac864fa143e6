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

#include <gtest/gtest.h>

namespace biasprobe {
namespace {

const SensitiveAttribute kRace("race");
const SensitiveAttribute kGender("gender");
const WordPair kP1{"British", "Pakistani", kRace};
const WordPair kP2{"people", "trans women", kGender};

Outcome Labels(std::string label) { return Outcome{{label}, label, {}}; }

BiasRecord Atomic(std::string origin, WordPair pair, bool valid, bool bias) {
  BiasRecord r;
  r.origin_id = std::move(origin);
  r.kind = MutantKind::kAtomic;
  r.applied = {std::move(pair)};
  r.verdict.passed = valid;
  if (valid) {
    r.original_outcome = Labels("a");
    r.mutant_outcome = Labels(bias ? "b" : "a");
    r.bias = bias;
  }
  return r;
}

BiasRecord Inter(std::string origin, bool valid, bool bias, HiddenStatus status) {
  BiasRecord r = Atomic(std::move(origin), kP1, valid, bias);
  r.kind = MutantKind::kIntersectional;
  r.applied = {kP1, kP2};
  r.hidden_status = status;
  if (status == HiddenStatus::kHidden) r.hidden = true;
  if (status == HiddenStatus::kNotHidden) r.hidden = false;
  return r;
}

TEST(RateTest, FormatsSixDecimalsOrUndefined) {
  EXPECT_EQ((Rate{1, 3}).Format(), "0.333333");
  EXPECT_EQ((Rate{0, 5}).Format(), "0.000000");
  EXPECT_EQ((Rate{2, 0}).Format(), "undefined");
  EXPECT_FALSE((Rate{0, 0}).value().has_value());
  EXPECT_DOUBLE_EQ(*(Rate{1, 4}).value(), 0.25);
}

TEST(MetricsTest, CountsAndRates) {
  std::vector<BiasRecord> records = {
      Inter("o1", true, true, HiddenStatus::kHidden),
      Inter("o1", true, true, HiddenStatus::kNotHidden),
      Inter("o2", true, true, HiddenStatus::kIndeterminate),
      Inter("o2", true, true, HiddenStatus::kUnresolved),
      Inter("o3", true, false, HiddenStatus::kNotApplicable),
      Inter("o3", false, false, HiddenStatus::kNotApplicable),
  };
  BiasRecord unresolved = Inter("o4", true, false, HiddenStatus::kNotApplicable);
  unresolved.unresolved = true;
  unresolved.mutant_outcome.reset();
  records.push_back(unresolved);

  const auto m = ComputeMetrics(records);
  const GroupCounts& c = m.total.counts;
  EXPECT_EQ(m.total.group, "total");
  EXPECT_EQ(m.total.mode, "intersectional");
  EXPECT_EQ(c.generated, 7u);
  EXPECT_EQ(c.valid, 6u);
  EXPECT_EQ(c.discarded, 1u);
  EXPECT_EQ(c.resolved, 5u);
  EXPECT_EQ(c.unresolved, 1u);
  EXPECT_EQ(c.errors, 4u);
  EXPECT_EQ(c.hidden, 1u);
  EXPECT_EQ(c.hidden_indeterminate, 1u);
  EXPECT_EQ(c.hidden_unresolved, 1u);
  EXPECT_EQ(c.origins_tested, 3u);
  EXPECT_EQ(c.origins_biased, 2u);
  EXPECT_EQ(m.total.bias_error_rate(), (Rate{4, 5}));
  EXPECT_EQ(m.total.hidden_rate(), (Rate{1, 3}));
  EXPECT_EQ(m.total.bias_inducing_original_fraction(), (Rate{2, 3}));
  EXPECT_EQ(m.total.discard_fraction(), (Rate{1, 7}));
  ASSERT_EQ(m.groups.size(), 1u);
  EXPECT_EQ(m.groups[0].group, "race+gender");
  EXPECT_EQ(m.groups[0].counts, c);
}

TEST(MetricsTest, AuditedFalsePositives) {
  BiasRecord fp = Atomic("o1", kP1, false, false);
  fp.audited = true;
  fp.original_outcome = Labels("a");
  fp.mutant_outcome = Labels("b");
  BiasRecord same = fp;
  same.mutant_outcome = Labels("a");
  const std::vector<BiasRecord> records = {fp, same};
  const auto m = ComputeMetrics(records);
  EXPECT_EQ(m.total.counts.audited, 2u);
  EXPECT_EQ(m.total.counts.false_positives, 1u);
  EXPECT_EQ(m.total.counts.errors, 0u);
  EXPECT_EQ(m.total.bias_error_rate().Format(), "undefined");
}

TEST(MetricsTest, GroupsAndOverlap) {
  const std::vector<BiasRecord> records = {
      Atomic("o1", kP1, true, true),
      Atomic("o2", kP2, true, true),
      Atomic("o3", kP2, true, false),
      Inter("o1", true, true, HiddenStatus::kNotHidden),
      Inter("o3", true, true, HiddenStatus::kHidden),
  };
  const auto m = ComputeMetrics(records);
  EXPECT_EQ(m.total.mode, "mixed");
  ASSERT_EQ(m.groups.size(), 3u);
  EXPECT_EQ(m.groups[0].mode, "atomic");
  EXPECT_EQ(m.groups[0].group, "gender");
  EXPECT_EQ(m.groups[1].group, "race");
  EXPECT_EQ(m.groups[2].mode, "intersectional");
  EXPECT_EQ(m.origin_overlap, (OverlapCounts{1, 1, 1}));
  // Units: (o1,P1) both; (o1,P2) inter only; (o2,P2) atomic only;
  // (o3,P1) and (o3,P2) inter only.
  EXPECT_EQ(m.pair_overlap, (OverlapCounts{1, 3, 1}));
}

TEST(MetricsTest, EmptyStream) {
  const auto m = ComputeMetrics({});
  EXPECT_EQ(m.total.counts, GroupCounts{});
  EXPECT_TRUE(m.groups.empty());
  EXPECT_EQ(m.total.hidden_rate().Format(), "undefined");
  EXPECT_EQ(m.total.discard_fraction().Format(), "undefined");
}

TEST(MetricsTest, GroupKeyFollowsEnumerationOrder) {
  BiasRecord r = Inter("o", true, false, HiddenStatus::kNotApplicable);
  EXPECT_EQ(GroupKey(r), "race+gender");
  std::swap(r.applied[0], r.applied[1]);
  EXPECT_EQ(GroupKey(r), "gender+race");
}

}  // namespace
}  // namespace biasprobe
