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

// Compares the engine against the literal reference implementation on
// generated fixtures.

#include <gtest/gtest.h>

#include "biasprobe/campaign.h"
#include "oracle/desk.h"
#include "oracle/reference.h"

namespace biasprobe {
namespace {

class OracleEquivalence : public ::testing::TestWithParam<unsigned> {};

TEST_P(OracleEquivalence, IntersectionalAndAtomicRecordsMatch) {
  const auto corpus = desk::MakeCorpus(150, GetParam());
  const auto dict = desk::MakeDictionary();
  const auto mock = desk::MakeMock();
  LexiconAnnotator lexicon = LexiconAnnotator::Builtin();
  SentenceSplitter splitter;
  PromptTemplate tmpl = PassthroughTemplate();
  const SensitiveAttribute race("race"), gender("gender");

  auto run = [&](CampaignSpec spec) {
    ModelClient client(mock);
    return RunCampaign(corpus, dict, spec, {lexicon, splitter, client, tmpl}).records;
  };
  auto query = desk::DirectQuery(*mock);
  const auto inputs = desk::ToInputs(corpus);

  CampaignSpec spec;
  spec.attributes = {race, gender};
  const auto expected = reference::Intersectional(
      inputs, desk::ToPairs(dict.PairsFor(race)),
      desk::ToPairs(dict.PairsFor(gender)), lexicon, query);
  const auto got = run(spec);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(reference::Describe(desk::ToExpected(got[i])),
              reference::Describe(expected[i]));
  }

  spec.mode = CampaignMode::kAtomic;
  spec.attributes = {gender};
  const auto atomic_expected = reference::Atomic(
      inputs, desk::ToPairs(dict.PairsFor(gender)), lexicon, query);
  const auto atomic_got = run(spec);
  ASSERT_EQ(atomic_got.size(), atomic_expected.size());
  for (std::size_t i = 0; i < atomic_got.size(); ++i) {
    EXPECT_EQ(reference::Describe(desk::ToExpected(atomic_got[i])),
              reference::Describe(atomic_expected[i]));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleEquivalence, ::testing::Values(1u, 2u, 5u, 13u));

}  // namespace
}  // namespace biasprobe
