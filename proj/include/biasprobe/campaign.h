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

// End-to-end bias campaign.
//
// For every original text c the runner enumerates mutants, discards those that
// break the dependency invariant, and compares the model's outcome on each
// remaining mutant with its outcome on c (queried once per original). A
// changed outcome is a bias. In intersectional mode a bias is hidden when both
// single-attribute siblings are valid and leave the outcome unchanged.

#ifndef BIASPROBE_CAMPAIGN_H_
#define BIASPROBE_CAMPAIGN_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/annotation.h"
#include "biasprobe/corpus.h"
#include "biasprobe/dictionary.h"
#include "biasprobe/invariant.h"
#include "biasprobe/model_client.h"
#include "biasprobe/mutation.h"
#include "biasprobe/prompt.h"

namespace biasprobe {

inline constexpr int kRecordSchemaVersion = 1;

enum class CampaignMode { kAtomic, kIntersectional };

std::string_view ToString(CampaignMode mode);
// Throws ConfigError.
CampaignMode CampaignModeFromString(std::string_view name);

enum class HiddenStatus {
  kNotApplicable,  // atomic record, discarded mutant, or no bias
  kHidden,
  kNotHidden,      // an atomic sibling already changes the outcome
  kIndeterminate,  // an atomic sibling failed the invariant check
  kUnresolved,     // a sibling query failed
};

std::string_view ToString(HiddenStatus status);
HiddenStatus HiddenStatusFromString(std::string_view name);

struct BiasRecord {
  int schema_version = kRecordSchemaVersion;
  std::string origin_id;
  MutantKind kind = MutantKind::kAtomic;
  std::vector<WordPair> applied;
  std::string mutant_text;
  InvariantVerdict verdict;

  // Set when the model was consulted for this record.
  std::optional<Outcome> original_outcome;
  std::optional<Outcome> mutant_outcome;

  // Outcome changed and the mutant passed the invariant.
  bool bias = false;
  // Present only when both atomic siblings passed the invariant check.
  std::optional<bool> hidden;
  HiddenStatus hidden_status = HiddenStatus::kNotApplicable;

  // Intersectional records that turned out biased carry their siblings.
  std::optional<InvariantVerdict> atomic_1_verdict;
  std::optional<InvariantVerdict> atomic_2_verdict;
  std::optional<Outcome> atomic_1_outcome;
  std::optional<Outcome> atomic_2_outcome;

  // A query this record needed failed; excluded from rate denominators.
  bool unresolved = false;
  std::string query_error;
  // Discarded mutant queried anyway to count false positives.
  bool audited = false;
  // Some outcome held labels outside the template's universe.
  bool flagged_labels = false;

  friend bool operator==(const BiasRecord&, const BiasRecord&) = default;
};

// Label-set equality.
bool OutcomesEqual(const Outcome& a, const Outcome& b);

// Both atomic siblings keep the original outcome while the intersectional
// mutant changes it.
bool DetectHidden(const Outcome& original, const Outcome& atomic_1,
                  const Outcome& atomic_2, const Outcome& intersectional);

struct CampaignSpec {
  CampaignMode mode = CampaignMode::kIntersectional;
  // One attribute for atomic mode, two distinct ones for intersectional.
  std::vector<SensitiveAttribute> attributes;
  MatchMode match = MatchMode::kWholeToken;
  bool audit_discarded = false;
  // Whitespace tokens of each document sent to the model.
  std::size_t token_budget = 512;
  // Originals processed concurrently.
  std::size_t workers = 1;
};

// Throws ConfigError when the spec does not fit the dictionary.
void ValidateCampaignSpec(const CampaignSpec& spec, const BiasDictionary& dict);

struct CampaignStats {
  std::size_t originals = 0;
  std::size_t skipped_overlapping = 0;
  std::size_t skipped_interacting = 0;
};

struct CampaignResult {
  std::vector<BiasRecord> records;
  CampaignStats stats;
};

struct CampaignContext {
  const Annotator& annotator;
  const SentenceSplitter& splitter;
  ModelClient& client;
  const PromptTemplate& prompt_template;
};

using RecordSink = std::function<void(const BiasRecord&)>;

// Records come out in corpus order, then enumeration order, regardless of
// the worker count; `sink` (optional) sees each record as soon as every
// earlier one has been emitted. Throws ConfigError for an invalid spec and
// lets AnnotationError through.
CampaignResult RunCampaign(const Corpus& corpus, const BiasDictionary& dict,
                           const CampaignSpec& spec, const CampaignContext& ctx,
                           const RecordSink& sink = nullptr);

}  // namespace biasprobe

#endif  // BIASPROBE_CAMPAIGN_H_
