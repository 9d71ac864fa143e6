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

#include "biasprobe/campaign.h"

#include <atomic>
#include <condition_variable>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "biasprobe/errors.h"

namespace biasprobe {
namespace {

// Outcome of one model query, or the error that prevented it.
struct Answer {
  std::optional<Outcome> outcome;
  std::string error;
};

// Per-original state. Queries are memoized by text so the original and each
// atomic sibling reach the model at most once per original.
class OriginalRun {
 public:
  OriginalRun(const OriginalInput& input, const CampaignSpec& spec,
              const CampaignContext& ctx)
      : input_(input),
        spec_(spec),
        ctx_(ctx),
        annotated_(AnnotateText(input.text, ctx.annotator, ctx.splitter)) {}

  InvariantVerdict Check(const std::string& text) {
    auto it = verdicts_.find(text);
    if (it != verdicts_.end()) return it->second;
    auto verdict = InvCheck(annotated_, text, ctx_.annotator, ctx_.splitter);
    verdicts_.emplace(text, verdict);
    return verdict;
  }

  const Answer& Ask(const std::string& text) {
    auto it = answers_.find(text);
    if (it != answers_.end()) return it->second;
    Answer answer;
    try {
      const Prompt prompt = BuildPrompt(
          ctx_.prompt_template, TruncateForModel(text, spec_.token_budget));
      answer.outcome =
          NormalizeOutcome(ctx_.client.Query(prompt), ctx_.prompt_template);
    } catch (const QueryError& e) {
      answer.error = e.what();
    }
    return answers_.emplace(text, std::move(answer)).first->second;
  }

  // Queries the original and the mutant, filling outcome and bias fields.
  // Returns false when either query failed.
  bool Judge(BiasRecord& rec) {
    const Answer& original = Ask(input_.text);
    if (!original.outcome) {
      MarkUnresolved(rec, original.error);
      return false;
    }
    rec.original_outcome = original.outcome;
    const Answer& mutant = Ask(rec.mutant_text);
    if (!mutant.outcome) {
      MarkUnresolved(rec, mutant.error);
      return false;
    }
    rec.mutant_outcome = mutant.outcome;
    rec.bias = rec.verdict.passed &&
               !OutcomesEqual(*rec.original_outcome, *rec.mutant_outcome);
    return true;
  }

  BiasRecord NewRecord(const Mutant& m) {
    BiasRecord rec;
    rec.origin_id = input_.id;
    rec.kind = m.kind;
    rec.applied = m.applied;
    rec.mutant_text = m.text;
    rec.verdict = Check(m.text);
    return rec;
  }

  bool ShouldQuery(const BiasRecord& rec) const {
    return rec.verdict.passed || spec_.audit_discarded;
  }

 private:
  static void MarkUnresolved(BiasRecord& rec, const std::string& error) {
    rec.unresolved = true;
    rec.query_error = error;
  }

  const OriginalInput& input_;
  const CampaignSpec& spec_;
  const CampaignContext& ctx_;
  AnnotatedText annotated_;
  std::map<std::string, InvariantVerdict> verdicts_;
  std::map<std::string, Answer> answers_;
};

bool AnyFlagged(const BiasRecord& rec) {
  for (const auto* o : {&rec.original_outcome, &rec.mutant_outcome,
                        &rec.atomic_1_outcome, &rec.atomic_2_outcome}) {
    if (o->has_value() && !(*o)->flagged.empty()) return true;
  }
  return false;
}

void ClassifyHidden(OriginalRun& run, const MutantTriple& triple,
                    BiasRecord& rec) {
  rec.atomic_1_verdict = run.Check(triple.atomic_1.text);
  rec.atomic_2_verdict = run.Check(triple.atomic_2.text);
  if (!rec.atomic_1_verdict->passed || !rec.atomic_2_verdict->passed) {
    rec.hidden_status = HiddenStatus::kIndeterminate;
    return;
  }
  const Answer& a1 = run.Ask(triple.atomic_1.text);
  const Answer& a2 = run.Ask(triple.atomic_2.text);
  rec.atomic_1_outcome = a1.outcome;
  rec.atomic_2_outcome = a2.outcome;
  if (!a1.outcome || !a2.outcome) {
    rec.hidden_status = HiddenStatus::kUnresolved;
    rec.query_error = a1.outcome ? a2.error : a1.error;
    return;
  }
  const bool hidden = DetectHidden(*rec.original_outcome, *a1.outcome,
                                   *a2.outcome, *rec.mutant_outcome);
  rec.hidden = hidden;
  rec.hidden_status = hidden ? HiddenStatus::kHidden : HiddenStatus::kNotHidden;
}

struct OriginalResult {
  std::vector<BiasRecord> records;
  std::size_t skipped_overlapping = 0;
  std::size_t skipped_interacting = 0;
};

OriginalResult ProcessOriginal(const OriginalInput& input,
                               const BiasDictionary& dict,
                               const CampaignSpec& spec,
                               const CampaignContext& ctx) {
  OriginalResult result;
  if (spec.mode == CampaignMode::kAtomic) {
    auto mutants =
        GenerateAtomic(input, dict.PairsFor(spec.attributes[0]), spec.match);
    if (mutants.empty()) return result;
    OriginalRun run(input, spec, ctx);
    for (const Mutant& m : mutants) {
      BiasRecord rec = run.NewRecord(m);
      if (run.ShouldQuery(rec)) {
        rec.audited = !rec.verdict.passed;
        run.Judge(rec);
      }
      rec.flagged_labels = AnyFlagged(rec);
      result.records.push_back(std::move(rec));
    }
    return result;
  }

  auto generated = GenerateIntersectional(
      input, dict.PairsFor(spec.attributes[0]),
      dict.PairsFor(spec.attributes[1]), spec.match);
  result.skipped_overlapping = generated.skipped_overlapping;
  result.skipped_interacting = generated.skipped_interacting;
  if (generated.triples.empty()) return result;
  OriginalRun run(input, spec, ctx);
  for (const MutantTriple& triple : generated.triples) {
    BiasRecord rec = run.NewRecord(triple.intersectional);
    if (run.ShouldQuery(rec)) {
      rec.audited = !rec.verdict.passed;
      if (run.Judge(rec) && rec.bias) ClassifyHidden(run, triple, rec);
    }
    rec.flagged_labels = AnyFlagged(rec);
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace

std::string_view ToString(CampaignMode mode) {
  return mode == CampaignMode::kAtomic ? "atomic" : "intersectional";
}

CampaignMode CampaignModeFromString(std::string_view name) {
  if (name == "atomic") return CampaignMode::kAtomic;
  if (name == "intersectional") return CampaignMode::kIntersectional;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected atomic or intersectional)");
}

std::string_view ToString(HiddenStatus status) {
  switch (status) {
    case HiddenStatus::kNotApplicable:
      return "not_applicable";
    case HiddenStatus::kHidden:
      return "hidden";
    case HiddenStatus::kNotHidden:
      return "not_hidden";
    case HiddenStatus::kIndeterminate:
      return "indeterminate";
    case HiddenStatus::kUnresolved:
      return "unresolved";
  }
  return "not_applicable";
}

HiddenStatus HiddenStatusFromString(std::string_view name) {
  for (HiddenStatus s :
       {HiddenStatus::kNotApplicable, HiddenStatus::kHidden,
        HiddenStatus::kNotHidden, HiddenStatus::kIndeterminate,
        HiddenStatus::kUnresolved}) {
    if (ToString(s) == name) return s;
  }
  throw ParseError("record", 0,
                   "unknown hidden status \"" + std::string(name) + "\"");
}

bool OutcomesEqual(const Outcome& a, const Outcome& b) {
  return a.labels == b.labels;
}

bool DetectHidden(const Outcome& original, const Outcome& atomic_1,
                  const Outcome& atomic_2, const Outcome& intersectional) {
  return OutcomesEqual(atomic_1, original) && OutcomesEqual(atomic_2, original) &&
         !OutcomesEqual(intersectional, original);
}

void ValidateCampaignSpec(const CampaignSpec& spec, const BiasDictionary& dict) {
  const std::size_t want = spec.mode == CampaignMode::kAtomic ? 1 : 2;
  if (spec.attributes.size() != want) {
    throw ConfigError(std::string(ToString(spec.mode)) + " mode needs exactly " +
                      std::to_string(want) + " attribute(s), got " +
                      std::to_string(spec.attributes.size()));
  }
  if (want == 2 && spec.attributes[0] == spec.attributes[1]) {
    throw ConfigError("intersectional mode needs two distinct attributes, got '" +
                      spec.attributes[0].name() + "' twice");
  }
  for (const auto& attr : spec.attributes) {
    try {
      dict.PairsFor(attr);
    } catch (const LookupError& e) {
      throw ConfigError(e.what());
    }
  }
  if (spec.token_budget == 0) throw ConfigError("token budget must be positive");
}

CampaignResult RunCampaign(const Corpus& corpus, const BiasDictionary& dict,
                           const CampaignSpec& spec, const CampaignContext& ctx,
                           const RecordSink& sink) {
  ValidateCampaignSpec(spec, dict);
  if (ctx.client.backend().temperature() != 0.0) {
    throw ConfigError("campaign endpoints must run at temperature 0");
  }

  CampaignResult result;
  result.stats.originals = corpus.inputs.size();
  auto merge = [&](OriginalResult&& r) {
    result.stats.skipped_overlapping += r.skipped_overlapping;
    result.stats.skipped_interacting += r.skipped_interacting;
    for (auto& rec : r.records) {
      if (sink) sink(rec);
      result.records.push_back(std::move(rec));
    }
  };

  const std::size_t n = corpus.inputs.size();
  const std::size_t workers = std::min(std::max<std::size_t>(1, spec.workers), n);
  if (workers <= 1) {
    for (const auto& input : corpus.inputs) {
      merge(ProcessOriginal(input, dict, spec, ctx));
    }
    return result;
  }

  std::vector<std::optional<OriginalResult>> slots(n);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        auto r = ProcessOriginal(corpus.inputs[i], dict, spec, ctx);
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
      ready.notify_all();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);

  std::exception_ptr error;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<OriginalResult> r;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (!slots[i]) {
        error = failure;
        break;
      }
      r = std::move(slots[i]);
      slots[i].reset();
    }
    merge(std::move(*r));
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return result;
}

}  // namespace biasprobe
