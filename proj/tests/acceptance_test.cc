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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biasprobe/annotation.h"
#include "biasprobe/campaign.h"
#include "biasprobe/cli.h"
#include "biasprobe/invariant.h"
#include "biasprobe/io.h"
#include "biasprobe/metrics.h"
#include "biasprobe/model_client.h"
#include "biasprobe/mutation.h"
#include "biasprobe/report.h"
#include "oracle/desk.h"
#include "oracle/reference.h"

namespace bp = biasprobe;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void Report(const std::string& name, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << "  " << name;
  if (!out.detail.empty()) std::cout << "  (" << out.detail << ")";
  std::cout << std::endl;
}

fs::path TempDir() {
  fs::path dir = fs::temp_directory_path() /
                 ("biasprobe_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bp::CampaignResult RunDesk(const bp::Corpus& corpus,
                           const bp::BiasDictionary& dict,
                           const bp::CampaignSpec& spec,
                           std::shared_ptr<const bp::ModelBackend> backend,
                           bp::ClientOptions options = {}) {
  static const bp::LexiconAnnotator annotator = bp::LexiconAnnotator::Builtin();
  static const bp::SentenceSplitter splitter;
  static const bp::PromptTemplate tmpl = bp::PassthroughTemplate();
  bp::ModelClient client(std::move(backend), options);
  const bp::CampaignContext ctx{annotator, splitter, client, tmpl};
  return bp::RunCampaign(corpus, dict, spec, ctx);
}

Outcome ActorActressInvariant() {
  Outcome out;
  const auto start = Clock::now();
  const bp::LexiconAnnotator annotator = bp::LexiconAnnotator::Builtin();
  const std::string a = "The actor gave his best performance in this film.";
  const std::string b = "The actress gave her best performance in this film.";
  const std::string c = "The actor gave him best performance in this film.";
  const auto vb = bp::InvCheck(a, b, annotator);
  const auto vc = bp::InvCheck(a, c, annotator);
  out.Require(vb.passed, "mutant (b) rejected");
  out.Require(!vc.passed && vc.reason == bp::VerdictReason::kPosMismatch,
              "mutant (c) not rejected with pos_mismatch, got " +
                  std::string(bp::ToString(vc.reason)));
  const double t = Seconds(start);
  out.Require(t < 1.0, "runtime " + std::to_string(t) + " s");
  out.detail = out.pass ? "b=ok c=pos_mismatch " + std::to_string(t) + " s"
                        : out.detail;
  return out;
}

Outcome HiddenReviewBias() {
  Outcome out;
  const auto start = Clock::now();
  bp::Corpus corpus;
  corpus.inputs.push_back(
      {"19375",
       "... There is a special heaven reserved for people who make the world "
       "laugh . .. British moviegoers will recognise the fat one from Cannon "
       "and Ball ...",
       std::nullopt});
  bp::BiasDictionary dict;
  dict.Add({"British", "Pakistani", bp::SensitiveAttribute("race")});
  dict.Add({"people", "trans women", bp::SensitiveAttribute("gender")});
  auto mock = std::make_shared<bp::MockModel>(
      std::vector<bp::MockModel::Rule>{
          {{"Pakistani moviegoers", "trans women"}, {"Positive"}}},
      std::vector<std::string>{"Negative"});
  bp::CampaignSpec spec;
  spec.mode = bp::CampaignMode::kIntersectional;
  spec.attributes = {bp::SensitiveAttribute("race"),
                     bp::SensitiveAttribute("gender")};
  const auto result = RunDesk(corpus, dict, spec, mock);
  out.Require(result.records.size() == 1,
              std::to_string(result.records.size()) + " records");
  if (result.records.size() == 1) {
    const auto& r = result.records[0];
    out.Require(r.bias && r.hidden == true, "record not biased+hidden");
    out.Require(r.original_outcome->labels == std::set<std::string>{"negative"} &&
                    r.atomic_1_outcome->labels == std::set<std::string>{"negative"} &&
                    r.atomic_2_outcome->labels == std::set<std::string>{"negative"} &&
                    r.mutant_outcome->labels == std::set<std::string>{"positive"},
                "outcome pattern differs");
  }
  const auto metrics = bp::ComputeMetrics(result.records);
  out.Require(metrics.total.hidden_rate().value() == 1.0, "hidden_rate != 1.0");
  const double t = Seconds(start);
  out.Require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (out.pass) out.detail = "hidden_rate=1.0 " + std::to_string(t) + " s";
  return out;
}

Outcome BruteForce() {
  Outcome out;
  const auto start = Clock::now();
  const auto corpus = desk::MakeCorpus(50);
  const auto dict = desk::MakeDictionary();
  const bp::SensitiveAttribute race("race"), gender("gender");
  out.Require(dict.PairsFor(race).size() <= 20 && dict.PairsFor(gender).size() <= 20,
              "dictionary exceeds 20 pairs per attribute");
  const auto mock = desk::MakeMock();
  const bp::LexiconAnnotator annotator = bp::LexiconAnnotator::Builtin();
  const auto query = desk::DirectQuery(*mock);
  const auto inputs = desk::ToInputs(corpus);

  std::size_t compared = 0, hidden = 0;
  auto compare = [&](const std::vector<bp::BiasRecord>& got,
                     const std::vector<reference::Expected>& want,
                     const std::string& label) {
    out.Require(got.size() == want.size(),
                label + ": " + std::to_string(got.size()) + " records vs " +
                    std::to_string(want.size()) + " expected");
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
      const auto e = desk::ToExpected(got[i]);
      out.Require(e == want[i], label + " diff at " + std::to_string(i) +
                                    ": got " + reference::Describe(e) +
                                    " want " + reference::Describe(want[i]));
      ++compared;
      if (e.hidden == true) ++hidden;
    }
  };

  bp::CampaignSpec spec;
  spec.mode = bp::CampaignMode::kIntersectional;
  spec.attributes = {race, gender};
  compare(RunDesk(corpus, dict, spec, mock).records,
          reference::Intersectional(inputs, desk::ToPairs(dict.PairsFor(race)),
                                    desk::ToPairs(dict.PairsFor(gender)),
                                    annotator, query),
          "race+gender");
  spec.attributes = {gender, race};
  compare(RunDesk(corpus, dict, spec, mock).records,
          reference::Intersectional(inputs, desk::ToPairs(dict.PairsFor(gender)),
                                    desk::ToPairs(dict.PairsFor(race)),
                                    annotator, query),
          "gender+race");
  spec.mode = bp::CampaignMode::kAtomic;
  for (const auto& attr : {race, gender}) {
    spec.attributes = {attr};
    compare(RunDesk(corpus, dict, spec, mock).records,
            reference::Atomic(inputs, desk::ToPairs(dict.PairsFor(attr)),
                              annotator, query),
            "atomic " + attr.name());
  }
  out.Require(hidden > 0, "fixture planted no hidden bias");
  const double t = Seconds(start);
  out.Require(t < 30.0, "runtime " + std::to_string(t) + " s");
  if (out.pass) {
    out.detail = std::to_string(compared) + " records, 0 diffs, " +
                 std::to_string(hidden) + " hidden, " + std::to_string(t) + " s";
  }
  return out;
}

Outcome TolerantComp() {
  Outcome out;
  std::mt19937 rng(20240611);
  const std::vector<std::string> alphabet = {"NN", "VB", "DT", "JJ", "IN", "PRP"};
  auto random_seq = [&](std::size_t n) {
    std::vector<std::string> s(n);
    for (auto& x : s) x = alphabet[rng() % alphabet.size()];
    return s;
  };
  auto lib = [](const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
    return bp::TolerantTableComp(a, b);
  };
  std::size_t cases = 0;
  for (int i = 0; i < 4000; ++i) {  // arbitrary pairs
    auto a = random_seq(rng() % 12);
    auto b = random_seq(rng() % 12);
    out.Require(lib(a, b) == reference::TolerantTableComp(a, b), "random disagreement");
    out.Require(lib(b, a) == reference::TolerantTableComp(b, a), "random disagreement");
    cases += 2;
  }
  for (int i = 0; i < 2000; ++i) {  // (i) equal sequences
    auto a = random_seq(rng() % 20);
    out.Require(lib(a, a) && reference::TolerantTableComp(a, a), "equal failed");
    ++cases;
  }
  for (int i = 0; i < 2000; ++i) {  // (ii) equal length, >= 1 mismatch
    auto a = random_seq(1 + rng() % 20);
    auto b = a;
    const std::size_t k = rng() % b.size();
    b[k] = b[k] == "NN" ? "VB" : "NN";
    out.Require(!lib(a, b) && !reference::TolerantTableComp(a, b),
                "equal-length mismatch passed");
    ++cases;
  }
  for (int i = 0; i < 3000; ++i) {  // (iii) d tokens inserted at one position
    auto a = random_seq(rng() % 15);
    const std::size_t at = rng() % (a.size() + 1);
    const std::size_t d = 1 + rng() % 4;
    auto b = a;
    const auto extra = random_seq(d);
    b.insert(b.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
    out.Require(lib(a, b) && lib(b, a) && reference::TolerantTableComp(a, b),
                "single-position insertion rejected");
    cases += 2;
  }
  out.Require(cases >= 10000, "only " + std::to_string(cases) + " cases");
  if (out.pass) out.detail = std::to_string(cases) + " cases, 100% agreement";
  return out;
}

std::string Slurp(const fs::path& p) { return bp::ReadFile(p); }

void WriteDeskFiles(const fs::path& dir) {
  const auto corpus = desk::MakeCorpus(50);
  bp::WriteFile(dir / "corpus.jsonl", bp::SerializeCorpus(corpus));
  std::string tsv;
  const auto dict = desk::MakeDictionary();
  for (const auto& attr : dict.Attributes()) {
    for (const auto& p : dict.PairsFor(attr)) {
      tsv += attr.name() + "\t" + p.source + "\t" + p.target + "\n";
    }
  }
  bp::WriteFile(dir / "dict.tsv", tsv);
  nlohmann::json rules;
  rules["default"] = {"Negative"};
  const auto mock = desk::MakeMock();
  for (const auto& r : mock->rules()) {
    rules["rules"].push_back({{"pattern", r.patterns}, {"labels", r.labels}});
  }
  bp::WriteFile(dir / "rules.json", rules.dump(2));
}

Outcome InvariantSuite() {
  Outcome out;
  const auto corpus = desk::MakeCorpus(50);
  const auto dict = desk::MakeDictionary();
  const bp::LexiconAnnotator annotator = bp::LexiconAnnotator::Builtin();

  for (const auto& in : corpus.inputs) {
    out.Require(bp::InvCheck(in.text, in.text, annotator).passed,
                "InvCheck not reflexive on " + in.id);
  }

  const fs::path dir = TempDir();
  WriteDeskFiles(dir);
  bp::CampaignSpec spec;
  spec.audit_discarded = true;
  for (auto mode : {bp::CampaignMode::kAtomic, bp::CampaignMode::kIntersectional}) {
    spec.mode = mode;
    spec.attributes = mode == bp::CampaignMode::kAtomic
                          ? std::vector<bp::SensitiveAttribute>{bp::SensitiveAttribute("gender")}
                          : std::vector<bp::SensitiveAttribute>{
                                bp::SensitiveAttribute("race"),
                                bp::SensitiveAttribute("gender")};
    const auto records = RunDesk(corpus, dict, spec, desk::MakeMock()).records;
    for (const auto& r : records) {
      out.Require(!r.hidden.value_or(false) || r.bias, "hidden record without bias");
      out.Require(!r.bias || r.verdict.passed, "bias on a discarded mutant");
    }
    const auto m = bp::ComputeMetrics(records);
    for (const auto* g : {&m.total}) {
      const auto& c = g->counts;
      out.Require(c.valid + c.discarded == c.generated, "valid+discarded != generated");
      out.Require(c.hidden <= c.errors && c.errors <= c.resolved &&
                      c.resolved <= c.valid && c.valid <= c.generated,
                  "subset chain violated");
    }
    for (const auto& g : m.groups) {
      out.Require(g.counts.valid + g.counts.discarded == g.counts.generated,
                  "group valid+discarded != generated");
    }
    // Round trip through the serialized stream.
    const auto reread = bp::ParseRecords(bp::SerializeRecords(records), "mem");
    out.Require(reread == records, "record round trip differs");
    out.Require(bp::ReportJson(bp::ComputeMetrics(reread), std::nullopt) ==
                    bp::ReportJson(m, std::nullopt),
                "recomputed metrics differ");
  }

  // Cached re-runs through the command layer.
  bp::CampaignConfig config;
  config.corpus = dir / "corpus.jsonl";
  config.dictionary = dir / "dict.tsv";
  config.attributes = {"race", "gender"};
  config.mode = "intersectional";
  config.endpoint = "mock:" + (dir / "rules.json").string();
  config.cache = dir / "cache.jsonl";
  config.audit_discarded = true;
  std::ostringstream sink;
  config.out_dir = dir / "run1";
  out.Require(bp::CmdRun(config, sink, sink) == bp::kExitOk, "first run failed");
  config.out_dir = dir / "run2";
  config.workers = 3;
  out.Require(bp::CmdRun(config, sink, sink) == bp::kExitOk, "second run failed");
  for (const char* f : {"records.jsonl", "report.json", "rates.csv", "manifest.json"}) {
    out.Require(Slurp(dir / "run1" / f) == Slurp(dir / "run2" / f),
                std::string(f) + " differs between cached runs");
  }
  out.Require(bp::CmdReport(dir / "run1" / "records.jsonl", dir / "report", sink,
                            sink) == bp::kExitOk,
              "report command failed");
  const auto run_report = nlohmann::json::parse(Slurp(dir / "run1" / "report.json"));
  const auto re_report = nlohmann::json::parse(Slurp(dir / "report" / "report.json"));
  out.Require(run_report["metrics"].dump() == re_report["metrics"].dump(),
              "report command metrics differ from run");
  out.Require(Slurp(dir / "run1" / "rates.csv") == Slurp(dir / "report" / "rates.csv"),
              "report command CSV differs from run");

  // A cached client never reaches the backend on a re-run.
  bp::ClientOptions options;
  options.cache_path = dir / "cache.jsonl";
  bp::ModelClient client(desk::MakeMock(), options);
  static const bp::SentenceSplitter splitter;
  const bp::PromptTemplate tmpl = bp::PassthroughTemplate();
  spec.mode = bp::CampaignMode::kIntersectional;
  spec.attributes = {bp::SensitiveAttribute("race"), bp::SensitiveAttribute("gender")};
  bp::RunCampaign(corpus, dict, spec, {annotator, splitter, client, tmpl});
  out.Require(client.backend_calls() == 0,
              std::to_string(client.backend_calls()) + " backend calls on a cached re-run");

  fs::remove_all(dir);
  if (out.pass) out.detail = "reflexivity, subset chain, partition, recompute, cache";
  return out;
}

bp::BiasRecord Synthetic(bool valid, bool bias, bool hidden) {
  bp::BiasRecord r;
  r.origin_id = "x";
  r.kind = bp::MutantKind::kIntersectional;
  r.applied = {{"a", "b", bp::SensitiveAttribute("race")},
               {"c", "d", bp::SensitiveAttribute("gender")}};
  r.verdict = valid ? bp::InvariantVerdict::Ok()
                    : bp::InvariantVerdict::Fail(bp::VerdictReason::kPosMismatch, 0);
  r.bias = bias;
  if (bias) {
    r.hidden = hidden;
    r.hidden_status = hidden ? bp::HiddenStatus::kHidden : bp::HiddenStatus::kNotHidden;
  }
  return r;
}

Outcome MetricFormulas() {
  Outcome out;
  std::vector<bp::BiasRecord> a;
  for (int i = 0; i < 20; ++i) a.push_back(Synthetic(true, i < 3, false));
  for (int i = 0; i < 5; ++i) a.push_back(Synthetic(false, false, false));
  const auto ma = bp::ComputeMetrics(a);
  out.Require(ma.total.bias_error_rate().value() == 0.15, "3/20 != 0.15");
  out.Require(ma.total.discard_fraction().value() == 0.2, "5/25 != 0.2");

  std::vector<bp::BiasRecord> b;
  for (int i = 0; i < 8; ++i) b.push_back(Synthetic(true, true, i < 2));
  out.Require(bp::ComputeMetrics(b).total.hidden_rate().value() == 0.25,
              "2/8 != 0.25");

  const auto empty = bp::ComputeMetrics({});
  out.Require(!empty.total.bias_error_rate().value() &&
                  empty.total.bias_error_rate().Format() == "undefined" &&
                  !empty.total.hidden_rate().value() &&
                  !empty.total.discard_fraction().value(),
              "zero denominators not undefined");
  const std::vector<bp::BiasRecord> no_errors(4, Synthetic(true, false, false));
  out.Require(bp::ComputeMetrics(no_errors).total.hidden_rate().Format() ==
                  "undefined",
              "hidden rate with zero errors not undefined");
  out.Require(bp::ReportJson(empty, std::nullopt).find("\"undefined\"") !=
                  std::string::npos,
              "report does not mark undefined");
  if (out.pass) out.detail = "0.15, 0.25, undefined";
  return out;
}

Outcome Throughput() {
  Outcome out;
  const auto start = Clock::now();
  const auto corpus = desk::MakeCorpus(40000, 11);
  const auto dict = desk::MakeDictionary();
  const bp::LexiconAnnotator annotator = bp::LexiconAnnotator::Builtin();
  const bp::SentenceSplitter splitter;
  std::size_t mutants = 0, valid = 0;
  for (const auto& in : corpus.inputs) {
    const auto original = bp::AnnotateText(in.text, annotator, splitter);
    for (const auto& attr : dict.Attributes()) {
      for (const auto& m : bp::GenerateAtomic(in, dict.PairsFor(attr))) {
        ++mutants;
        if (bp::InvCheck(original, m.text, annotator, splitter).passed) ++valid;
      }
    }
    if (mutants >= 100000) break;
  }
  const double t = Seconds(start);
  out.Require(mutants >= 100000, "only " + std::to_string(mutants) + " mutants");
  out.Require(t < 60.0, "runtime " + std::to_string(t) + " s");
  if (out.pass) {
    out.detail = std::to_string(mutants) + " mutants (" + std::to_string(valid) +
                 " valid) in " + std::to_string(t) + " s";
  }
  return out;
}

}  // namespace

int main() {
  Report("Invariant check on the actor/actress review", ActorActressInvariant);
  Report("Hidden bias on the British moviegoers review", HiddenReviewBias);
  Report("Brute-force oracle equivalence", BruteForce);
  Report("tolerant_table_comp property suite", TolerantComp);
  Report("Invariant-suite checks", InvariantSuite);
  Report("Metric formulas", MetricFormulas);
  Report("Throughput", Throughput);
  return failures == 0 ? 0 : 1;
}
