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

#include "biasprobe/cli.h"

#include <fstream>
#include <memory>
#include <utility>

#include "biasprobe/annotation.h"
#include "biasprobe/campaign.h"
#include "biasprobe/corpus.h"
#include "biasprobe/dictionary.h"
#include "biasprobe/errors.h"
#include "biasprobe/invariant.h"
#include "biasprobe/io.h"
#include "biasprobe/metrics.h"
#include "biasprobe/model_client.h"
#include "biasprobe/prompt.h"
#include "biasprobe/report.h"

namespace biasprobe {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kMockPrefix = "mock:";

bool IsMock(const std::string& endpoint) {
  return endpoint.rfind(kMockPrefix, 0) == 0;
}

// Role name to path for every input file the config references.
std::vector<std::pair<std::string, fs::path>> InputFiles(
    const CampaignConfig& c) {
  std::vector<std::pair<std::string, fs::path>> files = {
      {"corpus", c.corpus}, {"dictionary", c.dictionary}};
  if (c.template_path) files.emplace_back("template", *c.template_path);
  if (IsMock(c.endpoint)) {
    files.emplace_back("mock_rules", c.endpoint.substr(kMockPrefix.size()));
  }
  if (c.conllu) files.emplace_back("conllu", *c.conllu);
  if (c.lexicon) files.emplace_back("lexicon", *c.lexicon);
  if (c.abbreviations) files.emplace_back("abbreviations", *c.abbreviations);
  return files;
}

CampaignSpec MakeSpec(const CampaignConfig& c) {
  CampaignSpec spec;
  spec.mode = CampaignModeFromString(c.mode);
  try {
    for (const auto& a : c.attributes) spec.attributes.emplace_back(a);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("attributes: ") + e.what());
  }
  spec.match = c.raw_substring ? MatchMode::kRawSubstring : MatchMode::kWholeToken;
  spec.audit_discarded = c.audit_discarded;
  spec.token_budget = c.token_budget.value_or(
      IsMock(c.endpoint) ? kFineTunedTokenBudget : kEndpointTokenBudget);
  spec.workers = c.workers;
  return spec;
}

// Input-file loaders; format problems surface as ConfigError.
template <typename F>
auto AsConfigError(F load) -> decltype(load()) {
  try {
    return load();
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

std::unique_ptr<Annotator> MakeAnnotator(const CampaignConfig& c) {
  if (c.annotator == "conllu") {
    return AsConfigError([&] { return LoadConlluAnnotations(*c.conllu); });
  }
  auto lexicon = std::make_unique<LexiconAnnotator>(LexiconAnnotator::Builtin());
  if (c.lexicon) AsConfigError([&] { lexicon->LoadLexicon(*c.lexicon); });
  return lexicon;
}

SentenceSplitter MakeSplitter(const CampaignConfig& c) {
  if (!c.abbreviations) return SentenceSplitter();
  return SentenceSplitter::FromFile(*c.abbreviations);
}

PromptTemplate MakeTemplate(const CampaignConfig& c) {
  if (!c.template_path) return PassthroughTemplate();
  return AsConfigError([&] { return LoadPromptTemplate(*c.template_path); });
}

std::string Join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

void WriteOutputs(const fs::path& dir, const MetricSet& metrics,
                  const std::optional<nlohmann::ordered_json>& manifest) {
  WriteFile(dir / "report.json", ReportJson(metrics, manifest));
  WriteFile(dir / "rates.csv", RatesCsv(metrics));
  if (manifest) WriteFile(dir / "manifest.json", manifest->dump(2) + "\n");
}

void PrintSummary(const MetricSet& m, std::ostream& out) {
  const GroupCounts& c = m.total.counts;
  out << "generated " << c.generated << ", valid " << c.valid << ", discarded "
      << c.discarded << ", errors " << c.errors << ", hidden " << c.hidden
      << ", unresolved " << c.unresolved << "\n"
      << "bias error rate " << m.total.bias_error_rate().Format()
      << ", hidden rate " << m.total.hidden_rate().Format() << "\n";
}

}  // namespace

void ValidateConfig(const CampaignConfig& c) {
  const CampaignMode mode = CampaignModeFromString(c.mode);
  const std::size_t want = mode == CampaignMode::kAtomic ? 1 : 2;
  if (c.attributes.size() != want) {
    throw ConfigError(c.mode + " mode needs exactly " + std::to_string(want) +
                      " attribute(s), got " + std::to_string(c.attributes.size()));
  }
  if (c.annotator != "lexicon" && c.annotator != "conllu") {
    throw ConfigError("unknown annotator '" + c.annotator +
                      "' (expected lexicon or conllu)");
  }
  if (c.annotator == "conllu" && !c.conllu) {
    throw ConfigError("the conllu annotator needs --conllu <file>");
  }
  if (c.endpoint.empty()) throw ConfigError("no endpoint given");
  if (c.workers == 0) throw ConfigError("workers must be positive");
  if (c.max_concurrency == 0) throw ConfigError("max concurrency must be positive");
  if (c.token_budget && *c.token_budget == 0) {
    throw ConfigError("token budget must be positive");
  }
  for (const auto& [role, path] : InputFiles(c)) {
    if (!fs::is_regular_file(path)) {
      throw ConfigError(role + " file not found: " + path.string());
    }
  }
}

int CmdRun(const CampaignConfig& config, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  BiasDictionary dict;
  Corpus corpus;
  PromptTemplate tmpl;
  std::unique_ptr<Annotator> annotator;
  std::optional<SentenceSplitter> splitter;
  std::unique_ptr<ModelClient> client;
  CampaignSpec spec;
  try {
    ValidateConfig(config);
    spec = MakeSpec(config);
    dict = AsConfigError([&] { return LoadDictionary(config.dictionary); });
    ValidateCampaignSpec(spec, dict);
    corpus = AsConfigError([&] { return LoadCorpus(config.corpus); });
    tmpl = MakeTemplate(config);
    annotator = MakeAnnotator(config);
    splitter = MakeSplitter(config);
    ClientOptions options;
    options.cache_path = config.cache;
    options.max_concurrency = config.max_concurrency;
    client = std::make_unique<ModelClient>(
        MakeBackend(config.endpoint, config.model, config.auth_env), options);
    for (const auto& [role, path] : InputFiles(config)) {
      manifest.input_paths[role] = path.string();
      manifest.input_hashes[role] = Sha256Hex(ReadFile(path));
    }
    fs::create_directories(config.out_dir);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    // Cache file corruption.
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  manifest.endpoint = client->backend().identity();
  manifest.annotator = annotator->name();
  manifest.mode = std::string(ToString(spec.mode));
  manifest.attributes = config.attributes;
  manifest.match = config.raw_substring ? "raw_substring" : "whole_token";
  manifest.audit_discarded = config.audit_discarded;
  manifest.token_budget = spec.token_budget;
  manifest.dictionary_duplicates = dict.duplicate_count();
  manifest.corpus_warnings = corpus.warnings;
  for (const auto& w : corpus.warnings) err << "warning: " << w << "\n";

  const fs::path records_path = config.out_dir / "records.jsonl";
  std::ofstream records_out(records_path, std::ios::binary | std::ios::trunc);
  if (!records_out) {
    err << "error: cannot write " << records_path.string() << "\n";
    return kExitConfig;
  }
  std::vector<BiasRecord> records;
  auto sink = [&](const BiasRecord& r) {
    records_out << SerializeRecord(r);
    records.push_back(r);
  };

  int status = kExitOk;
  const CampaignContext ctx{*annotator, *splitter, *client, tmpl};
  try {
    const CampaignResult result = RunCampaign(corpus, dict, spec, ctx, sink);
    manifest.stats = result.stats;
  } catch (const Error& e) {
    // Only configuration-class problems (e.g. a sentence missing from the
    // CoNLL-U file) escape the runner.
    manifest.partial = true;
    manifest.abort_reason = e.what();
    manifest.stats.originals = corpus.inputs.size();
    err << "error: campaign aborted: " << e.what() << "\n";
    status = kExitConfig;
  }
  records_out.close();
  if (!records_out) {
    err << "error: failed writing " << records_path.string() << "\n";
    return kExitFailure;
  }

  const MetricSet metrics = ComputeMetrics(records);
  try {
    WriteOutputs(config.out_dir, metrics, ManifestToJson(manifest));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  PrintSummary(metrics, out);
  out << "wrote " << config.out_dir.string() << "/{records.jsonl,report.json,"
      << "rates.csv,manifest.json}\n";
  return status;
}

int CmdValidate(const CampaignConfig& config, std::ostream& out) {
  bool ok = true;
  auto check = [&](const std::string& what, auto&& body) {
    try {
      body();
      out << what << ": ok\n";
    } catch (const std::exception& e) {
      ok = false;
      out << what << ": " << e.what() << "\n";
    }
  };

  std::optional<BiasDictionary> dict;
  check("dictionary " + config.dictionary.string(),
        [&] { dict = LoadDictionary(config.dictionary); });
  check("corpus " + config.corpus.string(), [&] {
    const Corpus corpus = LoadCorpus(config.corpus);
    if (!corpus.warnings.empty()) {
      throw ValidationError(Join(corpus.warnings, "; "));
    }
  });
  if (config.template_path) {
    check("template " + config.template_path->string(),
          [&] { LoadPromptTemplate(*config.template_path); });
  }
  if (IsMock(config.endpoint)) {
    const fs::path rules = config.endpoint.substr(kMockPrefix.size());
    check("mock rules " + rules.string(), [&] { MockModel::FromFile(rules); });
  }
  if (config.conllu) {
    check("conllu " + config.conllu->string(),
          [&] { LoadConlluAnnotations(*config.conllu); });
  }
  if (config.lexicon) {
    check("lexicon " + config.lexicon->string(), [&] {
      LexiconAnnotator lexicon;
      lexicon.LoadLexicon(*config.lexicon);
    });
  }
  if (config.abbreviations) {
    check("abbreviations " + config.abbreviations->string(),
          [&] { SentenceSplitter::FromFile(*config.abbreviations); });
  }
  check("config", [&] {
    if (config.endpoint.empty()) {
      // validate does not need an endpoint; check the rest.
      CampaignConfig copy = config;
      copy.endpoint = "http://unused";
      ValidateConfig(copy);
    } else {
      ValidateConfig(config);
    }
    if (dict) ValidateCampaignSpec(MakeSpec(config), *dict);
  });
  return ok ? kExitOk : kExitFailure;
}

int CmdReport(const fs::path& records_path, const std::optional<fs::path>& out_dir,
              std::ostream& out, std::ostream& err) {
  std::vector<BiasRecord> records;
  try {
    records = ReadRecords(records_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  const MetricSet metrics = ComputeMetrics(records);
  if (!out_dir) {
    out << RatesCsv(metrics);
    return kExitOk;
  }
  try {
    fs::create_directories(*out_dir);
    WriteOutputs(*out_dir, metrics, std::nullopt);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  PrintSummary(metrics, out);
  return kExitOk;
}

}  // namespace biasprobe
