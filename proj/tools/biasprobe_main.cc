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

// biasprobe: metamorphic bias testing of text classifiers.
//
//   biasprobe run --corpus c.jsonl --dict d.tsv --attributes race,gender \
//       --mode intersectional --endpoint mock:rules.json --out out/
//   biasprobe validate ...same flags...
//   biasprobe report out/records.jsonl [--out dir]
//
// Any run/validate flag may also come from a flat "key = value" file given
// with --config; command-line flags win.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "biasprobe/cli.h"
#include "biasprobe/report.h"

namespace {

// Binds every campaign flag of `cmd` to `config`.
struct CampaignFlags {
  biasprobe::CampaignConfig config;
  std::string conllu, lexicon, abbreviations, template_path, cache;
  std::size_t token_budget = 0;

  void Register(CLI::App* cmd) {
    cmd->set_config("--config", "", "flat key = value file mirroring the flags");
    cmd->add_option("--corpus", config.corpus, "JSON Lines corpus");
    cmd->add_option("--dict", config.dictionary, "bias dictionary (.tsv or .json)");
    cmd->add_option("--attributes", config.attributes,
                    "one attribute (atomic) or two (intersectional)")
        ->delimiter(',');
    cmd->add_option("--mode", config.mode, "atomic or intersectional")
        ->check(CLI::IsMember({"atomic", "intersectional"}));
    cmd->add_option("--endpoint", config.endpoint,
                    "mock:<rules.json> or chat-completions URL");
    cmd->add_option("--model", config.model, "model name sent to HTTP endpoints");
    cmd->add_option("--auth-env", config.auth_env,
                    "environment variable holding the bearer token");
    cmd->add_option("--template", template_path, "prompt template (JSON)");
    cmd->add_option("--annotator", config.annotator, "lexicon or conllu")
        ->check(CLI::IsMember({"lexicon", "conllu"}));
    cmd->add_option("--conllu", conllu, "CoNLL-U annotations");
    cmd->add_option("--lexicon", lexicon, "extra lexicon TSV (word, pos, dep)");
    cmd->add_option("--abbreviations", abbreviations,
                    "abbreviation list replacing the default");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--cache", cache, "response cache (JSON Lines)");
    cmd->add_flag("--raw-substring", config.raw_substring,
                  "match phrases anywhere, not only as whole tokens");
    cmd->add_flag("--audit-discarded", config.audit_discarded,
                  "also query discarded mutants to count false positives");
    cmd->add_option("--token-budget", token_budget,
                    "whitespace tokens sent to the model (default 512 mock, "
                    "4096 HTTP)");
    cmd->add_option("--max-concurrency", config.max_concurrency,
                    "in-flight model requests");
    cmd->add_option("--workers", config.workers, "originals processed in parallel");
  }

  biasprobe::CampaignConfig Resolve() {
    auto set = [](std::optional<std::filesystem::path>& dst, const std::string& v) {
      if (!v.empty()) dst = v;
    };
    set(config.conllu, conllu);
    set(config.lexicon, lexicon);
    set(config.abbreviations, abbreviations);
    set(config.template_path, template_path);
    set(config.cache, cache);
    if (token_budget != 0) config.token_budget = token_budget;
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metamorphic atomic and intersectional bias testing"};
  app.set_version_flag("--version", std::string(biasprobe::kToolVersion));
  app.require_subcommand(1);

  CampaignFlags run_flags;
  auto* run = app.add_subcommand("run", "run a bias campaign");
  run_flags.Register(run);

  CampaignFlags validate_flags;
  auto* validate =
      app.add_subcommand("validate", "check input files without querying");
  validate_flags.Register(validate);

  std::string records;
  std::string report_out;
  auto* report = app.add_subcommand("report", "recompute metrics from records");
  report->add_option("records", records, "records.jsonl")->required();
  report->add_option("--out", report_out,
                     "write report.json and rates.csv here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : biasprobe::kExitConfig;
  }

  if (*run) return biasprobe::CmdRun(run_flags.Resolve(), std::cout, std::cerr);
  if (*validate) {
    return biasprobe::CmdValidate(validate_flags.Resolve(), std::cout);
  }
  std::optional<std::filesystem::path> out_dir;
  if (!report_out.empty()) out_dir = report_out;
  return biasprobe::CmdReport(records, out_dir, std::cout, std::cerr);
}
