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

// Command implementations behind the biasprobe executable. Each returns the
// process exit status and writes human-readable output to the given streams.

#ifndef BIASPROBE_CLI_H_
#define BIASPROBE_CLI_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace biasprobe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

inline constexpr std::size_t kFineTunedTokenBudget = 512;
inline constexpr std::size_t kEndpointTokenBudget = 4096;

struct CampaignConfig {
  std::filesystem::path corpus;
  std::filesystem::path dictionary;
  std::vector<std::string> attributes;
  std::string mode = "intersectional";
  // "lexicon" or "conllu".
  std::string annotator = "lexicon";
  std::optional<std::filesystem::path> conllu;
  std::optional<std::filesystem::path> lexicon;
  std::optional<std::filesystem::path> abbreviations;
  // "mock:<rules.json>" or an http(s) chat-completions URL.
  std::string endpoint;
  std::string model;
  std::string auth_env;
  // Unset: pass-through prompts (the document alone).
  std::optional<std::filesystem::path> template_path;
  std::filesystem::path out_dir = "biasprobe-out";
  std::optional<std::filesystem::path> cache;
  bool raw_substring = false;
  bool audit_discarded = false;
  // Unset: kFineTunedTokenBudget for mock endpoints, kEndpointTokenBudget
  // for HTTP ones.
  std::optional<std::size_t> token_budget;
  std::size_t max_concurrency = 4;
  std::size_t workers = 1;
};

// Mode/attribute arity, annotator choice and existence of referenced files.
// Throws ConfigError.
void ValidateConfig(const CampaignConfig& config);

// Writes records.jsonl, report.json, rates.csv and manifest.json to
// config.out_dir. kExitOk once the campaign completes, whatever it found;
// kExitConfig for configuration errors, including an aborted campaign (its
// partial outputs are kept and flagged in the manifest).
int CmdRun(const CampaignConfig& config, std::ostream& out, std::ostream& err);

// Checks every referenced input file offline and prints one verdict line per
// file. kExitOk when all are fine, kExitFailure otherwise.
int CmdValidate(const CampaignConfig& config, std::ostream& out);

// Recomputes metrics from a record stream. Writes report.json and rates.csv
// to `out_dir` when given, and prints the CSV to `out` otherwise.
int CmdReport(const std::filesystem::path& records,
              const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out, std::ostream& err);

}  // namespace biasprobe

#endif  // BIASPROBE_CLI_H_
