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

// Serialized forms of campaign output: the JSON Lines record stream, the
// report document, the CSV rate table and the run manifest.

#ifndef BIASPROBE_REPORT_H_
#define BIASPROBE_REPORT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/campaign.h"
#include "biasprobe/metrics.h"
#include "json.hpp"

namespace biasprobe {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

nlohmann::ordered_json RecordToJson(const BiasRecord& record);
// Throws SchemaError when the record's schema_version is not
// kRecordSchemaVersion, ParseError (line 0) for malformed fields.
BiasRecord RecordFromJson(const nlohmann::json& json);

// One compact JSON object per line, each ending in '\n'.
std::string SerializeRecord(const BiasRecord& record);
std::string SerializeRecords(const std::vector<BiasRecord>& records);
std::vector<BiasRecord> ParseRecords(std::string_view content,
                                     const std::string& origin);
std::vector<BiasRecord> ReadRecords(const std::filesystem::path& path);

nlohmann::ordered_json MetricsToJson(const MetricSet& metrics);

// Header plus one row per group, no total row.
std::string RatesCsv(const MetricSet& metrics);

struct RunManifest {
  // Role ("corpus", "dictionary", ...) to file path and SHA-256 of its bytes.
  std::map<std::string, std::string> input_paths;
  std::map<std::string, std::string> input_hashes;
  std::string endpoint;
  std::string annotator;
  std::string mode;
  std::vector<std::string> attributes;
  std::string match;
  bool audit_discarded = false;
  std::size_t token_budget = 0;
  CampaignStats stats;
  std::size_t dictionary_duplicates = 0;
  std::vector<std::string> corpus_warnings;
  // Set when the campaign stopped before covering the whole corpus.
  bool partial = false;
  std::string abort_reason;
};

nlohmann::ordered_json ManifestToJson(const RunManifest& manifest);

// {"schema_version", "metrics", "manifest"?}; pretty-printed, trailing '\n'.
std::string ReportJson(const MetricSet& metrics,
                       const std::optional<nlohmann::ordered_json>& manifest);

}  // namespace biasprobe

#endif  // BIASPROBE_REPORT_H_
