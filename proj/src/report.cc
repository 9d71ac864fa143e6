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

#include "biasprobe/report.h"

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"

namespace biasprobe {
namespace {

using nlohmann::ordered_json;

constexpr std::string_view kDeterminism =
    "no random seeds; outputs are a function of input bytes, enumeration "
    "order and model responses (temperature 0, cached when a cache is set)";
constexpr std::string_view kHiddenRateDefinition =
    "hidden / (errors - errors whose atomic sibling queries failed); an error "
    "is hidden when both atomic siblings pass the invariant check and keep "
    "the original outcome";

ordered_json VerdictToJson(const InvariantVerdict& v) {
  ordered_json j;
  j["passed"] = v.passed;
  j["reason"] = ToString(v.reason);
  j["sentence"] = v.failing_sentence_index ? ordered_json(*v.failing_sentence_index)
                                           : ordered_json(nullptr);
  return j;
}

InvariantVerdict VerdictFromJson(const nlohmann::json& j) {
  InvariantVerdict v;
  v.passed = j.at("passed").get<bool>();
  v.reason = VerdictReasonFromString(j.at("reason").get<std::string>());
  if (j.contains("sentence") && !j["sentence"].is_null()) {
    v.failing_sentence_index = j["sentence"].get<std::size_t>();
  }
  return v;
}

ordered_json OutcomeToJson(const Outcome& o) {
  ordered_json j;
  j["labels"] = o.labels;
  j["raw"] = o.raw;
  j["flagged"] = o.flagged;
  return j;
}

Outcome OutcomeFromJson(const nlohmann::json& j) {
  Outcome o;
  o.labels = j.at("labels").get<std::set<std::string>>();
  o.raw = j.at("raw").get<std::string>();
  o.flagged = j.at("flagged").get<std::set<std::string>>();
  return o;
}

template <typename T, typename F>
ordered_json Optional(const std::optional<T>& value, F convert) {
  return value ? convert(*value) : ordered_json(nullptr);
}

template <typename T, typename F>
std::optional<T> OptionalFrom(const nlohmann::json& j, const char* key,
                              F convert) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return convert(j[key]);
}

ordered_json RateToJson(const Rate& r) {
  ordered_json j;
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  const auto v = r.value();
  j["value"] = v ? ordered_json(*v) : ordered_json("undefined");
  return j;
}

ordered_json CountsToJson(const GroupCounts& c) {
  ordered_json j;
  j["generated"] = c.generated;
  j["valid"] = c.valid;
  j["discarded"] = c.discarded;
  j["resolved"] = c.resolved;
  j["unresolved"] = c.unresolved;
  j["errors"] = c.errors;
  j["hidden"] = c.hidden;
  j["hidden_indeterminate"] = c.hidden_indeterminate;
  j["hidden_unresolved"] = c.hidden_unresolved;
  j["audited"] = c.audited;
  j["false_positives"] = c.false_positives;
  j["flagged"] = c.flagged;
  j["origins_tested"] = c.origins_tested;
  j["origins_biased"] = c.origins_biased;
  return j;
}

ordered_json GroupToJson(const GroupMetrics& g) {
  ordered_json j;
  j["group"] = g.group;
  j["mode"] = g.mode;
  j["counts"] = CountsToJson(g.counts);
  j["bias_error_rate"] = RateToJson(g.bias_error_rate());
  j["hidden_rate"] = RateToJson(g.hidden_rate());
  j["bias_inducing_original_fraction"] =
      RateToJson(g.bias_inducing_original_fraction());
  j["discard_fraction"] = RateToJson(g.discard_fraction());
  return j;
}

ordered_json OverlapToJson(const OverlapCounts& o) {
  ordered_json j;
  j["only_atomic"] = o.only_atomic;
  j["only_intersectional"] = o.only_intersectional;
  j["both"] = o.both;
  return j;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ordered_json RecordToJson(const BiasRecord& r) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  j["origin_id"] = r.origin_id;
  j["kind"] = r.kind == MutantKind::kAtomic ? "atomic" : "intersectional";
  j["applied"] = ordered_json::array();
  for (const WordPair& p : r.applied) {
    j["applied"].push_back(ordered_json{{"attribute", p.attribute.name()},
                                        {"source", p.source},
                                        {"target", p.target}});
  }
  j["mutant_text"] = r.mutant_text;
  j["verdict"] = VerdictToJson(r.verdict);
  j["original_outcome"] = Optional(r.original_outcome, OutcomeToJson);
  j["mutant_outcome"] = Optional(r.mutant_outcome, OutcomeToJson);
  j["bias"] = r.bias;
  j["hidden"] = r.hidden ? ordered_json(*r.hidden) : ordered_json(nullptr);
  j["hidden_status"] = ToString(r.hidden_status);
  j["atomic_1_verdict"] = Optional(r.atomic_1_verdict, VerdictToJson);
  j["atomic_2_verdict"] = Optional(r.atomic_2_verdict, VerdictToJson);
  j["atomic_1_outcome"] = Optional(r.atomic_1_outcome, OutcomeToJson);
  j["atomic_2_outcome"] = Optional(r.atomic_2_outcome, OutcomeToJson);
  j["unresolved"] = r.unresolved;
  j["query_error"] = r.query_error;
  j["audited"] = r.audited;
  j["flagged_labels"] = r.flagged_labels;
  return j;
}

BiasRecord RecordFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema_version") ||
      !j["schema_version"].is_number_integer()) {
    throw SchemaError("record lacks an integer schema_version; expected " +
                      std::to_string(kRecordSchemaVersion));
  }
  const int version = j["schema_version"].get<int>();
  if (version != kRecordSchemaVersion) {
    throw SchemaError("record schema version " + std::to_string(version) +
                      " is not supported; this build reads version " +
                      std::to_string(kRecordSchemaVersion));
  }
  BiasRecord r;
  try {
    r.origin_id = j.at("origin_id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "atomic") {
      r.kind = MutantKind::kAtomic;
    } else if (kind == "intersectional") {
      r.kind = MutantKind::kIntersectional;
    } else {
      throw ParseError("record", 0, "unknown kind \"" + kind + "\"");
    }
    for (const auto& p : j.at("applied")) {
      r.applied.push_back({p.at("source").get<std::string>(),
                           p.at("target").get<std::string>(),
                           SensitiveAttribute(p.at("attribute").get<std::string>())});
    }
    r.mutant_text = j.at("mutant_text").get<std::string>();
    r.verdict = VerdictFromJson(j.at("verdict"));
    r.original_outcome = OptionalFrom<Outcome>(j, "original_outcome", OutcomeFromJson);
    r.mutant_outcome = OptionalFrom<Outcome>(j, "mutant_outcome", OutcomeFromJson);
    r.bias = j.at("bias").get<bool>();
    r.hidden = OptionalFrom<bool>(j, "hidden",
                                  [](const nlohmann::json& v) { return v.get<bool>(); });
    r.hidden_status = HiddenStatusFromString(j.at("hidden_status").get<std::string>());
    r.atomic_1_verdict =
        OptionalFrom<InvariantVerdict>(j, "atomic_1_verdict", VerdictFromJson);
    r.atomic_2_verdict =
        OptionalFrom<InvariantVerdict>(j, "atomic_2_verdict", VerdictFromJson);
    r.atomic_1_outcome = OptionalFrom<Outcome>(j, "atomic_1_outcome", OutcomeFromJson);
    r.atomic_2_outcome = OptionalFrom<Outcome>(j, "atomic_2_outcome", OutcomeFromJson);
    r.unresolved = j.at("unresolved").get<bool>();
    r.query_error = j.at("query_error").get<std::string>();
    r.audited = j.at("audited").get<bool>();
    r.flagged_labels = j.at("flagged_labels").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("record", 0, e.what());
  } catch (const ValidationError& e) {
    throw ParseError("record", 0, e.what());
  }
  return r;
}

std::string SerializeRecord(const BiasRecord& record) {
  return RecordToJson(record).dump() + "\n";
}

std::string SerializeRecords(const std::vector<BiasRecord>& records) {
  std::string out;
  for (const auto& r : records) out += SerializeRecord(r);
  return out;
}

std::vector<BiasRecord> ParseRecords(std::string_view content,
                                     const std::string& origin) {
  std::vector<BiasRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = Trim(content.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(origin, line_no, e.what());
    }
    try {
      out.push_back(RecordFromJson(j));
    } catch (const SchemaError& e) {
      throw SchemaError(origin + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(origin, line_no, e.what());
    }
  }
  return out;
}

std::vector<BiasRecord> ReadRecords(const std::filesystem::path& path) {
  return ParseRecords(ReadFile(path), path.string());
}

ordered_json MetricsToJson(const MetricSet& m) {
  ordered_json j;
  j["total"] = GroupToJson(m.total);
  j["groups"] = ordered_json::array();
  for (const auto& g : m.groups) j["groups"].push_back(GroupToJson(g));
  j["overlap"] = {{"origins", OverlapToJson(m.origin_overlap)},
                  {"origin_pairs", OverlapToJson(m.pair_overlap)}};
  return j;
}

std::string RatesCsv(const MetricSet& m) {
  std::string out =
      "group,mode,generated,valid,discarded,resolved,unresolved,errors,hidden,"
      "hidden_indeterminate,audited,false_positives,bias_error_rate,"
      "hidden_rate,bias_inducing_original_fraction,discard_fraction\n";
  for (const auto& g : m.groups) {
    const GroupCounts& c = g.counts;
    out += CsvField(g.group) + "," + g.mode;
    for (std::size_t n : {c.generated, c.valid, c.discarded, c.resolved,
                          c.unresolved, c.errors, c.hidden,
                          c.hidden_indeterminate, c.audited, c.false_positives}) {
      out += "," + std::to_string(n);
    }
    for (const Rate& r : {g.bias_error_rate(), g.hidden_rate(),
                          g.bias_inducing_original_fraction(),
                          g.discard_fraction()}) {
      out += "," + r.Format();
    }
    out += "\n";
  }
  return out;
}

ordered_json ManifestToJson(const RunManifest& m) {
  ordered_json j;
  j["tool"] = "biasprobe";
  j["tool_version"] = kToolVersion;
  j["record_schema_version"] = kRecordSchemaVersion;
  j["inputs"] = ordered_json::object();
  for (const auto& [role, path] : m.input_paths) {
    auto it = m.input_hashes.find(role);
    j["inputs"][role] = {{"path", path},
                         {"sha256", it == m.input_hashes.end() ? "" : it->second}};
  }
  j["endpoint"] = m.endpoint;
  j["annotator"] = m.annotator;
  j["mode"] = m.mode;
  j["attributes"] = m.attributes;
  j["match"] = m.match;
  j["audit_discarded"] = m.audit_discarded;
  j["token_budget"] = m.token_budget;
  j["originals"] = m.stats.originals;
  j["skipped_overlapping"] = m.stats.skipped_overlapping;
  j["skipped_interacting"] = m.stats.skipped_interacting;
  j["dictionary_duplicates"] = m.dictionary_duplicates;
  j["corpus_warnings"] = m.corpus_warnings;
  j["determinism"] = kDeterminism;
  j["hidden_rate_definition"] = kHiddenRateDefinition;
  j["partial"] = m.partial;
  if (m.partial) j["abort_reason"] = m.abort_reason;
  return j;
}

std::string ReportJson(const MetricSet& metrics,
                       const std::optional<ordered_json>& manifest) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["metrics"] = MetricsToJson(metrics);
  if (manifest) j["manifest"] = *manifest;
  return j.dump(2) + "\n";
}

}  // namespace biasprobe
