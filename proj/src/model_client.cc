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

#include "biasprobe/model_client.h"

#include <algorithm>
#include <fstream>

#include "biasprobe/errors.h"
#include "biasprobe/io.h"
#include "biasprobe/text.h"
#include "json.hpp"

namespace biasprobe {
namespace {

std::vector<std::string> StringList(const nlohmann::json& value,
                                    const std::string& origin,
                                    const char* what) {
  if (value.is_string()) return {value.get<std::string>()};
  if (value.is_array()) {
    std::vector<std::string> out;
    for (const auto& v : value) {
      if (!v.is_string()) {
        throw ParseError(origin, 0, std::string(what) + " must hold strings");
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  }
  throw ParseError(origin, 0,
                   std::string(what) + " must be a string or a list of strings");
}

std::string JoinComma(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

MockModel::MockModel(std::vector<Rule> rules,
                     std::vector<std::string> default_labels)
    : rules_(std::move(rules)), default_labels_(std::move(default_labels)) {
  nlohmann::json canonical;
  canonical["default"] = default_labels_;
  canonical["rules"] = nlohmann::json::array();
  for (const Rule& r : rules_) {
    canonical["rules"].push_back({{"pattern", r.patterns}, {"labels", r.labels}});
  }
  identity_ = "mock:" + Sha256Hex(canonical.dump());
}

std::unique_ptr<MockModel> MockModel::FromJson(std::string_view json,
                                               const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin, 0, e.what());
  }
  const nlohmann::json* rule_list = &doc;
  std::vector<std::string> default_labels = {"None"};
  if (doc.is_object()) {
    if (!doc.contains("rules")) throw ParseError(origin, 0, "missing 'rules'");
    rule_list = &doc["rules"];
    if (doc.contains("default")) {
      default_labels = StringList(doc["default"], origin, "'default'");
    }
  }
  if (!rule_list->is_array()) {
    throw ParseError(origin, 0, "'rules' must be an array");
  }
  std::vector<Rule> rules;
  for (const auto& entry : *rule_list) {
    if (!entry.is_object() || !entry.contains("pattern") ||
        !entry.contains("labels")) {
      throw ParseError(origin, rules.size() + 1,
                       "rule needs 'pattern' and 'labels'");
    }
    Rule rule{StringList(entry["pattern"], origin, "'pattern'"),
              StringList(entry["labels"], origin, "'labels'")};
    for (const auto& p : rule.patterns) {
      if (p.empty()) throw ParseError(origin, rules.size() + 1, "empty pattern");
    }
    rules.push_back(std::move(rule));
  }
  return std::make_unique<MockModel>(std::move(rules), std::move(default_labels));
}

std::unique_ptr<MockModel> MockModel::FromFile(const std::filesystem::path& path) {
  return FromJson(ReadFile(path), path.string());
}

std::string MockModel::Complete(const Prompt& prompt) const {
  const std::string full = prompt.Full();
  for (const Rule& rule : rules_) {
    bool all = true;
    for (const auto& p : rule.patterns) {
      if (full.find(p) == std::string::npos) {
        all = false;
        break;
      }
    }
    if (all) return JoinComma(rule.labels);
  }
  return JoinComma(default_labels_);
}

ResponseCache::ResponseCache(std::filesystem::path path)
    : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  const std::string content = ReadFile(path_);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    const std::string_view line =
        Trim(std::string_view(content).substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto row = nlohmann::json::parse(line);
      entries_.emplace(row.at("key").get<std::string>(),
                       row.at("response").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path_.string(), line_no, e.what());
    }
  }
}

std::optional<std::string> ResponseCache::Get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  return std::nullopt;
}

void ResponseCache::Put(const std::string& key, const std::string& response) {
  std::lock_guard<std::mutex> lock(mu_);
  if (entries_.count(key)) return;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("cannot append to cache file: " + path_.string());
  out << nlohmann::json{{"key", key}, {"response", response}}.dump() << '\n';
  out.flush();
  if (!out) throw ConfigError("cannot append to cache file: " + path_.string());
  entries_.emplace(key, response);
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

ModelClient::ModelClient(std::shared_ptr<const ModelBackend> backend,
                         ClientOptions options)
    : backend_(std::move(backend)),
      slots_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(
              1, options.max_concurrency)))) {
  if (!backend_) throw ConfigError("model client needs a backend");
  if (options.cache_path) {
    cache_ = std::make_unique<ResponseCache>(*options.cache_path);
  }
}

std::string ModelClient::CacheKey(const Prompt& prompt) const {
  return Sha256Hex(backend_->identity() + "\n" + prompt.Full());
}

std::string ModelClient::CallBackend(const Prompt& prompt) {
  slots_->acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{slots_.get()};
  ++backend_calls_;
  return backend_->Complete(prompt);
}

std::string ModelClient::Query(const Prompt& prompt) {
  if (!cache_) return CallBackend(prompt);

  const std::string key = CacheKey(prompt);
  if (auto hit = cache_->Get(key)) {
    ++cache_hits_;
    return *hit;
  }

  std::promise<std::string> promise;
  std::shared_future<std::string> pending;
  {
    std::lock_guard<std::mutex> lock(inflight_mu_);
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      pending = it->second;
    } else {
      inflight_.emplace(key, promise.get_future().share());
    }
  }
  if (pending.valid()) return pending.get();

  auto finish = [&] {
    std::lock_guard<std::mutex> lock(inflight_mu_);
    inflight_.erase(key);
  };
  try {
    std::string response;
    // Another owner may have completed between our miss and registration.
    if (auto hit = cache_->Get(key)) {
      ++cache_hits_;
      response = *hit;
    } else {
      response = CallBackend(prompt);
      cache_->Put(key, response);
    }
    promise.set_value(response);
    finish();
    return response;
  } catch (...) {
    promise.set_exception(std::current_exception());
    finish();
    throw;
  }
}

std::shared_ptr<const ModelBackend> MakeBackend(std::string_view endpoint,
                                                const std::string& model,
                                                const std::string& auth_env) {
  constexpr std::string_view kMock = "mock:";
  if (endpoint.substr(0, kMock.size()) == kMock) {
    const std::filesystem::path rules(std::string(endpoint.substr(kMock.size())));
    if (!std::filesystem::exists(rules)) {
      throw ConfigError("mock rules file not found: " + rules.string());
    }
    try {
      return MockModel::FromFile(rules);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  if (endpoint.substr(0, 7) == "http://" || endpoint.substr(0, 8) == "https://") {
    HttpEndpointConfig config;
    config.url = std::string(endpoint);
    config.model = model;
    config.auth_env = auth_env;
    return std::make_shared<HttpModel>(std::move(config));
  }
  throw ConfigError("endpoint must be 'mock:<rules.json>' or an http(s) URL, got '" +
                    std::string(endpoint) + "'");
}

}  // namespace biasprobe
