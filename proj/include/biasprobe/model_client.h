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

// Access to the model under test.
//
// A ModelBackend turns a prompt into a raw response: MockModel evaluates an
// ordered rule table, HttpModel posts a chat-completion request at temperature
// zero. ModelClient sits in front of a backend and adds the write-once
// response cache and a global cap on in-flight requests.

#ifndef BIASPROBE_MODEL_CLIENT_H_
#define BIASPROBE_MODEL_CLIENT_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasprobe/prompt.h"

namespace biasprobe {

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  // Stable description of the endpoint; part of every cache key.
  virtual std::string identity() const = 0;
  virtual double temperature() const { return 0.0; }

  // Throws QueryError.
  virtual std::string Complete(const Prompt& prompt) const = 0;
};

// Rules file (JSON):
//   {"rules": [{"pattern": "hilarious", "labels": ["Positive"]},
//              {"pattern": ["trans women", "Pakistani"], "labels": [...]}],
//    "default": ["Negative"]}
// A rule fires when the full prompt contains its pattern (every pattern, when
// a list is given). First match wins; otherwise the default labels are
// returned. Responses are the labels joined by ", ".
class MockModel : public ModelBackend {
 public:
  struct Rule {
    std::vector<std::string> patterns;
    std::vector<std::string> labels;
  };

  MockModel(std::vector<Rule> rules, std::vector<std::string> default_labels);

  static std::unique_ptr<MockModel> FromFile(const std::filesystem::path& path);
  static std::unique_ptr<MockModel> FromJson(std::string_view json,
                                             const std::string& origin);

  std::string identity() const override { return identity_; }
  std::string Complete(const Prompt& prompt) const override;

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
  std::vector<std::string> default_labels_;
  std::string identity_;
};

struct HttpEndpointConfig {
  // Full URL of the chat-completions resource, e.g.
  // "http://localhost:8000/v1/chat/completions".
  std::string url;
  std::string model;
  // Name of the environment variable holding the bearer token; empty for
  // unauthenticated endpoints.
  std::string auth_env;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::seconds timeout{120};
};

// POSTs {"model", "temperature": 0, "messages": [system, user]} and returns
// choices[0].message.content. Transport failures, 429 and 5xx are retried
// with exponential backoff up to max_retries times; any other non-2xx status
// fails at once.
class HttpModel : public ModelBackend {
 public:
  // Throws ConfigError for a malformed URL or a missing token variable.
  explicit HttpModel(HttpEndpointConfig config);

  std::string identity() const override;
  std::string Complete(const Prompt& prompt) const override;

 private:
  HttpEndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::string token_;
};

// Append-only JSON Lines file of {"key", "response"} records. The first
// response stored for a key wins; later Put calls for it are ignored.
class ResponseCache {
 public:
  // Loads existing entries; creates the file lazily on first Put.
  explicit ResponseCache(std::filesystem::path path);

  std::optional<std::string> Get(const std::string& key) const;
  void Put(const std::string& key, const std::string& response);
  std::size_t size() const;

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> entries_;
};

struct ClientOptions {
  std::optional<std::filesystem::path> cache_path;
  std::size_t max_concurrency = 4;
};

class ModelClient {
 public:
  ModelClient(std::shared_ptr<const ModelBackend> backend,
              ClientOptions options = {});

  // Cache hit short-circuits the backend. With a cache, concurrent queries
  // for the same key share one backend call. Throws QueryError.
  std::string Query(const Prompt& prompt);

  // SHA-256 over the endpoint identity and the full prompt.
  std::string CacheKey(const Prompt& prompt) const;

  const ModelBackend& backend() const { return *backend_; }
  std::size_t backend_calls() const { return backend_calls_.load(); }
  std::size_t cache_hits() const { return cache_hits_.load(); }

 private:
  std::string CallBackend(const Prompt& prompt);

  std::shared_ptr<const ModelBackend> backend_;
  std::unique_ptr<ResponseCache> cache_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
  std::mutex inflight_mu_;
  std::map<std::string, std::shared_future<std::string>> inflight_;
  std::atomic<std::size_t> backend_calls_{0};
  std::atomic<std::size_t> cache_hits_{0};
};

// "mock:<rules.json>" or an http(s) URL. Throws ConfigError.
std::shared_ptr<const ModelBackend> MakeBackend(std::string_view endpoint,
                                                const std::string& model,
                                                const std::string& auth_env);

}  // namespace biasprobe

#endif  // BIASPROBE_MODEL_CLIENT_H_
