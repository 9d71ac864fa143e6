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

#include <cstdlib>
#include <thread>

#include "biasprobe/errors.h"
#include "biasprobe/model_client.h"
#include "httplib.h"
#include "json.hpp"

namespace biasprobe {
namespace {

bool Retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpModel::HttpModel(HttpEndpointConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint URL lacks a scheme: " + config_.url);
  }
  const auto path_begin = config_.url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) {
    scheme_host_port_ = config_.url;
    path_ = "/";
  } else {
    scheme_host_port_ = config_.url.substr(0, path_begin);
    path_ = config_.url.substr(path_begin);
  }
  if (scheme_host_port_.size() <= scheme_end + 3) {
    throw ConfigError("endpoint URL lacks a host: " + config_.url);
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (config_.url.rfind("https://", 0) == 0) {
    throw ConfigError("built without TLS support; cannot reach " + config_.url);
  }
#endif
  if (!config_.auth_env.empty()) {
    const char* token = std::getenv(config_.auth_env.c_str());
    if (token == nullptr || *token == '\0') {
      throw ConfigError("environment variable " + config_.auth_env +
                        " (endpoint token) is not set");
    }
    token_ = token;
  }
}

std::string HttpModel::identity() const {
  return "http:" + config_.url + "|model=" + config_.model + "|temperature=0";
}

std::string HttpModel::Complete(const Prompt& prompt) const {
  nlohmann::json body;
  if (!config_.model.empty()) body["model"] = config_.model;
  body["temperature"] = 0;
  body["messages"] = nlohmann::json::array();
  if (!prompt.system.empty()) {
    body["messages"].push_back({{"role", "system"}, {"content", prompt.system}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", prompt.user}});
  const std::string payload = body.dump();

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  int last_status = 0;
  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_status = 0;
      last_error = httplib::to_string(res.error());
      continue;
    }
    last_status = res->status;
    if (res->status >= 200 && res->status < 300) {
      try {
        const auto doc = nlohmann::json::parse(res->body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw QueryError(res->status,
                         "malformed chat-completion response: " +
                             std::string(e.what()));
      }
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (!Retryable(res->status)) break;
  }
  throw QueryError(last_status, "query to " + config_.url + " failed after " +
                                    std::to_string(config_.max_retries + 1) +
                                    " attempt(s): " + last_error);
}

}  // namespace biasprobe
