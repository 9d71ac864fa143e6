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

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <thread>

#include "biasprobe/errors.h"
#include "biasprobe/model_client.h"
#include "httplib.h"
#include "json.hpp"

namespace biasprobe {
namespace {

// Local chat-completions stand-in whose first `failures` requests answer
// with `failure_status`.
class FakeEndpoint {
 public:
  FakeEndpoint(int failures, int failure_status)
      : failures_(failures), failure_status_(failure_status) {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   ++requests_;
                   last_body_ = req.body;
                   last_auth_ = req.get_header_value("Authorization");
                   if (requests_ <= failures_) {
                     res.status = failure_status_;
                     return;
                   }
                   const auto body = nlohmann::json::parse(req.body);
                   const std::string user = body["messages"].back()["content"];
                   if (user == "garbage") {
                     res.set_content("{\"choices\": []}", "application/json");
                     return;
                   }
                   nlohmann::json reply = {
                       {"choices",
                        {{{"message",
                           {{"role", "assistant"},
                            {"content", "Answer: " + user}}}}}}};
                   res.set_content(reply.dump(), "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  std::string url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions";
  }
  int requests() const { return requests_; }
  std::string last_body() const { return last_body_; }
  std::string last_auth() const { return last_auth_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int failures_;
  int failure_status_;
  std::atomic<int> requests_{0};
  std::string last_body_;
  std::string last_auth_;
};

HttpEndpointConfig Config(const FakeEndpoint& endpoint) {
  HttpEndpointConfig config;
  config.url = endpoint.url();
  config.model = "test-model";
  config.initial_backoff = std::chrono::milliseconds(1);
  config.timeout = std::chrono::seconds(5);
  return config;
}

TEST(HttpModelTest, SendsChatRequestAtTemperatureZero) {
  FakeEndpoint endpoint(0, 200);
  ::setenv("BIASPROBE_TEST_TOKEN", "sekrit", 1);
  auto config = Config(endpoint);
  config.auth_env = "BIASPROBE_TEST_TOKEN";
  HttpModel model(config);
  EXPECT_EQ(model.Complete({"sys", "Positive"}), "Answer: Positive");
  const auto body = nlohmann::json::parse(endpoint.last_body());
  EXPECT_EQ(body["temperature"], 0);
  EXPECT_EQ(body["model"], "test-model");
  ASSERT_EQ(body["messages"].size(), 2u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["content"], "Positive");
  EXPECT_EQ(endpoint.last_auth(), "Bearer sekrit");
}

TEST(HttpModelTest, RetriesServerErrorsThenSucceeds) {
  FakeEndpoint endpoint(2, 503);
  HttpModel model(Config(endpoint));
  EXPECT_EQ(model.Complete({"", "x"}), "Answer: x");
  EXPECT_EQ(endpoint.requests(), 3);
}

TEST(HttpModelTest, RetriesRateLimitUntilExhausted) {
  FakeEndpoint endpoint(100, 429);
  auto config = Config(endpoint);
  config.max_retries = 2;
  HttpModel model(config);
  try {
    model.Complete({"", "x"});
    FAIL();
  } catch (const QueryError& e) {
    EXPECT_EQ(e.status(), 429);
  }
  EXPECT_EQ(endpoint.requests(), 3);
}

TEST(HttpModelTest, ClientErrorsFailWithoutRetry) {
  FakeEndpoint endpoint(100, 401);
  HttpModel model(Config(endpoint));
  try {
    model.Complete({"", "x"});
    FAIL();
  } catch (const QueryError& e) {
    EXPECT_EQ(e.status(), 401);
  }
  EXPECT_EQ(endpoint.requests(), 1);
}

TEST(HttpModelTest, MalformedResponse) {
  FakeEndpoint endpoint(0, 200);
  HttpModel model(Config(endpoint));
  EXPECT_THROW(model.Complete({"", "garbage"}), QueryError);
}

TEST(HttpModelTest, UnreachableEndpoint) {
  HttpEndpointConfig config;
  config.url = "http://127.0.0.1:1/v1/chat/completions";
  config.max_retries = 1;
  config.initial_backoff = std::chrono::milliseconds(1);
  HttpModel model(config);
  try {
    model.Complete({"", "x"});
    FAIL();
  } catch (const QueryError& e) {
    EXPECT_EQ(e.status(), 0);
  }
}

TEST(HttpModelTest, CachedClientCallsEndpointOnce) {
  FakeEndpoint endpoint(0, 200);
  const auto cache = std::filesystem::temp_directory_path() / "biasprobe_http_cache.jsonl";
  std::filesystem::remove(cache);
  ModelClient client(std::make_shared<HttpModel>(Config(endpoint)), {cache, 2});
  EXPECT_EQ(client.Query({"", "x"}), "Answer: x");
  EXPECT_EQ(client.Query({"", "x"}), "Answer: x");
  EXPECT_EQ(endpoint.requests(), 1);
  std::filesystem::remove(cache);
}

TEST(HttpModelTest, BadUrls) {
  HttpEndpointConfig config;
  config.url = "localhost:8000";
  EXPECT_THROW(HttpModel{config}, ConfigError);
  config.url = "http://";
  EXPECT_THROW(HttpModel{config}, ConfigError);
}

}  // namespace
}  // namespace biasprobe
