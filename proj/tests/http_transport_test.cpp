// Copyright 2026 The AIDG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aidg/http_transport.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <thread>

#include "test_support.hpp"

namespace aidg {
namespace {

ChatRequest Sample() {
  ChatRequest r;
  r.model_id = "model-x";
  r.temperature = 0.7;
  r.messages = {{ChatRole::kSystem, "be brief"}, {ChatRole::kUser, "hi"}};
  return r;
}

std::string Reply(const std::string& content) {
  return nlohmann::json{
      {"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
      .dump();
}

// A loopback server whose handler is set per test.
class LocalServer {
 public:
  explicit LocalServer(httplib::Server::Handler handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(ChatCodec, RequestShape) {
  ChatRequest r = Sample();
  r.max_tokens = 64;
  const auto j = nlohmann::json::parse(EncodeChatRequest(r));
  EXPECT_EQ(j["model"], "model-x");
  EXPECT_DOUBLE_EQ(j["temperature"].get<double>(), 0.7);
  EXPECT_EQ(j["max_tokens"], 64);
  ASSERT_EQ(j["messages"].size(), 2u);
  EXPECT_EQ(j["messages"][0]["role"], "system");
  EXPECT_EQ(j["messages"][1]["content"], "hi");
  EXPECT_FALSE(nlohmann::json::parse(EncodeChatRequest(Sample())).contains("max_tokens"));
}

TEST(ChatCodec, ResponseParsing) {
  EXPECT_EQ(DecodeChatResponse(Reply("Yes.")), "Yes.");
  EXPECT_THROW(DecodeChatResponse("{}"), TransportError);
  EXPECT_THROW(DecodeChatResponse("not json"), TransportError);
  EXPECT_THROW(DecodeChatResponse(R"({"choices": []})"), TransportError);
}

TEST(HttpTransport, PostsWithBearerKey) {
  std::string auth, body;
  LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    body = req.body;
    res.set_content(Reply("No."), "application/json");
  });
  HttpChatTransport t(server.base(), "secret-token", std::chrono::seconds(5));
  EXPECT_EQ(t.Complete(Sample()), "No.");
  EXPECT_EQ(auth, "Bearer secret-token");
  EXPECT_EQ(nlohmann::json::parse(body)["model"], "model-x");
}

TEST(HttpTransport, NoKeyNoHeader) {
  bool has_auth = true;
  LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
    has_auth = req.has_header("Authorization");
    res.set_content(Reply("ok"), "application/json");
  });
  HttpChatTransport t(server.base(), "", std::chrono::seconds(5));
  EXPECT_EQ(t.Complete(Sample()), "ok");
  EXPECT_FALSE(has_auth);
}

class StatusClass : public ::testing::TestWithParam<std::pair<int, bool>> {};

TEST_P(StatusClass, Retryability) {
  const auto [status, retryable] = GetParam();
  LocalServer server([status](const httplib::Request&, httplib::Response& res) {
    res.status = status;
    res.set_content("{\"error\": \"nope\"}", "application/json");
  });
  HttpChatTransport t(server.base(), "k", std::chrono::seconds(5));
  try {
    t.Complete(Sample());
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.retryable(), retryable) << status;
    EXPECT_NE(std::string(e.what()).find(std::to_string(status)), std::string::npos) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(Http, StatusClass,
                         ::testing::Values(std::pair{429, true}, std::pair{500, true},
                                           std::pair{503, true}, std::pair{400, false},
                                           std::pair{401, false}, std::pair{404, false}));

TEST(HttpTransport, RetriesThroughRateLimit) {
  std::atomic<int> calls{0};
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    if (calls.fetch_add(1) == 0) {
      res.status = 429;
      return;
    }
    res.set_content(Reply("Maybe."), "application/json");
  });
  HttpChatTransport t(server.base(), "k", std::chrono::seconds(5));
  std::vector<std::chrono::milliseconds> waits;
  EXPECT_EQ(CompleteWithRetry(t, Sample(), testing::InstantRetry(3, &waits)), "Maybe.");
  EXPECT_EQ(calls.load(), 2);
  EXPECT_EQ(waits.size(), 1u);
}

TEST(HttpTransport, ConnectionRefusedIsRetryable) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  HttpChatTransport t("http://127.0.0.1:" + std::to_string(port) + "/v1", "k",
                      std::chrono::seconds(2));
  try {
    t.Complete(Sample());
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_TRUE(e.retryable());
  }
}

}  // namespace
}  // namespace aidg
