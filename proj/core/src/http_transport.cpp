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

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace aidg {

HttpChatTransport::HttpChatTransport(std::string base_url, std::string api_key,
                                     std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  while (!base_url.empty() && base_url.back() == '/') base_url.pop_back();
  const std::size_t scheme = base_url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint must start with http:// or https://: " + base_url);
  }
  const std::size_t path = base_url.find('/', scheme + 3);
  scheme_host_port_ = base_url.substr(0, path);
  path_prefix_ = path == std::string::npos ? "" : base_url.substr(path);
}

std::string HttpChatTransport::Complete(const ChatRequest& request) {
  httplib::Client client(scheme_host_port_);
  if (!client.is_valid()) {
    throw TransportError("unsupported endpoint " + scheme_host_port_, false);
  }
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_key_);
  }
  auto res = client.Post(path_prefix_ + "/chat/completions", headers,
                         EncodeChatRequest(request), "application/json");
  if (!res) {
    throw TransportError("request to " + scheme_host_port_ + " failed: " +
                             httplib::to_string(res.error()),
                         true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError("HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw TransportError("HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200),
                         false);
  }
  return DecodeChatResponse(res->body);
}

std::string EncodeChatRequest(const ChatRequest& request) {
  nlohmann::ordered_json body;
  body["model"] = request.model_id;
  body["temperature"] = request.temperature;
  auto& messages = body["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", ToString(m.role)}, {"content", m.content}});
  }
  if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
  return body.dump();
}

std::string DecodeChatResponse(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& message = j.at("choices").at(0).at("message");
    if (message.at("content").is_null()) {
      throw TransportError("assistant message has no content", false);
    }
    return message.at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("malformed chat response: ") + e.what(), false);
  }
}

}  // namespace aidg
