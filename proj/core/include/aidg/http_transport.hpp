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

#ifndef AIDG_HTTP_TRANSPORT_HPP_
#define AIDG_HTTP_TRANSPORT_HPP_

#include <chrono>
#include <string>

#include "aidg/agents.hpp"

namespace aidg {

// OpenAI-compatible chat-completion client. POSTs
//   {"model", "temperature", "messages": [{"role", "content"}], "max_tokens"?}
// to <base_url>/chat/completions and returns choices[0].message.content.
// Connection errors, 429 and 5xx are retryable; other statuses are not.
class HttpChatTransport final : public ChatTransport {
 public:
  HttpChatTransport(std::string base_url, std::string api_key,
                    std::chrono::seconds timeout = std::chrono::seconds(120));

  std::string Complete(const ChatRequest& request) override;

 private:
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

// Request body for a chat completion; exposed for tests.
std::string EncodeChatRequest(const ChatRequest& request);
// Throws TransportError (non-retryable) when no assistant message is present.
std::string DecodeChatResponse(const std::string& body);

}  // namespace aidg

#endif  // AIDG_HTTP_TRANSPORT_HPP_
