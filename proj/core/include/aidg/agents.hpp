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

#ifndef AIDG_AGENTS_HPP_
#define AIDG_AGENTS_HPP_

#include <chrono>
#include <deque>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/error.hpp"
#include "aidg/game.hpp"

namespace aidg {

inline constexpr double kAgentTemperature = 0.7;

enum class ChatRole { kSystem, kUser, kAssistant };
std::string_view ToString(ChatRole role);

struct ChatMessage {
  ChatRole role = ChatRole::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string model_id;
  double temperature = kAgentTemperature;
  std::vector<ChatMessage> messages;
  std::optional<int> max_tokens;
};

// Transport-level failure. Retryable failures are retried by
// CompleteWithRetry; others fail immediately.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, bool retryable)
      : Error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// Sends a chat-completion request and returns the first assistant message.
// Implementations must tolerate concurrent calls.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string Complete(const ChatRequest& request) = 0;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double backoff_multiplier = 2.0;
  // Defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Throws AgentFailure once attempts are exhausted or on a non-retryable error.
std::string CompleteWithRetry(ChatTransport& transport, const ChatRequest& request,
                              const RetryPolicy& policy);

struct AgentSpec {
  std::string alias;
  std::string endpoint;  // base URL; "/chat/completions" is appended
  std::string model_id;
  std::string api_key_env;  // name of the environment variable, may be empty
  double temperature = kAgentTemperature;
  int max_retries = 3;
  std::chrono::seconds timeout{120};
  std::size_t max_output_chars = 4000;
  std::optional<int> max_tokens;
};

// Throws ConfigError when temperature is outside [0, 2] or fields are empty.
void ValidateAgentSpec(const AgentSpec& spec);

// Everything an agent sees when asked for its next utterance.
struct MoveRequest {
  const GameConfig& config;
  Role role;
  int turn;  // 1-based turn being played
  const Transcript& transcript;  // completed turns only
  // Holder only: the seeker utterance of the current turn.
  std::string_view pending_seeker_utterance;
  // Engine-authored follow-ups for this move (re-prompts, final-guess order),
  // rendered after the history.
  std::vector<ChatMessage> addendum;
  bool final_guess = false;
};

struct Utterance {
  std::string text;
  bool truncated = false;
};

// An agent handle is used by at most one game at a time.
class Agent {
 public:
  virtual ~Agent() = default;
  // Throws AgentFailure when no reply can be produced.
  virtual Utterance NextMove(const MoveRequest& request) = 0;
};

// System prompt for (experiment, role, mode) with {secret} substituted.
// Throws ConfigError for invalid combinations such as AIDG-II with mode A.
std::string RenderPrompt(Experiment experiment, Role role, Mode mode,
                         std::string_view secret);

// Chat history as seen by `request.role`: own utterances as assistant,
// opponent utterances as user, system prompt first.
std::vector<ChatMessage> RenderHistory(std::string_view system_prompt,
                                       const MoveRequest& request);

// Agent backed by a chat-completion endpoint.
class RemoteAgent final : public Agent {
 public:
  RemoteAgent(AgentSpec spec, std::shared_ptr<ChatTransport> transport,
              RetryPolicy retry = {});

  Utterance NextMove(const MoveRequest& request) override;

  const AgentSpec& spec() const { return spec_; }

 private:
  AgentSpec spec_;
  std::shared_ptr<ChatTransport> transport_;
  RetryPolicy retry_;
};

// Serves canned replies from a trace file, one JSON object per line:
//   {"model": "<model_id>", "content": "<reply>"}
// Replies are consumed in file order per model id. Requests are recorded.
class ReplayTransport final : public ChatTransport {
 public:
  explicit ReplayTransport(std::istream& in);

  std::string Complete(const ChatRequest& request) override;

  std::vector<ChatRequest> requests() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::deque<std::string>> replies_;
  std::vector<ChatRequest> requests_;
};

}  // namespace aidg

#endif  // AIDG_AGENTS_HPP_
