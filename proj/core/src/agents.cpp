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

#include "aidg/agents.hpp"

#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "aidg/embedded.hpp"
#include "aidg/text.hpp"

namespace aidg {
namespace {

// Chat APIs expect a user turn before the first assistant turn.
constexpr std::string_view kSeekerOpening = "The game begins. Make your first move.";

std::string_view TemplateFile(Experiment experiment, Role role, Mode mode) {
  if (experiment == Experiment::kAidg1) {
    if (mode == Mode::kNotApplicable) {
      throw ConfigError("AIDG-I prompts need mode A or B");
    }
    if (role == Role::kHolder) return "prompts/aidg1_holder.txt";
    return mode == Mode::kConfirmation ? "prompts/aidg1_seeker_mode_a.txt"
                                       : "prompts/aidg1_seeker_mode_b.txt";
  }
  if (mode != Mode::kNotApplicable) {
    throw ConfigError("AIDG-II has no seeker modes");
  }
  return role == Role::kHolder ? "prompts/aidg2_holder.txt"
                               : "prompts/aidg2_seeker.txt";
}

// Cuts at a UTF-8 character boundary no later than `limit` bytes.
std::size_t Utf8Boundary(const std::string& s, std::size_t limit) {
  std::size_t cut = std::min(limit, s.size());
  while (cut > 0 && cut < s.size() &&
         (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) {
    --cut;
  }
  return cut;
}

}  // namespace

std::string_view ToString(ChatRole role) {
  switch (role) {
    case ChatRole::kSystem: return "system";
    case ChatRole::kUser: return "user";
    case ChatRole::kAssistant: return "assistant";
  }
  return "user";
}

std::string CompleteWithRetry(ChatTransport& transport, const ChatRequest& request,
                              const RetryPolicy& policy) {
  const int attempts = std::max(1, policy.max_attempts);
  auto backoff = policy.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    try {
      return transport.Complete(request);
    } catch (const TransportError& e) {
      last_error = e.what();
      if (!e.retryable()) {
        throw AgentFailure("model " + request.model_id + ": " + last_error);
      }
    }
    if (attempt == attempts) break;
    if (policy.sleep) {
      policy.sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff = std::chrono::milliseconds(static_cast<std::int64_t>(
        std::llround(static_cast<double>(backoff.count()) * policy.backoff_multiplier)));
  }
  throw AgentFailure("model " + request.model_id + ": giving up after " +
                     std::to_string(attempts) + " attempts: " + last_error);
}

void ValidateAgentSpec(const AgentSpec& spec) {
  if (spec.alias.empty()) throw ConfigError("agent alias is empty");
  if (spec.endpoint.empty()) {
    throw ConfigError("agent " + spec.alias + ": endpoint is empty");
  }
  if (spec.model_id.empty()) {
    throw ConfigError("agent " + spec.alias + ": model_id is empty");
  }
  if (!(spec.temperature >= 0.0 && spec.temperature <= 2.0)) {
    throw ConfigError("agent " + spec.alias + ": temperature must be in [0, 2]");
  }
  if (spec.max_retries < 1) {
    throw ConfigError("agent " + spec.alias + ": max_retries must be >= 1");
  }
  if (spec.timeout.count() <= 0) {
    throw ConfigError("agent " + spec.alias + ": timeout must be positive");
  }
}

std::string RenderPrompt(Experiment experiment, Role role, Mode mode,
                         std::string_view secret) {
  std::string prompt(EmbeddedFile(TemplateFile(experiment, role, mode)));
  constexpr std::string_view kPlaceholder = "{secret}";
  for (std::size_t pos = prompt.find(kPlaceholder); pos != std::string::npos;
       pos = prompt.find(kPlaceholder, pos + secret.size())) {
    prompt.replace(pos, kPlaceholder.size(), secret);
  }
  return prompt;
}

std::vector<ChatMessage> RenderHistory(std::string_view system_prompt,
                                       const MoveRequest& request) {
  std::vector<ChatMessage> messages;
  messages.push_back({ChatRole::kSystem, std::string(system_prompt)});
  if (request.role == Role::kSeeker) {
    messages.push_back({ChatRole::kUser, std::string(kSeekerOpening)});
    for (const auto& turn : request.transcript.turns()) {
      messages.push_back({ChatRole::kAssistant, turn.seeker_utterance});
      if (!turn.holder_utterance.empty()) {
        messages.push_back({ChatRole::kUser, turn.holder_utterance});
      } else if (!turn.notes.empty()) {
        messages.push_back({ChatRole::kUser, text::Join(turn.notes, "\n")});
      }
    }
  } else {
    for (const auto& turn : request.transcript.turns()) {
      if (turn.holder_utterance.empty()) continue;
      messages.push_back({ChatRole::kUser, turn.seeker_utterance});
      messages.push_back({ChatRole::kAssistant, turn.holder_utterance});
    }
    messages.push_back(
        {ChatRole::kUser, std::string(request.pending_seeker_utterance)});
  }
  messages.insert(messages.end(), request.addendum.begin(), request.addendum.end());
  return messages;
}

RemoteAgent::RemoteAgent(AgentSpec spec, std::shared_ptr<ChatTransport> transport,
                         RetryPolicy retry)
    : spec_(std::move(spec)), transport_(std::move(transport)), retry_(std::move(retry)) {
  retry_.max_attempts = spec_.max_retries;
}

Utterance RemoteAgent::NextMove(const MoveRequest& request) {
  const std::string system_prompt =
      RenderPrompt(request.config.experiment, request.role, request.config.mode,
                   SecretText(request.config));
  ChatRequest chat;
  chat.model_id = spec_.model_id;
  chat.temperature = spec_.temperature;
  chat.messages = RenderHistory(system_prompt, request);
  chat.max_tokens = spec_.max_tokens;
  Utterance out{CompleteWithRetry(*transport_, chat, retry_), false};
  if (out.text.size() > spec_.max_output_chars) {
    out.text.resize(Utf8Boundary(out.text, spec_.max_output_chars));
    out.truncated = true;
  }
  return out;
}

ReplayTransport::ReplayTransport(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      replies_[j.at("model").get<std::string>()].push_back(
          j.at("content").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("replay fixture line " + std::to_string(line_number) +
                        ": " + e.what());
    }
  }
}

std::string ReplayTransport::Complete(const ChatRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  requests_.push_back(request);
  auto it = replies_.find(request.model_id);
  if (it == replies_.end() || it->second.empty()) {
    throw TransportError("replay exhausted for model " + request.model_id, false);
  }
  std::string reply = std::move(it->second.front());
  it->second.pop_front();
  return reply;
}

std::vector<ChatRequest> ReplayTransport::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

}  // namespace aidg
