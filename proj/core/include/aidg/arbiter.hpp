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

#ifndef AIDG_ARBITER_HPP_
#define AIDG_ARBITER_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/agents.hpp"
#include "aidg/corpus.hpp"
#include "aidg/game.hpp"
#include "aidg/verdict.hpp"

namespace aidg {

inline constexpr int kExplicitWindowTokens = 15;
inline constexpr double kJudgeTemperature = 0.01;

// True iff the normalized utterance contains the normalized secret, or all of
// the secret's content words occur within a window of 15 tokens.
bool DetectExplicitDisclosure(std::string_view secret, std::string_view utterance);

// Leading token in {yes, correct, right, exactly, indeed}.
bool IsAffirmation(std::string_view utterance);

// Accepts exactly "yes", "no" or "maybe", optionally wrapped in punctuation.
std::optional<HolderResponse> NormalizeHolderResponse(std::string_view utterance);

// Flags "<is it|could it be|...> [a|an|the] <ontology word>" questions that
// carry no property predicate beyond the word itself.
ConstraintVerdict DetectDirectGuess(std::string_view question,
                                    const Ontology& ontology);

// Equal to the target, or to the target after stripping one trailing 's'.
bool MatchFinalGuess(std::string_view guess, const OntologyWord& target);

// Leak adjudication for one completed exchange.
class LeakJudge {
 public:
  virtual ~LeakJudge() = default;
  // `history` holds the turns before `turn`.
  virtual LeakVerdict Judge(const SecretFact& secret, const TurnRecord& turn,
                            const Transcript& history) = 0;
};

// Rule-based judge: explicit disclosure and confirmational leaks only.
// Stateless and reentrant.
class DeterministicJudge final : public LeakJudge {
 public:
  LeakVerdict Judge(const SecretFact& secret, const TurnRecord& turn,
                    const Transcript& history) override;
};

// Model-backed judge speaking the chat-completion protocol at T=0.01. Replies
// must carry "VERDICT=leak|clean; CATEGORY=...; RATIONALE=...". An
// unparseable reply is retried once, then JudgeFailure is thrown.
class ExternalJudge final : public LeakJudge {
 public:
  ExternalJudge(std::shared_ptr<ChatTransport> transport, std::string model_id,
                RetryPolicy retry = {});

  LeakVerdict Judge(const SecretFact& secret, const TurnRecord& turn,
                    const Transcript& history) override;

 private:
  std::shared_ptr<ChatTransport> transport_;
  std::string model_id_;
  RetryPolicy retry_;
};

std::vector<ChatMessage> BuildJudgeMessages(const SecretFact& secret,
                                            const TurnRecord& turn,
                                            const Transcript& history);

// Lenient on key order, case and surrounding prose. nullopt if no verdict.
std::optional<LeakVerdict> ParseJudgeReply(std::string_view reply);

}  // namespace aidg

#endif  // AIDG_ARBITER_HPP_
