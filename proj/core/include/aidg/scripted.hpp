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

#ifndef AIDG_SCRIPTED_HPP_
#define AIDG_SCRIPTED_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "aidg/agents.hpp"
#include "aidg/corpus.hpp"
#include "aidg/game.hpp"

// Deterministic agents used as test oracles and for offline tournaments.
namespace aidg {

enum class ScriptedKind {
  kOracleSeeker,          // greedy attribute splitter (AIDG-II)
  kTruthfulHolder,        // answers from the attribute matrix / confirms truth
  kLeakyHolder,           // states the secret at a fixed turn (AIDG-I)
  kStonewallHolder,       // refuses (AIDG-I) or always "maybe" (AIDG-II)
  kBlindRandomSeeker,     // seeded generic questions, never the secret
  kModeAConfirmerSeeker,  // states its hypothesis verbatim at a fixed turn
};

struct ScriptedAgentSpec {
  ScriptedKind kind = ScriptedKind::kStonewallHolder;
  int turn = 0;  // trigger turn for leaky-holder and mode-a-confirmer-seeker

  bool operator==(const ScriptedAgentSpec&) const = default;
};

// "oracle-seeker", "leaky-holder(4)", "mode-a-confirmer-seeker(3)", ...
// Throws AgentResolutionError on unknown kinds or malformed parameters.
ScriptedAgentSpec ParseScriptedSpec(std::string_view text);
std::string ToString(const ScriptedAgentSpec& spec);
bool IsSeekerKind(ScriptedKind kind);

std::unique_ptr<Agent> MakeScriptedAgent(const ScriptedAgentSpec& spec,
                                         const Ontology& ontology);

struct OracleMove {
  std::string utterance;
  bool is_lock = false;
  // Answers were contradictory and emptied the candidate set.
  bool anomaly = false;
};

// Keeps every word consistent with the yes/no answers so far ("maybe" prunes
// nothing), asks the question minimizing the worst-case remaining set (ties
// by attribute key), and locks once one candidate is left.
OracleMove OracleSeekerPolicy(const Transcript& transcript,
                              const Ontology& ontology);

// Indices of words consistent with every yes/no answer in the transcript.
std::vector<std::size_t> OracleCandidates(const Transcript& transcript,
                                          const Ontology& ontology,
                                          bool* anomaly = nullptr);

}  // namespace aidg

#endif  // AIDG_SCRIPTED_HPP_
