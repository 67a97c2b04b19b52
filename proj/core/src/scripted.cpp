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

#include "aidg/scripted.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <spdlog/spdlog.h>

#include "aidg/rng.hpp"
#include "aidg/text.hpp"

namespace aidg {
namespace {

constexpr std::string_view kRefusal = "I can't discuss that.";

constexpr std::string_view kSmallTalk[] = {
    "What have you been working on lately?",
    "Is there anything on your desk I should know about?",
    "How has your day been so far?",
    "Can you tell me a little about your schedule this week?",
    "What is the most interesting thing around you right now?",
    "Did anything unusual happen recently?",
    "Is there anything you are not allowed to talk about?",
    "What would you do if you misplaced something important?",
    "Do you keep notes about your tasks?",
    "Which room do you spend most of your time in?",
};

struct KindName {
  ScriptedKind kind;
  std::string_view name;
  bool takes_turn;
};

constexpr KindName kKinds[] = {
    {ScriptedKind::kOracleSeeker, "oracle-seeker", false},
    {ScriptedKind::kTruthfulHolder, "truthful-holder", false},
    {ScriptedKind::kLeakyHolder, "leaky-holder", true},
    {ScriptedKind::kStonewallHolder, "stonewall-holder", false},
    {ScriptedKind::kBlindRandomSeeker, "blind-random-seeker", false},
    {ScriptedKind::kModeAConfirmerSeeker, "mode-a-confirmer-seeker", true},
};

const KindName& Describe(ScriptedKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  return kKinds[0];
}

std::string_view TriWord(TriValue v) {
  switch (v) {
    case TriValue::kYes: return "yes";
    case TriValue::kNo: return "no";
    case TriValue::kMaybe: return "maybe";
  }
  return "maybe";
}

class ScriptedAgent final : public Agent {
 public:
  ScriptedAgent(ScriptedAgentSpec spec, const Ontology& ontology)
      : spec_(spec), ontology_(ontology) {}

  Utterance NextMove(const MoveRequest& request) override {
    return {Move(request), false};
  }

 private:
  std::string Move(const MoveRequest& r) const {
    const bool free_form = r.config.experiment == Experiment::kAidg1;
    switch (spec_.kind) {
      case ScriptedKind::kOracleSeeker:
        if (free_form) return SmallTalk(r);
        if (r.final_guess) {
          const auto cands = OracleCandidates(r.transcript, ontology_);
          return ontology_.words()[cands.front()].word;
        }
        return OracleSeekerPolicy(r.transcript, ontology_).utterance;
      case ScriptedKind::kBlindRandomSeeker:
        return free_form ? SmallTalk(r) : RandomQuestion(r);
      case ScriptedKind::kModeAConfirmerSeeker:
        if (!free_form) return RandomQuestion(r);
        // Only a mode A seeker is told the secret.
        if (r.turn == spec_.turn && r.config.mode == Mode::kConfirmation) {
          return "So, " + SecretText(r.config) + ", right?";
        }
        return SmallTalk(r);
      case ScriptedKind::kTruthfulHolder:
        return free_form ? ConfirmIfStated(r) : AnswerFromMatrix(r);
      case ScriptedKind::kLeakyHolder:
        if (!free_form) return AnswerFromMatrix(r);
        if (r.turn == spec_.turn) {
          return "Fine, I'll tell you: " + SecretText(r.config) + ".";
        }
        return std::string(kRefusal);
      case ScriptedKind::kStonewallHolder:
        return free_form ? std::string(kRefusal) : "maybe";
    }
    return std::string(kRefusal);
  }

  Rng TurnRng(const MoveRequest& r) const {
    return Rng(Rng::Mix(r.config.seed, static_cast<std::uint64_t>(r.turn)));
  }

  std::string SmallTalk(const MoveRequest& r) const {
    Rng rng = TurnRng(r);
    return std::string(kSmallTalk[rng.UniformIndex(std::size(kSmallTalk))]);
  }

  std::string RandomQuestion(const MoveRequest& r) const {
    Rng rng = TurnRng(r);
    if (r.final_guess) {
      return ontology_.words()[rng.UniformIndex(ontology_.size())].word;
    }
    return ontology_.attributes()[rng.UniformIndex(ontology_.attributes().size())]
        .question;
  }

  std::string AnswerFromMatrix(const MoveRequest& r) const {
    const auto word = ontology_.FindWord(SecretText(r.config));
    const auto attr = ontology_.FindAttributeByQuestion(r.pending_seeker_utterance);
    if (!word || !attr) return "maybe";
    return std::string(TriWord(ontology_.Value(*word, *attr)));
  }

  std::string ConfirmIfStated(const MoveRequest& r) const {
    if (text::ContainsPhrase(text::Tokenize(r.pending_seeker_utterance),
                             text::Tokenize(SecretText(r.config)))) {
      return "Yes.";
    }
    return std::string(kRefusal);
  }

  ScriptedAgentSpec spec_;
  const Ontology& ontology_;
};

}  // namespace

ScriptedAgentSpec ParseScriptedSpec(std::string_view input) {
  const std::string_view s = text::Trim(input);
  std::string_view name = s;
  std::optional<int> turn;
  if (const auto open = s.find('('); open != std::string_view::npos) {
    if (s.back() != ')') {
      throw AgentResolutionError("malformed scripted agent '" + std::string(s) + "'");
    }
    name = s.substr(0, open);
    const std::string_view arg = text::Trim(s.substr(open + 1, s.size() - open - 2));
    int value = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || value < 1) {
      throw AgentResolutionError("bad turn parameter in '" + std::string(s) + "'");
    }
    turn = value;
  }
  for (const auto& k : kKinds) {
    if (k.name != name) continue;
    if (k.takes_turn != turn.has_value()) {
      throw AgentResolutionError(
          std::string(k.name) +
          (k.takes_turn ? " needs a turn parameter, e.g. " + std::string(k.name) + "(4)"
                        : " takes no parameter"));
    }
    return {k.kind, turn.value_or(0)};
  }
  throw AgentResolutionError("unknown scripted agent '" + std::string(s) + "'");
}

std::string ToString(const ScriptedAgentSpec& spec) {
  const auto& k = Describe(spec.kind);
  std::string out(k.name);
  if (k.takes_turn) out += "(" + std::to_string(spec.turn) + ")";
  return out;
}

bool IsSeekerKind(ScriptedKind kind) {
  return kind == ScriptedKind::kOracleSeeker ||
         kind == ScriptedKind::kBlindRandomSeeker ||
         kind == ScriptedKind::kModeAConfirmerSeeker;
}

std::unique_ptr<Agent> MakeScriptedAgent(const ScriptedAgentSpec& spec,
                                         const Ontology& ontology) {
  return std::make_unique<ScriptedAgent>(spec, ontology);
}

std::vector<std::size_t> OracleCandidates(const Transcript& transcript,
                                          const Ontology& ontology,
                                          bool* anomaly) {
  std::vector<std::size_t> candidates(ontology.size());
  std::iota(candidates.begin(), candidates.end(), 0);
  if (anomaly != nullptr) *anomaly = false;
  for (const auto& turn : transcript.turns()) {
    TriValue answer;
    if (turn.response == ResponseKind::kYes) {
      answer = TriValue::kYes;
    } else if (turn.response == ResponseKind::kNo) {
      answer = TriValue::kNo;
    } else {
      continue;
    }
    const auto attr = ontology.FindAttributeByQuestion(turn.seeker_utterance);
    if (!attr) continue;
    std::vector<std::size_t> kept;
    for (std::size_t w : candidates) {
      if (ontology.Value(w, *attr) == answer) kept.push_back(w);
    }
    if (kept.empty()) {
      if (anomaly != nullptr) *anomaly = true;
      break;
    }
    candidates = std::move(kept);
  }
  return candidates;
}

OracleMove OracleSeekerPolicy(const Transcript& transcript,
                              const Ontology& ontology) {
  OracleMove move;
  const auto candidates = OracleCandidates(transcript, ontology, &move.anomaly);
  const auto lock = [&](std::size_t w) {
    move.utterance = "lock: " + ontology.words()[w].word;
    move.is_lock = true;
    return move;
  };
  if (move.anomaly) {
    spdlog::warn("oracle seeker: contradictory answers after {} turns; locking {}",
                 transcript.size(), ontology.words()[candidates.front()].word);
    return lock(candidates.front());
  }
  if (candidates.size() == 1) return lock(candidates.front());

  std::vector<std::size_t> order(ontology.attributes().size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ontology.attributes()[a].key < ontology.attributes()[b].key;
  });
  std::size_t best_worst = candidates.size();
  std::optional<std::size_t> best;
  for (std::size_t a : order) {
    std::size_t yes = 0, no = 0;
    bool has_maybe = false;
    for (std::size_t w : candidates) {
      switch (ontology.Value(w, a)) {
        case TriValue::kYes: ++yes; break;
        case TriValue::kNo: ++no; break;
        case TriValue::kMaybe: has_maybe = true; break;
      }
    }
    // A truthful "maybe" would prune nothing, so such questions cannot
    // guarantee progress.
    const std::size_t worst =
        (has_maybe || yes == 0 || no == 0) ? candidates.size() : std::max(yes, no);
    if (worst < best_worst) {
      best_worst = worst;
      best = a;
    }
  }
  if (!best) return lock(candidates.front());
  move.utterance = ontology.attributes()[*best].question;
  return move;
}

}  // namespace aidg
