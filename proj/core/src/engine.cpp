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

#include "aidg/engine.hpp"

#include <chrono>
#include <set>

#include <spdlog/spdlog.h>

#include "aidg/text.hpp"

namespace aidg {
namespace {

// Thrown inside a game to end it as aborted.
struct Abort {
  std::string reason;
};

std::int64_t NowUnixMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

WinReason LeakReason(LeakCategory category) {
  switch (category) {
    case LeakCategory::kExplicit: return WinReason::kLeakExplicit;
    case LeakCategory::kConfirmational: return WinReason::kLeakConfirmational;
    case LeakCategory::kParaphrase: return WinReason::kLeakParaphrase;
    case LeakCategory::kImplicit: return WinReason::kLeakImplicit;
  }
  return WinReason::kLeakExplicit;
}

ResponseKind ToResponseKind(HolderResponse r) {
  switch (r) {
    case HolderResponse::kYes: return ResponseKind::kYes;
    case HolderResponse::kNo: return ResponseKind::kNo;
    case HolderResponse::kMaybe: return ResponseKind::kMaybe;
  }
  return ResponseKind::kMaybe;
}

Outcome Finish(WinReason reason, int turn) {
  return {WinnerOf(reason), reason, turn};
}

class GameRunner {
 public:
  GameRunner(const GameConfig& config, Agent& seeker, Agent& holder,
             LeakJudge& judge, const Ontology& ontology)
      : config_(config),
        seeker_(seeker),
        holder_(holder),
        judge_(judge),
        ontology_(ontology) {
    record_.config = config;
  }

  GameRecord Run() {
    const std::int64_t started = NowUnixMs();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (config_.experiment == Experiment::kAidg1) {
        RunFreeForm();
      } else {
        RunConstrained();
      }
    } catch (const Abort& abort) {
      record_.outcome.reset();
      record_.lock.reset();
      record_.aborted = true;
      record_.abort_reason = abort.reason;
      spdlog::warn("game {} aborted: {}", config_.game_id, abort.reason);
    }
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    record_.timing = GameTiming{
        started,
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()};
    return std::move(record_);
  }

 private:
  Utterance Ask(Agent& agent, const MoveRequest& request) {
    try {
      return agent.NextMove(request);
    } catch (const AgentFailure& e) {
      throw Abort{std::string(ToString(request.role)) + " agent failed at turn " +
                  std::to_string(request.turn) + ": " + e.what()};
    }
  }

  void RunFreeForm() {
    const auto& secret = std::get<SecretFact>(config_.secret);
    for (int t = 1; t <= config_.max_turns; ++t) {
      const Utterance s =
          Ask(seeker_, MoveRequest{config_, Role::kSeeker, t, transcript(), {}, {}, false});
      const Utterance h = Ask(
          holder_, MoveRequest{config_, Role::kHolder, t, transcript(), s.text, {}, false});
      TurnRecord turn;
      turn.index = t;
      turn.seeker_utterance = s.text;
      turn.holder_utterance = h.text;
      turn.response = ResponseKind::kFreeForm;
      turn.seeker_truncated = s.truncated;
      turn.holder_truncated = h.truncated;
      LeakVerdict verdict;
      try {
        verdict = judge_.Judge(secret, turn, transcript());
      } catch (const JudgeFailure& e) {
        throw Abort{"judge failed at turn " + std::to_string(t) + ": " + e.what()};
      } catch (const AgentFailure& e) {
        throw Abort{"judge failed at turn " + std::to_string(t) + ": " + e.what()};
      }
      turn.verdict = verdict;
      record_.transcript.Append(std::move(turn));
      if (verdict.leaked) {
        record_.outcome = Finish(LeakReason(*verdict.category), t);
        return;
      }
    }
    record_.outcome = Finish(WinReason::kHorizonExhausted, config_.max_turns);
  }

  void RunConstrained() {
    const auto& target = std::get<OntologyWord>(config_.secret);
    const int question_turns = config_.max_turns - 1;
    bool failed_lock = false;
    for (int t = 1; t <= question_turns; ++t) {
      const Utterance s =
          Ask(seeker_, MoveRequest{config_, Role::kSeeker, t, transcript(), {}, {}, false});
      TurnRecord turn;
      turn.index = t;
      turn.seeker_utterance = s.text;
      turn.seeker_truncated = s.truncated;
      turn.verdict = ConstraintVerdict::Ok();

      if (HasLockPrefix(s.text)) {
        if (failed_lock) {
          turn.verdict = ConstraintVerdict::Violation(ConstraintKind::kDuplicateLock,
                                                      s.text);
          record_.transcript.Append(std::move(turn));
          record_.outcome = Finish(WinReason::kDisqualification, t);
          return;
        }
        if (auto guess = ParseLock(s.text)) {
          const bool correct = MatchFinalGuess(*guess, target);
          record_.lock = LockEvent{t, *guess};
          record_.transcript.Append(std::move(turn));
          record_.outcome =
              Finish(correct ? WinReason::kCorrectLock : WinReason::kWrongLock, t);
          return;
        }
        // The attempt is spent; the turn is consumed without a holder reply.
        failed_lock = true;
        turn.notes.emplace_back(kUnparsedLockNote);
        record_.transcript.Append(std::move(turn));
        continue;
      }

      const ConstraintVerdict guess = DetectDirectGuess(s.text, ontology_);
      if (guess.violation) {
        turn.verdict = guess;
        record_.transcript.Append(std::move(turn));
        record_.outcome = Finish(WinReason::kDisqualification, t);
        return;
      }

      MoveRequest holder_request{config_, Role::kHolder, t, transcript(), s.text, {}, false};
      Utterance h = Ask(holder_, holder_request);
      auto response = NormalizeHolderResponse(h.text);
      if (!response) {
        turn.rejected.push_back(h.text);
        turn.notes.emplace_back(kHolderCorrection);
        holder_request.addendum = {{ChatRole::kAssistant, h.text},
                                   {ChatRole::kSystem, std::string(kHolderCorrection)}};
        h = Ask(holder_, holder_request);
        response = NormalizeHolderResponse(h.text);
        if (!response) {
          throw Abort{"holder gave no valid yes/no/maybe at turn " +
                      std::to_string(t) + " after a re-prompt"};
        }
      }
      turn.holder_utterance = h.text;
      turn.holder_truncated = h.truncated;
      turn.response = ToResponseKind(*response);
      record_.transcript.Append(std::move(turn));
    }
    ForcedFinalGuess(target);
  }

  void ForcedFinalGuess(const OntologyWord& target) {
    const int t = config_.max_turns;
    TurnRecord turn;
    turn.index = t;
    turn.notes.emplace_back(kFinalGuessOrder);
    MoveRequest request{config_, Role::kSeeker, t, transcript(), {}, {}, true};
    request.addendum = {{ChatRole::kSystem, std::string(kFinalGuessOrder)}};
    Utterance reply = Ask(seeker_, request);
    auto guess = ExtractFinalGuess(reply.text, ontology_);
    if (!guess) {
      turn.rejected.push_back(reply.text);
      turn.notes.emplace_back(kFinalGuessCorrection);
      request.addendum.push_back({ChatRole::kAssistant, reply.text});
      request.addendum.push_back(
          {ChatRole::kSystem, std::string(kFinalGuessCorrection)});
      reply = Ask(seeker_, request);
      guess = ExtractFinalGuess(reply.text, ontology_);
      if (!guess) throw Abort{"no final guess could be read after a re-prompt"};
    }
    if (guess->ambiguous) {
      spdlog::warn("game {}: final guess names several words; using '{}'",
                   config_.game_id, guess->guess);
    }
    turn.seeker_utterance = reply.text;
    turn.seeker_truncated = reply.truncated;
    turn.verdict = ConstraintVerdict::Ok();
    record_.transcript.Append(std::move(turn));
    record_.outcome = Finish(MatchFinalGuess(guess->guess, target)
                                 ? WinReason::kCorrectFinalGuess
                                 : WinReason::kWrongFinalGuess,
                             t);
  }

  const Transcript& transcript() const { return record_.transcript; }

  const GameConfig& config_;
  Agent& seeker_;
  Agent& holder_;
  LeakJudge& judge_;
  const Ontology& ontology_;
  GameRecord record_;
};

std::optional<std::string_view> AfterLockPrefix(std::string_view utterance) {
  std::string_view s = text::Trim(utterance);
  if (s.size() < 4 || text::ToLower(s.substr(0, 4)) != "lock") return std::nullopt;
  s.remove_prefix(4);
  s = text::Trim(s);
  if (s.empty() || s.front() != ':') return std::nullopt;
  return s.substr(1);
}

}  // namespace

GameRecord RunGame(const GameConfig& config, Agent& seeker, Agent& holder,
                   LeakJudge& judge, const Ontology& ontology) {
  ValidateGameConfig(config, /*allow_self_play=*/true);
  return GameRunner(config, seeker, holder, judge, ontology).Run();
}

bool HasLockPrefix(std::string_view utterance) {
  return AfterLockPrefix(utterance).has_value();
}

std::optional<std::string> ParseLock(std::string_view utterance) {
  const auto after = AfterLockPrefix(utterance);
  if (!after) return std::nullopt;
  std::string_view rest = *after;
  rest = rest.substr(0, rest.find('\n'));
  if (const auto open = rest.find('['); open != std::string_view::npos) {
    const auto close = rest.find(']', open);
    rest = rest.substr(open + 1, close == std::string_view::npos
                                     ? std::string_view::npos
                                     : close - open - 1);
  }
  rest = rest.substr(0, rest.find_first_of(".!?;,"));
  auto tokens = text::Tokenize(rest);
  if (!tokens.empty() &&
      (tokens.front() == "a" || tokens.front() == "an" || tokens.front() == "the")) {
    tokens.erase(tokens.begin());
  }
  if (tokens.empty()) return std::nullopt;
  return text::Join(tokens, " ");
}

std::optional<FinalGuess> ExtractFinalGuess(std::string_view reply,
                                            const Ontology& ontology) {
  if (auto lock = ParseLock(reply)) return FinalGuess{*lock, false};
  const auto tokens = text::Tokenize(reply);
  std::optional<std::size_t> last;
  std::set<std::size_t> named;
  for (const auto& token : tokens) {
    if (auto w = ontology.FindWord(token)) {
      last = w;
      named.insert(*w);
    }
  }
  if (last) return FinalGuess{ontology.words()[*last].word, named.size() > 1};
  if (tokens.size() == 1) return FinalGuess{tokens.front(), false};
  return std::nullopt;
}

}  // namespace aidg
