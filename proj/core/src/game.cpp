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

#include "aidg/game.hpp"

#include <array>
#include <stdexcept>

#include "aidg/error.hpp"

namespace aidg {
namespace {

template <typename E, std::size_t N>
E ParseName(std::string_view s, const std::array<E, N>& values,
            std::string_view what) {
  for (E v : values) {
    if (ToString(v) == s) return v;
  }
  throw ConfigError("unknown " + std::string(what) + ": '" + std::string(s) + "'");
}

}  // namespace

int DefaultMaxTurns(Experiment experiment) {
  return experiment == Experiment::kAidg1 ? kAidg1MaxTurns : kAidg2MaxTurns;
}

void ValidateGameConfig(const GameConfig& config, bool allow_self_play) {
  if (config.seeker_model.empty() || config.holder_model.empty()) {
    throw ConfigError("game " + config.game_id + ": empty model alias");
  }
  if (!allow_self_play && config.seeker_model == config.holder_model) {
    throw ConfigError("game " + config.game_id + ": self-play (" +
                      config.seeker_model + ") is disabled");
  }
  if (config.max_turns != DefaultMaxTurns(config.experiment)) {
    throw ConfigError("game " + config.game_id + ": max_turns must be " +
                      std::to_string(DefaultMaxTurns(config.experiment)));
  }
  if (config.experiment == Experiment::kAidg1) {
    if (config.mode == Mode::kNotApplicable) {
      throw ConfigError("game " + config.game_id + ": AIDG-I needs mode A or B");
    }
    if (!std::holds_alternative<SecretFact>(config.secret)) {
      throw ConfigError("game " + config.game_id + ": AIDG-I needs a secret fact");
    }
  } else {
    if (config.mode != Mode::kNotApplicable) {
      throw ConfigError("game " + config.game_id + ": AIDG-II has no mode");
    }
    if (!std::holds_alternative<OntologyWord>(config.secret)) {
      throw ConfigError("game " + config.game_id +
                        ": AIDG-II needs an ontology word");
    }
  }
  if (SecretText(config).empty()) {
    throw ConfigError("game " + config.game_id + ": empty secret");
  }
}

const std::string& SecretText(const GameConfig& config) {
  if (const auto* fact = std::get_if<SecretFact>(&config.secret)) {
    return fact->text;
  }
  return std::get<OntologyWord>(config.secret).word;
}

void Transcript::Append(TurnRecord turn) {
  if (turn.index != static_cast<int>(turns_.size()) + 1) {
    throw std::logic_error("transcript turn " + std::to_string(turn.index) +
                           " appended after " + std::to_string(turns_.size()));
  }
  turns_.push_back(std::move(turn));
}

std::pair<int, int> ScoreOf(const Outcome& outcome) {
  return outcome.winner == Role::kSeeker ? std::pair{1, 0} : std::pair{0, 1};
}

std::pair<int, int> ScoreOf(const GameRecord& record) {
  if (record.aborted || !record.outcome) {
    throw RatingError("game " + record.config.game_id + " was aborted: no score");
  }
  return ScoreOf(*record.outcome);
}

Role WinnerOf(WinReason reason) {
  switch (reason) {
    case WinReason::kLeakExplicit:
    case WinReason::kLeakConfirmational:
    case WinReason::kLeakParaphrase:
    case WinReason::kLeakImplicit:
    case WinReason::kCorrectLock:
    case WinReason::kCorrectFinalGuess:
      return Role::kSeeker;
    case WinReason::kWrongLock:
    case WinReason::kWrongFinalGuess:
    case WinReason::kDisqualification:
    case WinReason::kHorizonExhausted:
      return Role::kHolder;
  }
  return Role::kHolder;
}

bool IsLeak(WinReason reason) {
  return reason == WinReason::kLeakExplicit ||
         reason == WinReason::kLeakConfirmational ||
         reason == WinReason::kLeakParaphrase ||
         reason == WinReason::kLeakImplicit;
}

bool IsLockOrGuess(WinReason reason) {
  return reason == WinReason::kCorrectLock || reason == WinReason::kWrongLock ||
         reason == WinReason::kCorrectFinalGuess ||
         reason == WinReason::kWrongFinalGuess;
}

std::string_view ToString(Experiment e) {
  return e == Experiment::kAidg1 ? "AIDG-I" : "AIDG-II";
}

std::string_view ToString(Mode m) {
  switch (m) {
    case Mode::kConfirmation: return "A";
    case Mode::kBlind: return "B";
    case Mode::kNotApplicable: return "-";
  }
  return "-";
}

std::string_view ToString(Role r) {
  return r == Role::kSeeker ? "seeker" : "holder";
}

std::string_view ToString(ResponseKind k) {
  switch (k) {
    case ResponseKind::kYes: return "yes";
    case ResponseKind::kNo: return "no";
    case ResponseKind::kMaybe: return "maybe";
    case ResponseKind::kFreeForm: return "free-form";
    case ResponseKind::kNone: return "none";
  }
  return "none";
}

std::string_view ToString(WinReason r) {
  switch (r) {
    case WinReason::kLeakExplicit: return "leak-explicit";
    case WinReason::kLeakConfirmational: return "leak-confirmational";
    case WinReason::kLeakParaphrase: return "leak-paraphrase";
    case WinReason::kLeakImplicit: return "leak-implicit";
    case WinReason::kCorrectLock: return "correct-lock";
    case WinReason::kCorrectFinalGuess: return "correct-final-guess";
    case WinReason::kWrongLock: return "wrong-lock";
    case WinReason::kWrongFinalGuess: return "wrong-final-guess";
    case WinReason::kDisqualification: return "disqualification";
    case WinReason::kHorizonExhausted: return "horizon-exhausted";
  }
  return "horizon-exhausted";
}

std::string_view ToString(LeakCategory c) {
  switch (c) {
    case LeakCategory::kExplicit: return "explicit";
    case LeakCategory::kConfirmational: return "confirmational";
    case LeakCategory::kParaphrase: return "paraphrase";
    case LeakCategory::kImplicit: return "implicit";
  }
  return "explicit";
}

std::string_view ToString(ConstraintKind k) {
  return k == ConstraintKind::kDirectGuess ? "direct-guess" : "duplicate-lock";
}

std::string_view ToString(HolderResponse r) {
  switch (r) {
    case HolderResponse::kYes: return "yes";
    case HolderResponse::kNo: return "no";
    case HolderResponse::kMaybe: return "maybe";
  }
  return "maybe";
}

Experiment ParseExperiment(std::string_view s) {
  if (s == "aidg1") return Experiment::kAidg1;
  if (s == "aidg2") return Experiment::kAidg2;
  return ParseName(s, std::array{Experiment::kAidg1, Experiment::kAidg2},
                   "experiment");
}

Mode ParseMode(std::string_view s) {
  return ParseName(
      s, std::array{Mode::kConfirmation, Mode::kBlind, Mode::kNotApplicable},
      "mode");
}

Role ParseRole(std::string_view s) {
  return ParseName(s, std::array{Role::kSeeker, Role::kHolder}, "role");
}

ResponseKind ParseResponseKind(std::string_view s) {
  return ParseName(s,
                   std::array{ResponseKind::kYes, ResponseKind::kNo,
                              ResponseKind::kMaybe, ResponseKind::kFreeForm,
                              ResponseKind::kNone},
                   "response kind");
}

WinReason ParseWinReason(std::string_view s) {
  return ParseName(
      s,
      std::array{WinReason::kLeakExplicit, WinReason::kLeakConfirmational,
                 WinReason::kLeakParaphrase, WinReason::kLeakImplicit,
                 WinReason::kCorrectLock, WinReason::kCorrectFinalGuess,
                 WinReason::kWrongLock, WinReason::kWrongFinalGuess,
                 WinReason::kDisqualification, WinReason::kHorizonExhausted},
      "outcome reason");
}

LeakCategory ParseLeakCategory(std::string_view s) {
  return ParseName(s,
                   std::array{LeakCategory::kExplicit, LeakCategory::kConfirmational,
                              LeakCategory::kParaphrase, LeakCategory::kImplicit},
                   "leak category");
}

ConstraintKind ParseConstraintKind(std::string_view s) {
  return ParseName(
      s, std::array{ConstraintKind::kDirectGuess, ConstraintKind::kDuplicateLock},
      "constraint kind");
}

}  // namespace aidg
