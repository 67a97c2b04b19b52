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

#ifndef AIDG_GAME_HPP_
#define AIDG_GAME_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "aidg/corpus.hpp"
#include "aidg/verdict.hpp"

namespace aidg {

// AIDG-I is the free-form containment game over natural-language secrets;
// AIDG-II is the constrained twenty-questions game over the word ontology.
enum class Experiment { kAidg1, kAidg2 };

// Seeker strategy in AIDG-I: confirmation attack (knows the secret) or
// blind deduction. Always kNotApplicable in AIDG-II.
enum class Mode { kConfirmation, kBlind, kNotApplicable };

enum class Role { kSeeker, kHolder };

// Normalized form of the holder's reply recorded with each turn.
enum class ResponseKind { kYes, kNo, kMaybe, kFreeForm, kNone };

enum class WinReason {
  kLeakExplicit,
  kLeakConfirmational,
  kLeakParaphrase,
  kLeakImplicit,
  kCorrectLock,
  kCorrectFinalGuess,
  kWrongLock,
  kWrongFinalGuess,
  kDisqualification,
  kHorizonExhausted,
};

inline constexpr int kAidg1MaxTurns = 10;
inline constexpr int kAidg2MaxTurns = 16;

int DefaultMaxTurns(Experiment experiment);

using Secret = std::variant<SecretFact, OntologyWord>;

struct GameConfig {
  std::string game_id;
  std::int64_t sequence = 0;  // position in the run's global schedule
  int tournament = 1;
  Experiment experiment = Experiment::kAidg1;
  Mode mode = Mode::kNotApplicable;
  std::string seeker_model;
  std::string holder_model;
  Secret secret;
  int max_turns = kAidg1MaxTurns;
  std::uint64_t seed = 0;

  bool operator==(const GameConfig&) const = default;
};

// Throws ConfigError when mode/experiment/max_turns are inconsistent or the
// secret type does not match the experiment. Self-play needs allow_self_play.
void ValidateGameConfig(const GameConfig& config, bool allow_self_play = false);

const std::string& SecretText(const GameConfig& config);

using TurnVerdict = std::variant<std::monostate, LeakVerdict, ConstraintVerdict>;

struct TurnRecord {
  int index = 0;  // 1-based
  std::string seeker_utterance;
  std::string holder_utterance;
  ResponseKind response = ResponseKind::kNone;
  TurnVerdict verdict;
  // Engine-authored system messages issued during this turn, in order.
  std::vector<std::string> notes;
  // Replies the engine refused before re-prompting, in order.
  std::vector<std::string> rejected;
  bool seeker_truncated = false;
  bool holder_truncated = false;

  bool operator==(const TurnRecord&) const = default;
};

// Append-only dialogue history H_t. Indices run 1, 2, 3, ...
class Transcript {
 public:
  Transcript() = default;

  // Throws std::logic_error unless turn.index == size() + 1.
  void Append(TurnRecord turn);

  const std::vector<TurnRecord>& turns() const { return turns_; }
  std::size_t size() const { return turns_.size(); }
  bool empty() const { return turns_.empty(); }
  const TurnRecord& back() const { return turns_.back(); }

  bool operator==(const Transcript&) const = default;

 private:
  std::vector<TurnRecord> turns_;
};

struct Outcome {
  Role winner = Role::kHolder;
  WinReason reason = WinReason::kHorizonExhausted;
  int terminal_turn = 0;

  bool operator==(const Outcome&) const = default;
};

struct LockEvent {
  int turn = 0;
  std::string guess;

  bool operator==(const LockEvent&) const = default;
};

// Wall-clock data; never part of a record's identity or canonical form.
struct GameTiming {
  std::int64_t started_unix_ms = 0;
  std::int64_t duration_ms = 0;
};

struct GameRecord {
  GameConfig config;
  Transcript transcript;
  std::optional<Outcome> outcome;  // absent iff aborted
  std::optional<LockEvent> lock;
  bool aborted = false;
  std::string abort_reason;
  std::optional<GameTiming> timing;
  // Unrecognized keys read from a trace, as raw JSON text, kept for rewrite.
  std::map<std::string, std::string> extras;

  bool operator==(const GameRecord& other) const {
    return config == other.config && transcript == other.transcript &&
           outcome == other.outcome && lock == other.lock &&
           aborted == other.aborted && abort_reason == other.abort_reason &&
           extras == other.extras;
  }
};

// (s_seeker, s_holder); always sums to 1.
std::pair<int, int> ScoreOf(const Outcome& outcome);
// Throws RatingError for aborted records.
std::pair<int, int> ScoreOf(const GameRecord& record);

Role WinnerOf(WinReason reason);
bool IsLeak(WinReason reason);
bool IsLockOrGuess(WinReason reason);

std::string_view ToString(Experiment e);
std::string_view ToString(Mode m);
std::string_view ToString(Role r);
std::string_view ToString(ResponseKind k);
std::string_view ToString(WinReason r);
std::string_view ToString(LeakCategory c);
std::string_view ToString(ConstraintKind k);
std::string_view ToString(HolderResponse r);

// Inverse of ToString; throw ConfigError on unknown names. Experiment also
// accepts "aidg1"/"aidg2".
Experiment ParseExperiment(std::string_view s);
Mode ParseMode(std::string_view s);
Role ParseRole(std::string_view s);
ResponseKind ParseResponseKind(std::string_view s);
WinReason ParseWinReason(std::string_view s);
LeakCategory ParseLeakCategory(std::string_view s);
ConstraintKind ParseConstraintKind(std::string_view s);

}  // namespace aidg

#endif  // AIDG_GAME_HPP_
