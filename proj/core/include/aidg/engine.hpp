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

#ifndef AIDG_ENGINE_HPP_
#define AIDG_ENGINE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "aidg/agents.hpp"
#include "aidg/arbiter.hpp"
#include "aidg/corpus.hpp"
#include "aidg/game.hpp"

namespace aidg {

// Engine-authored messages. Kept stable: they are part of recorded traces.
inline constexpr std::string_view kHolderCorrection =
    "Invalid response. Reply with exactly one of: \"yes\", \"no\", \"maybe\".";
inline constexpr std::string_view kFinalGuessOrder =
    "Turn 15 is over. You must now make your final guess. Reply with a single "
    "word: the object you think the secret word is.";
inline constexpr std::string_view kFinalGuessCorrection =
    "Your final guess could not be read. Reply with exactly one word.";
inline constexpr std::string_view kUnparsedLockNote =
    "Lock attempt could not be parsed; no guess was registered.";

// Plays one game to completion. Never throws for agent or judge failures;
// those produce an aborted record. `judge` is used for AIDG-I and
// `ontology` for AIDG-II.
GameRecord RunGame(const GameConfig& config, Agent& seeker, Agent& holder,
                   LeakJudge& judge, const Ontology& ontology);

// True when the first non-whitespace content is "lock" followed by ':'.
bool HasLockPrefix(std::string_view utterance);

// Guess from "lock: [guess]" (case-insensitive, brackets optional), lowercased
// with punctuation and a leading article stripped. Empty if not a lock or the
// guess is blank.
std::optional<std::string> ParseLock(std::string_view utterance);

struct FinalGuess {
  std::string guess;
  bool ambiguous = false;  // several ontology words; the last one was taken
};

// Reads a forced final guess: a lock, else the last ontology word mentioned,
// else a reply that is a single token.
std::optional<FinalGuess> ExtractFinalGuess(std::string_view reply,
                                            const Ontology& ontology);

}  // namespace aidg

#endif  // AIDG_ENGINE_HPP_
