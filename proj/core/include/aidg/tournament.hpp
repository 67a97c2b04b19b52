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

#ifndef AIDG_TOURNAMENT_HPP_
#define AIDG_TOURNAMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/agents.hpp"
#include "aidg/arbiter.hpp"
#include "aidg/corpus.hpp"
#include "aidg/game.hpp"
#include "aidg/rating.hpp"
#include "aidg/scripted.hpp"

namespace aidg {

// How AIDG-I games are given secrets within one tournament.
enum class SecretPolicy {
  kCycle,   // round-robin over the tournament's shuffled corpus
  kSample,  // independent uniform draws (with replacement)
};

struct ModelEntry {
  std::string alias;
  std::optional<AgentSpec> remote;
  std::optional<ScriptedAgentSpec> scripted_seeker;
  std::optional<ScriptedAgentSpec> scripted_holder;
};

struct JudgeSpec {
  bool external = false;
  AgentSpec endpoint;  // used when external; temperature is forced to 0.01
};

struct TournamentConfig {
  Experiment experiment = Experiment::kAidg1;
  std::vector<ModelEntry> models;
  int n_tournaments = 5;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::optional<std::filesystem::path> secrets_path;
  std::optional<std::filesystem::path> ontology_path;
  SecretPolicy secret_policy = SecretPolicy::kCycle;
  RatingConfig rating;
  int concurrency = 1;
  std::filesystem::path output_dir = "runs";
  JudgeSpec judge;
  bool allow_self_play = false;

  // Throws ConfigError. |seeds| == n_tournaments, >= 2 unique aliases, ...
  void Validate() const;
};

// JSON tournament config; unknown keys are rejected with ConfigError.
TournamentConfig ParseTournamentConfig(std::string_view json_text);
TournamentConfig LoadTournamentConfig(const std::filesystem::path& path);
std::string TournamentConfigToJson(const TournamentConfig& config);

// Replaces every model's agents with scripted defaults: blind-random seeker
// and stonewall holder in AIDG-I, oracle seeker and truthful holder in AIDG-II.
void ForceScripted(TournamentConfig& config);

struct Schedule {
  std::vector<GameConfig> games;
  int n_tournaments = 0;

  std::size_t size() const { return games.size(); }
};

// Per tournament: every unordered pair x both role orders x modes {A, B};
// C(m,2) * 4 games, order shuffled by seed. `first_sequence` numbers games.
Schedule ScheduleAidg1(const std::vector<std::string>& models,
                       const std::vector<SecretFact>& secrets, std::uint64_t seed,
                       int tournament = 1, std::int64_t first_sequence = 0,
                       SecretPolicy policy = SecretPolicy::kCycle);

// Per tournament: every ordered (seeker, holder) pair, m * (m - 1) games,
// targets drawn without replacement.
Schedule ScheduleAidg2(const std::vector<std::string>& models,
                       const Ontology& ontology, std::uint64_t seed,
                       int tournament = 1, std::int64_t first_sequence = 0);

// All tournaments of a config, concatenated, sequence numbers global.
Schedule BuildSchedule(const TournamentConfig& config,
                       const std::vector<SecretFact>& secrets,
                       const Ontology& ontology);

struct RoleTally {
  std::int64_t games = 0;
  std::int64_t wins = 0;

  bool operator==(const RoleTally&) const = default;
};

struct ModelSummary {
  RoleTally as_seeker;
  RoleTally as_holder;
  RoleTally seeker_mode_a;
  RoleTally seeker_mode_b;

  bool operator==(const ModelSummary&) const = default;
};

struct TournamentSummary {
  Experiment experiment = Experiment::kAidg1;
  int tournament = 0;  // 0 = the whole run
  std::int64_t scheduled = 0;
  std::int64_t completed = 0;
  std::int64_t aborted = 0;
  std::int64_t seeker_wins = 0;
  std::int64_t holder_wins = 0;
  double mean_multiplier = 0.0;  // over completed games
  std::map<std::string, ModelSummary> models;
  std::map<std::string, RoleRatings> ratings;  // at the end of this scope
  std::map<std::string, std::string> extras;

  double SeekerWinRate() const;
  double HolderWinRate() const;
  bool operator==(const TournamentSummary&) const = default;
};

// Builds fresh agent handles per game.
class AgentProvider {
 public:
  virtual ~AgentProvider() = default;
  virtual std::unique_ptr<Agent> Make(const std::string& alias, Role role,
                                      const GameConfig& game) = 0;
  virtual LeakJudge& Judge() = 0;
};

// Scripted agents from the config, remote agents over HTTP (keys from env).
// Throws AgentResolutionError if any model cannot be resolved.
std::unique_ptr<AgentProvider> MakeAgentProvider(
    const TournamentConfig& config, const Ontology& ontology,
    std::shared_ptr<ChatTransport> transport_override = nullptr);

struct TournamentResult {
  std::vector<GameRecord> records;  // schedule order
  RatingBook book;
  TournamentSummary summary;  // whole run
  std::vector<TournamentSummary> per_tournament;
};

struct RunOptions {
  // When set, traces are persisted below this directory as they complete.
  std::optional<std::filesystem::path> output_dir;
  std::function<void(const GameRecord&)> on_game;  // schedule order
};

// Executes the schedule with up to config.concurrency games in flight;
// rating updates and persistence happen strictly in schedule order.
TournamentResult RunTournaments(const TournamentConfig& config,
                                AgentProvider& agents,
                                const std::vector<SecretFact>& secrets,
                                const Ontology& ontology,
                                const RunOptions& options = {});

TournamentSummary Summarize(Experiment experiment, int tournament,
                            std::span<const GameRecord> records,
                            const RatingBook& book);

std::string RenderSummary(const TournamentSummary& summary);

}  // namespace aidg

#endif  // AIDG_TOURNAMENT_HPP_
