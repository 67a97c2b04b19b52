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

#include "aidg/tournament.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <map>
#include <set>
#include <tuple>

#include "aidg/error.hpp"
#include "aidg/store.hpp"
#include "test_support.hpp"

namespace aidg {
namespace {

using testing::ScriptedConfig;
using testing::TempDir;

std::vector<std::string> Models(int m) {
  std::vector<std::string> out;
  for (int i = 1; i <= m; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

TEST(Schedule, AidgOneRoundRobin) {
  const Schedule s = ScheduleAidg1(Models(6), DefaultSecrets(), 1);
  ASSERT_EQ(s.size(), 60u);
  std::set<std::tuple<std::string, std::string, Mode>> seen;
  std::map<std::string, int> seeker, holder;
  for (const auto& g : s.games) {
    EXPECT_EQ(g.experiment, Experiment::kAidg1);
    EXPECT_NE(g.seeker_model, g.holder_model);
    EXPECT_NE(g.mode, Mode::kNotApplicable);
    EXPECT_EQ(g.max_turns, 10);
    EXPECT_TRUE(std::holds_alternative<SecretFact>(g.secret));
    EXPECT_TRUE(seen.emplace(g.seeker_model, g.holder_model, g.mode).second);
    ++seeker[g.seeker_model];
    ++holder[g.holder_model];
  }
  for (const auto& m : Models(6)) {
    EXPECT_EQ(seeker[m], 10) << m;
    EXPECT_EQ(holder[m], 10) << m;
  }
}

TEST(Schedule, AidgTwoOrderedPairs) {
  const Schedule s = ScheduleAidg2(Models(6), DefaultOntology(), 1);
  ASSERT_EQ(s.size(), 30u);
  std::set<std::pair<std::string, std::string>> pairs;
  std::set<std::string> words;
  for (const auto& g : s.games) {
    EXPECT_EQ(g.mode, Mode::kNotApplicable);
    EXPECT_EQ(g.max_turns, 16);
    EXPECT_TRUE(pairs.emplace(g.seeker_model, g.holder_model).second);
    words.insert(std::get<OntologyWord>(g.secret).word);
  }
  EXPECT_EQ(words.size(), 30u);
}

TEST(Schedule, FiveTournaments) {
  TournamentConfig c = ScriptedConfig(Experiment::kAidg1, 6, "blind-random-seeker",
                                      "stonewall-holder", 5);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2, 3, 4, 5}));
  const Schedule one = BuildSchedule(c, DefaultSecrets(), DefaultOntology());
  EXPECT_EQ(one.size(), 300u);
  EXPECT_EQ(one.n_tournaments, 5);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one.games[i].sequence, static_cast<std::int64_t>(i));
    EXPECT_EQ(one.games[i].tournament, 1 + static_cast<int>(i / 60));
    ids.insert(one.games[i].game_id);
  }
  EXPECT_EQ(ids.size(), 300u);

  c.experiment = Experiment::kAidg2;
  EXPECT_EQ(BuildSchedule(c, DefaultSecrets(), DefaultOntology()).size(), 150u);
}

TEST(Schedule, SeedDeterminesOrder) {
  const auto a = ScheduleAidg2(Models(4), DefaultOntology(), 7);
  const auto b = ScheduleAidg2(Models(4), DefaultOntology(), 7);
  const auto c = ScheduleAidg2(Models(4), DefaultOntology(), 8);
  EXPECT_EQ(a.games, b.games);
  EXPECT_NE(a.games, c.games);
  EXPECT_THROW(ScheduleAidg2(Models(1), DefaultOntology(), 1), ConfigError);
  EXPECT_THROW(ScheduleAidg1({"a", "a"}, DefaultSecrets(), 1), ConfigError);
}

TEST(Schedule, SamplePolicyDrawsFromCorpus) {
  const Schedule s =
      ScheduleAidg1(Models(3), DefaultSecrets(), 3, 1, 0, SecretPolicy::kSample);
  ASSERT_EQ(s.size(), 12u);
  for (const auto& g : s.games) {
    const auto& secret = std::get<SecretFact>(g.secret);
    EXPECT_LT(secret.id, static_cast<int>(DefaultSecrets().size()));
  }
}

class ConfigErrors : public ::testing::TestWithParam<std::string> {};

TEST_P(ConfigErrors, Rejected) { EXPECT_THROW(ParseTournamentConfig(GetParam()), ConfigError); }

const std::string kScripted =
    R"("scripted": {"seeker": "oracle-seeker", "holder": "truthful-holder"})";

INSTANTIATE_TEST_SUITE_P(
    Tournament, ConfigErrors,
    ::testing::Values(
        "not json",
        R"({"models": []})",
        R"({"experiment": "aidg3", "models": []})",
        R"({"experiment": "aidg2", "models": [{"alias": "a", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "models": [{"alias": "a", )" + kScripted +
            R"(}, {"alias": "a", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "colour": 1, "models": [{"alias": "a", )" + kScripted +
            R"(}, {"alias": "b", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "tournaments": 2, "seeds": [1], "models": [{"alias": "a", )" +
            kScripted + R"(}, {"alias": "b", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "rating": {"k_factor": 0}, "models": [{"alias": "a", )" +
            kScripted + R"(}, {"alias": "b", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "secret_policy": "lottery", "models": [{"alias": "a", )" +
            kScripted + R"(}, {"alias": "b", )" + kScripted + "}]}",
        R"({"experiment": "aidg2", "models": [{"alias": "a", "endpoint": "http://x/v1", "model_id": "m", "api_key": "sk-1"}, {"alias": "b", )" +
            kScripted + "}]}",
        R"({"experiment": "aidg2", "models": [{"alias": "a", "scripted": {"seeker": "nobody", "holder": "truthful-holder"}}, {"alias": "b", )" +
            kScripted + "}]}"));

TEST(Config, CredentialsMustComeFromEnvironment) {
  try {
    ParseTournamentConfig(
        R"({"experiment": "aidg2", "models": [{"alias": "a", "endpoint": "http://x/v1", "model_id": "m", "api_key": "sk-1"}, {"alias": "b", )" +
        kScripted + "}]}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("api_key_env"), std::string::npos) << e.what();
  }
}

TEST(Config, JsonRoundTrip) {
  TournamentConfig c = ScriptedConfig(Experiment::kAidg2, 3, "oracle-seeker", "leaky-holder(2)", 2);
  c.rating.k_factor = 16;
  c.secret_policy = SecretPolicy::kSample;
  const TournamentConfig back = ParseTournamentConfig(TournamentConfigToJson(c));
  EXPECT_EQ(TournamentConfigToJson(back), TournamentConfigToJson(c));
  EXPECT_EQ(back.seeds, c.seeds);
  EXPECT_EQ(back.rating.k_factor, 16);
  ASSERT_EQ(back.models.size(), 3u);
  EXPECT_EQ(ToString(*back.models[0].scripted_holder), "leaky-holder(2)");
}

TEST(Config, ForceScriptedReplacesRemoteAgents) {
  TournamentConfig c = ParseTournamentConfig(
      R"({"experiment": "aidg1", "models": [{"alias": "a", "endpoint": "http://127.0.0.1:9/v1/chat/completions", "model_id": "m", "api_key_env": "AIDG_TEST_UNSET_KEY"}, {"alias": "b", )" +
      kScripted + "}]}");
  ForceScripted(c);
  for (const auto& m : c.models) {
    EXPECT_FALSE(m.remote);
    EXPECT_EQ(ToString(*m.scripted_seeker), "blind-random-seeker");
    EXPECT_EQ(ToString(*m.scripted_holder), "stonewall-holder");
  }
}

TEST(Provider, MissingKeyIsAResolutionError) {
  ::unsetenv("AIDG_TEST_UNSET_KEY");
  const TournamentConfig c = ParseTournamentConfig(
      R"({"experiment": "aidg2", "models": [{"alias": "a", "endpoint": "http://127.0.0.1:9/v1/chat/completions", "model_id": "m", "api_key_env": "AIDG_TEST_UNSET_KEY"}, {"alias": "b", )" +
      kScripted + "}]}");
  EXPECT_THROW(MakeAgentProvider(c, DefaultOntology()), AgentResolutionError);
}

TEST(Run, OracleSweepsAidgTwo) {
  const TournamentConfig c = ScriptedConfig(Experiment::kAidg2, 3, "oracle-seeker", "truthful-holder");
  auto provider = MakeAgentProvider(c, DefaultOntology());
  std::size_t seen = 0;
  RunOptions options;
  options.on_game = [&](const GameRecord& r) { EXPECT_EQ(r.config.sequence, static_cast<std::int64_t>(seen++)); };
  const TournamentResult r = RunTournaments(c, *provider, DefaultSecrets(), DefaultOntology(), options);
  EXPECT_EQ(seen, 6u);
  EXPECT_EQ(r.summary.scheduled, 6);
  EXPECT_EQ(r.summary.completed, 6);
  EXPECT_EQ(r.summary.seeker_wins, 6);
  EXPECT_DOUBLE_EQ(r.summary.SeekerWinRate(), 1.0);
  ASSERT_EQ(r.per_tournament.size(), 1u);
  EXPECT_EQ(r.per_tournament[0].tournament, 1);
  EXPECT_EQ(r.book.history().size(), 6u);
  for (const auto& m : {"m1", "m2", "m3"}) {
    EXPECT_EQ(r.summary.models.at(m).as_seeker, (RoleTally{2, 2}));
    EXPECT_GT(r.book.Get(m).c_elo, 1500);
    EXPECT_LT(r.book.Get(m).v_elo, 1500);
  }
  EXPECT_NE(RenderSummary(r.summary).find("m1"), std::string::npos);
}

TEST(Run, StonewallHoldsAidgOne) {
  const TournamentConfig c =
      ScriptedConfig(Experiment::kAidg1, 3, "blind-random-seeker", "stonewall-holder");
  auto provider = MakeAgentProvider(c, DefaultOntology());
  const TournamentResult r = RunTournaments(c, *provider, DefaultSecrets(), DefaultOntology());
  EXPECT_EQ(r.records.size(), 12u);
  EXPECT_EQ(r.summary.holder_wins, 12);
  for (const auto& g : r.records) {
    EXPECT_EQ(g.outcome->reason, WinReason::kHorizonExhausted);
    EXPECT_EQ(g.outcome->terminal_turn, 10);
  }
  EXPECT_EQ(r.summary.models.at("m1").seeker_mode_a.games, 2);
  EXPECT_EQ(r.summary.models.at("m1").seeker_mode_b.games, 2);
}

TEST(Run, ConcurrencyDoesNotChangeResults) {
  TournamentConfig serial =
      ScriptedConfig(Experiment::kAidg1, 4, "blind-random-seeker", "leaky-holder(3)", 2, 1);
  TournamentConfig parallel = serial;
  parallel.concurrency = 4;
  auto p1 = MakeAgentProvider(serial, DefaultOntology());
  auto p2 = MakeAgentProvider(parallel, DefaultOntology());
  const auto a = RunTournaments(serial, *p1, DefaultSecrets(), DefaultOntology());
  const auto b = RunTournaments(parallel, *p2, DefaultSecrets(), DefaultOntology());
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.book.ratings(), b.book.ratings());
  EXPECT_EQ(a.book.history(), b.book.history());
  EXPECT_EQ(a.summary, b.summary);
}

TEST(Run, PersistsAndRefusesToOverwrite) {
  TempDir dir;
  const TournamentConfig c =
      ScriptedConfig(Experiment::kAidg2, 2, "oracle-seeker", "truthful-holder", 2);
  auto provider = MakeAgentProvider(c, DefaultOntology());
  RunOptions options;
  options.output_dir = dir.path();
  const auto r = RunTournaments(c, *provider, DefaultSecrets(), DefaultOntology(), options);
  const RunLayout layout{dir.path()};
  for (int t = 1; t <= 2; ++t) {
    EXPECT_EQ(ReadGames(layout.Games(t)).size(), 2u);
    EXPECT_EQ(ReadRatingUpdates(layout.Ratings(t)).size(), 2u);
    EXPECT_TRUE(std::filesystem::exists(layout.Summary(t)));
    EXPECT_TRUE(std::filesystem::exists(layout.ConfigSnapshot(t)));
    EXPECT_TRUE(std::filesystem::exists(layout.Timing(t)));
  }
  EXPECT_TRUE(std::filesystem::exists(layout.EloTableFile()));
  EXPECT_TRUE(std::filesystem::exists(layout.RunSummary()));
  std::vector<GameRecord> stored = ReadGames(layout.Games(1));
  const auto second = ReadGames(layout.Games(2));
  stored.insert(stored.end(), second.begin(), second.end());
  EXPECT_EQ(stored, r.records);
  EXPECT_THROW(RunTournaments(c, *provider, DefaultSecrets(), DefaultOntology(), options),
               ConfigError);
}

TEST(Run, AgentFailuresAbortOnlyThatGame) {
  class Broken final : public AgentProvider {
   public:
    explicit Broken(std::unique_ptr<AgentProvider> inner) : inner_(std::move(inner)) {}
    std::unique_ptr<Agent> Make(const std::string& alias, Role role,
                                const GameConfig& game) override {
      if (game.sequence == 1) throw AgentResolutionError("no such agent");
      return inner_->Make(alias, role, game);
    }
    LeakJudge& Judge() override { return inner_->Judge(); }

   private:
    std::unique_ptr<AgentProvider> inner_;
  };
  const TournamentConfig c = ScriptedConfig(Experiment::kAidg2, 2, "oracle-seeker", "truthful-holder");
  Broken provider(MakeAgentProvider(c, DefaultOntology()));
  const auto r = RunTournaments(c, provider, DefaultSecrets(), DefaultOntology());
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_FALSE(r.records[0].aborted);
  EXPECT_TRUE(r.records[1].aborted);
  EXPECT_EQ(r.summary.aborted, 1);
  EXPECT_EQ(r.book.history().size(), 1u);
}

}  // namespace
}  // namespace aidg
