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

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "aidg/engine.hpp"
#include "aidg/error.hpp"
#include "aidg/http_transport.hpp"
#include "aidg/rng.hpp"
#include "aidg/store.hpp"

namespace aidg {
namespace {

using Json = nlohmann::ordered_json;

// Stream ids for Rng::Mix; one independent stream per purpose.
constexpr std::uint64_t kOrderStream = 0;
constexpr std::uint64_t kSecretStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kGameSeedStream = 1000;

void RequireKnownKeys(const Json& j, std::initializer_list<std::string_view> known,
                      std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "api_key") {
      throw ConfigError(std::string(where) +
                        ": credentials belong in environment variables; use "
                        "\"api_key_env\"");
    }
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(std::string(where) + ": unknown key \"" + key + "\"");
    }
  }
}

AgentSpec ParseAgentSpec(const Json& j, const std::string& alias) {
  AgentSpec spec;
  spec.alias = alias;
  spec.endpoint = j.at("endpoint").get<std::string>();
  spec.model_id = j.at("model_id").get<std::string>();
  spec.api_key_env = j.value("api_key_env", "");
  spec.temperature = j.value("temperature", kAgentTemperature);
  spec.max_retries = j.value("max_retries", 3);
  spec.timeout = std::chrono::seconds(j.value("timeout_s", 120));
  spec.max_output_chars = j.value("max_output_chars", std::size_t{4000});
  if (j.contains("max_tokens")) spec.max_tokens = j.at("max_tokens").get<int>();
  return spec;
}

Json AgentSpecToJson(const AgentSpec& spec) {
  Json j;
  j["endpoint"] = spec.endpoint;
  j["model_id"] = spec.model_id;
  if (!spec.api_key_env.empty()) j["api_key_env"] = spec.api_key_env;
  j["temperature"] = spec.temperature;
  j["max_retries"] = spec.max_retries;
  j["timeout_s"] = spec.timeout.count();
  j["max_output_chars"] = spec.max_output_chars;
  if (spec.max_tokens) j["max_tokens"] = *spec.max_tokens;
  return j;
}

std::string GameId(Experiment e, int tournament, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s-t%d-g%03zu",
                e == Experiment::kAidg1 ? "aidg1" : "aidg2", tournament, index + 1);
  return buf;
}

void RequireModels(const std::vector<std::string>& models) {
  if (models.size() < 2) throw ConfigError("a tournament needs at least two models");
  std::set<std::string> unique(models.begin(), models.end());
  if (unique.size() != models.size()) throw ConfigError("model aliases must be unique");
}

std::string Percent(std::int64_t num, std::int64_t den) {
  if (den == 0) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * static_cast<double>(num) / den);
  return buf;
}

std::string Tally(const RoleTally& t) {
  return std::to_string(t.wins) + "/" + std::to_string(t.games);
}

std::string ResolveKey(const AgentSpec& spec) {
  if (spec.api_key_env.empty()) return "";
  const char* value = std::getenv(spec.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw AgentResolutionError("model " + spec.alias + ": environment variable " +
                               spec.api_key_env + " is not set");
  }
  return value;
}

class ConfigAgentProvider final : public AgentProvider {
 public:
  ConfigAgentProvider(const TournamentConfig& config, const Ontology& ontology,
                      std::shared_ptr<ChatTransport> override_transport)
      : ontology_(ontology) {
    for (const auto& m : config.models) {
      Entry entry;
      if (m.remote) {
        ValidateAgentSpec(*m.remote);
        entry.remote = *m.remote;
        entry.transport = override_transport
                              ? override_transport
                              : std::make_shared<HttpChatTransport>(
                                    m.remote->endpoint, ResolveKey(*m.remote),
                                    m.remote->timeout);
      } else if (m.scripted_seeker && m.scripted_holder) {
        if (!IsSeekerKind(m.scripted_seeker->kind) ||
            IsSeekerKind(m.scripted_holder->kind)) {
          throw AgentResolutionError("model " + m.alias +
                                     ": scripted seeker/holder kinds are swapped");
        }
        entry.seeker = m.scripted_seeker;
        entry.holder = m.scripted_holder;
      } else {
        throw AgentResolutionError("model " + m.alias +
                                   " has neither an endpoint nor scripted agents");
      }
      entries_.emplace(m.alias, std::move(entry));
    }
    if (config.judge.external) {
      const AgentSpec& spec = config.judge.endpoint;
      if (spec.endpoint.empty() || spec.model_id.empty()) {
        throw AgentResolutionError("external judge needs endpoint and model_id");
      }
      auto transport = override_transport
                           ? override_transport
                           : std::make_shared<HttpChatTransport>(
                                 spec.endpoint, ResolveKey(spec), spec.timeout);
      judge_ = std::make_unique<ExternalJudge>(transport, spec.model_id);
    } else {
      judge_ = std::make_unique<DeterministicJudge>();
    }
  }

  std::unique_ptr<Agent> Make(const std::string& alias, Role role,
                              const GameConfig& /*game*/) override {
    auto it = entries_.find(alias);
    if (it == entries_.end()) throw AgentResolutionError("unknown model " + alias);
    const Entry& e = it->second;
    if (e.remote) return std::make_unique<RemoteAgent>(*e.remote, e.transport);
    return MakeScriptedAgent(role == Role::kSeeker ? *e.seeker : *e.holder, ontology_);
  }

  LeakJudge& Judge() override { return *judge_; }

 private:
  struct Entry {
    std::optional<AgentSpec> remote;
    std::shared_ptr<ChatTransport> transport;
    std::optional<ScriptedAgentSpec> seeker;
    std::optional<ScriptedAgentSpec> holder;
  };
  const Ontology& ontology_;
  std::map<std::string, Entry> entries_;
  std::unique_ptr<LeakJudge> judge_;
};

std::vector<std::string> Aliases(const TournamentConfig& config) {
  std::vector<std::string> out;
  for (const auto& m : config.models) out.push_back(m.alias);
  return out;
}

std::string EncodeTiming(const GameRecord& r) {
  Json j;
  j["game_id"] = r.config.game_id;
  j["started_unix_ms"] = r.timing ? r.timing->started_unix_ms : 0;
  j["duration_ms"] = r.timing ? r.timing->duration_ms : 0;
  return j.dump();
}

}  // namespace

void TournamentConfig::Validate() const {
  if (n_tournaments < 1) throw ConfigError("tournaments must be >= 1");
  if (seeds.size() != static_cast<std::size_t>(n_tournaments)) {
    throw ConfigError("expected " + std::to_string(n_tournaments) + " seeds, got " +
                      std::to_string(seeds.size()));
  }
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  RequireModels(Aliases(*this));
  for (const auto& m : models) {
    if (m.alias.empty()) throw ConfigError("model alias is empty");
    if (m.remote.has_value() == (m.scripted_seeker.has_value() || m.scripted_holder.has_value())) {
      throw ConfigError("model " + m.alias +
                        " needs exactly one of an endpoint or scripted agents");
    }
    if (m.remote) ValidateAgentSpec(*m.remote);
    if (!m.remote && !(m.scripted_seeker && m.scripted_holder)) {
      throw ConfigError("model " + m.alias + " needs both scripted seeker and holder");
    }
  }
  try {
    rating.Validate();
  } catch (const RatingError& e) {
    throw ConfigError(std::string("rating: ") + e.what());
  }
}

TournamentConfig ParseTournamentConfig(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  TournamentConfig c;
  try {
    RequireKnownKeys(j,
                     {"experiment", "tournaments", "seeds", "concurrency", "output_dir",
                      "rating", "judge", "secrets", "ontology", "secret_policy",
                      "allow_self_play", "models"},
                     "config");
    c.experiment = ParseExperiment(j.at("experiment").get<std::string>());
    if (j.contains("seeds")) {
      c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      c.n_tournaments = static_cast<int>(c.seeds.size());
    }
    if (j.contains("tournaments")) {
      c.n_tournaments = j.at("tournaments").get<int>();
      if (!j.contains("seeds")) {
        c.seeds.clear();
        for (int i = 1; i <= c.n_tournaments; ++i) c.seeds.push_back(i);
      }
    }
    c.concurrency = j.value("concurrency", 1);
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("secrets")) c.secrets_path = j.at("secrets").get<std::string>();
    if (j.contains("ontology")) c.ontology_path = j.at("ontology").get<std::string>();
    const std::string policy = j.value("secret_policy", "cycle");
    if (policy == "cycle") {
      c.secret_policy = SecretPolicy::kCycle;
    } else if (policy == "sample") {
      c.secret_policy = SecretPolicy::kSample;
    } else {
      throw ConfigError("secret_policy must be \"cycle\" or \"sample\"");
    }
    c.allow_self_play = j.value("allow_self_play", false);
    if (j.contains("rating")) {
      const Json& r = j.at("rating");
      RequireKnownKeys(r, {"k_factor", "initial_rating", "logistic_base", "scale"},
                       "rating");
      c.rating.k_factor = r.value("k_factor", c.rating.k_factor);
      c.rating.initial_rating = r.value("initial_rating", c.rating.initial_rating);
      c.rating.logistic_base = r.value("logistic_base", c.rating.logistic_base);
      c.rating.scale = r.value("scale", c.rating.scale);
    }
    if (j.contains("judge")) {
      const Json& jd = j.at("judge");
      RequireKnownKeys(jd, {"type", "endpoint", "model_id", "api_key_env", "timeout_s"},
                       "judge");
      const std::string type = jd.value("type", "deterministic");
      if (type == "external") {
        c.judge.external = true;
        c.judge.endpoint.alias = "judge";
        c.judge.endpoint.endpoint = jd.at("endpoint").get<std::string>();
        c.judge.endpoint.model_id = jd.at("model_id").get<std::string>();
        c.judge.endpoint.api_key_env = jd.value("api_key_env", "");
        c.judge.endpoint.temperature = kJudgeTemperature;
        c.judge.endpoint.timeout = std::chrono::seconds(jd.value("timeout_s", 120));
      } else if (type != "deterministic") {
        throw ConfigError("judge type must be \"deterministic\" or \"external\"");
      }
    }
    for (const auto& m : j.at("models")) {
      RequireKnownKeys(m,
                       {"alias", "endpoint", "model_id", "api_key_env", "temperature",
                        "max_retries", "timeout_s", "max_output_chars", "max_tokens",
                        "scripted"},
                       "model");
      ModelEntry entry;
      entry.alias = m.at("alias").get<std::string>();
      const std::string where = "model " + entry.alias;
      if (m.contains("scripted")) {
        const Json& s = m.at("scripted");
        RequireKnownKeys(s, {"seeker", "holder"}, where + " scripted");
        entry.scripted_seeker = ParseScriptedSpec(s.at("seeker").get<std::string>());
        entry.scripted_holder = ParseScriptedSpec(s.at("holder").get<std::string>());
        if (m.contains("endpoint")) {
          throw ConfigError(where + ": both scripted and endpoint given");
        }
      } else {
        entry.remote = ParseAgentSpec(m, entry.alias);
      }
      c.models.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const AgentResolutionError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

TournamentConfig LoadTournamentConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseTournamentConfig(ss.str());
}

std::string TournamentConfigToJson(const TournamentConfig& c) {
  Json j;
  j["experiment"] = c.experiment == Experiment::kAidg1 ? "aidg1" : "aidg2";
  j["tournaments"] = c.n_tournaments;
  j["seeds"] = c.seeds;
  j["concurrency"] = c.concurrency;
  j["output_dir"] = c.output_dir.string();
  if (c.secrets_path) j["secrets"] = c.secrets_path->string();
  if (c.ontology_path) j["ontology"] = c.ontology_path->string();
  j["secret_policy"] = c.secret_policy == SecretPolicy::kCycle ? "cycle" : "sample";
  j["allow_self_play"] = c.allow_self_play;
  j["rating"] = Json{{"k_factor", c.rating.k_factor},
                     {"initial_rating", c.rating.initial_rating},
                     {"logistic_base", c.rating.logistic_base},
                     {"scale", c.rating.scale}};
  if (c.judge.external) {
    Json jd{{"type", "external"},
            {"endpoint", c.judge.endpoint.endpoint},
            {"model_id", c.judge.endpoint.model_id}};
    if (!c.judge.endpoint.api_key_env.empty()) {
      jd["api_key_env"] = c.judge.endpoint.api_key_env;
    }
    j["judge"] = jd;
  } else {
    j["judge"] = Json{{"type", "deterministic"}};
  }
  Json models = Json::array();
  for (const auto& m : c.models) {
    Json entry{{"alias", m.alias}};
    if (m.remote) {
      entry.update(AgentSpecToJson(*m.remote));
    } else {
      entry["scripted"] = Json{{"seeker", ToString(*m.scripted_seeker)},
                               {"holder", ToString(*m.scripted_holder)}};
    }
    models.push_back(std::move(entry));
  }
  j["models"] = std::move(models);
  return j.dump(2) + "\n";
}

void ForceScripted(TournamentConfig& config) {
  const bool free_form = config.experiment == Experiment::kAidg1;
  for (auto& m : config.models) {
    m.remote.reset();
    m.scripted_seeker = ScriptedAgentSpec{
        free_form ? ScriptedKind::kBlindRandomSeeker : ScriptedKind::kOracleSeeker, 0};
    m.scripted_holder = ScriptedAgentSpec{
        free_form ? ScriptedKind::kStonewallHolder : ScriptedKind::kTruthfulHolder, 0};
  }
  config.judge = JudgeSpec{};
}

Schedule ScheduleAidg1(const std::vector<std::string>& models,
                       const std::vector<SecretFact>& secrets, std::uint64_t seed,
                       int tournament, std::int64_t first_sequence,
                       SecretPolicy policy) {
  RequireModels(models);
  if (secrets.empty()) throw ConfigError("AIDG-I needs a non-empty secret corpus");
  struct Slot {
    std::size_t seeker, holder;
    Mode mode;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      for (auto [s, h] : {std::pair{i, j}, std::pair{j, i}}) {
        slots.push_back({s, h, Mode::kConfirmation});
        slots.push_back({s, h, Mode::kBlind});
      }
    }
  }
  Rng order(Rng::Mix(seed, kOrderStream));
  order.Shuffle(slots);
  const auto shuffled = ShuffleSecrets(secrets, Rng::Mix(seed, kSecretStream));
  Rng sampler(Rng::Mix(seed, kSampleStream));

  Schedule schedule;
  schedule.n_tournaments = 1;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    GameConfig g;
    g.game_id = GameId(Experiment::kAidg1, tournament, k);
    g.sequence = first_sequence + static_cast<std::int64_t>(k);
    g.tournament = tournament;
    g.experiment = Experiment::kAidg1;
    g.mode = slots[k].mode;
    g.seeker_model = models[slots[k].seeker];
    g.holder_model = models[slots[k].holder];
    g.secret = policy == SecretPolicy::kCycle
                   ? shuffled[k % shuffled.size()]
                   : shuffled[sampler.UniformIndex(shuffled.size())];
    g.max_turns = kAidg1MaxTurns;
    g.seed = Rng::Mix(seed, kGameSeedStream + k);
    schedule.games.push_back(std::move(g));
  }
  return schedule;
}

Schedule ScheduleAidg2(const std::vector<std::string>& models, const Ontology& ontology,
                       std::uint64_t seed, int tournament, std::int64_t first_sequence) {
  RequireModels(models);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = 0; j < models.size(); ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  Rng order(Rng::Mix(seed, kOrderStream));
  order.Shuffle(slots);
  const auto targets = DrawTargets(ontology, slots.size(), Rng::Mix(seed, kSecretStream));

  Schedule schedule;
  schedule.n_tournaments = 1;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    GameConfig g;
    g.game_id = GameId(Experiment::kAidg2, tournament, k);
    g.sequence = first_sequence + static_cast<std::int64_t>(k);
    g.tournament = tournament;
    g.experiment = Experiment::kAidg2;
    g.mode = Mode::kNotApplicable;
    g.seeker_model = models[slots[k].first];
    g.holder_model = models[slots[k].second];
    g.secret = targets[k];
    g.max_turns = kAidg2MaxTurns;
    g.seed = Rng::Mix(seed, kGameSeedStream + k);
    schedule.games.push_back(std::move(g));
  }
  return schedule;
}

Schedule BuildSchedule(const TournamentConfig& config,
                       const std::vector<SecretFact>& secrets,
                       const Ontology& ontology) {
  config.Validate();
  const auto models = Aliases(config);
  Schedule all;
  all.n_tournaments = config.n_tournaments;
  for (int t = 1; t <= config.n_tournaments; ++t) {
    const auto seed = config.seeds[t - 1];
    const auto first = static_cast<std::int64_t>(all.games.size());
    Schedule one = config.experiment == Experiment::kAidg1
                       ? ScheduleAidg1(models, secrets, seed, t, first, config.secret_policy)
                       : ScheduleAidg2(models, ontology, seed, t, first);
    for (auto& g : one.games) all.games.push_back(std::move(g));
  }
  return all;
}

double TournamentSummary::SeekerWinRate() const {
  return completed == 0 ? 0.0 : static_cast<double>(seeker_wins) / completed;
}

double TournamentSummary::HolderWinRate() const {
  return completed == 0 ? 0.0 : static_cast<double>(holder_wins) / completed;
}

std::unique_ptr<AgentProvider> MakeAgentProvider(
    const TournamentConfig& config, const Ontology& ontology,
    std::shared_ptr<ChatTransport> transport_override) {
  try {
    return std::make_unique<ConfigAgentProvider>(config, ontology,
                                                 std::move(transport_override));
  } catch (const ConfigError& e) {
    throw AgentResolutionError(e.what());
  }
}

TournamentSummary Summarize(Experiment experiment, int tournament,
                            std::span<const GameRecord> records,
                            const RatingBook& book) {
  TournamentSummary s;
  s.experiment = experiment;
  s.tournament = tournament;
  s.scheduled = static_cast<std::int64_t>(records.size());
  double multiplier_sum = 0.0;
  for (const auto& r : records) {
    const auto& c = r.config;
    auto& seeker = s.models[c.seeker_model];
    auto& holder = s.models[c.holder_model];
    if (r.aborted) {
      ++s.aborted;
      continue;
    }
    ++s.completed;
    const bool seeker_won = r.outcome->winner == Role::kSeeker;
    (seeker_won ? s.seeker_wins : s.holder_wins)++;
    multiplier_sum += TurnDecay(c.experiment, r.outcome->terminal_turn);
    ++seeker.as_seeker.games;
    ++holder.as_holder.games;
    if (seeker_won) {
      ++seeker.as_seeker.wins;
    } else {
      ++holder.as_holder.wins;
    }
    if (c.mode != Mode::kNotApplicable) {
      auto& tally = c.mode == Mode::kConfirmation ? seeker.seeker_mode_a
                                                   : seeker.seeker_mode_b;
      ++tally.games;
      if (seeker_won) ++tally.wins;
    }
  }
  s.mean_multiplier = s.completed == 0 ? 0.0 : multiplier_sum / s.completed;
  for (const auto& [alias, r] : book.ratings()) s.ratings[alias] = r;
  return s;
}

std::string RenderSummary(const TournamentSummary& s) {
  std::ostringstream out;
  out << ToString(s.experiment) << " "
      << (s.tournament == 0 ? std::string("all tournaments")
                            : "tournament " + std::to_string(s.tournament))
      << ": " << s.scheduled << " games, " << s.completed << " completed, "
      << s.aborted << " aborted\n";
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "seeker wins %lld (%s), holder wins %lld (%s), mean multiplier %.3f\n",
                static_cast<long long>(s.seeker_wins),
                Percent(s.seeker_wins, s.completed).c_str(),
                static_cast<long long>(s.holder_wins),
                Percent(s.holder_wins, s.completed).c_str(), s.mean_multiplier);
  out << buf << "\n";
  const bool modes = s.experiment == Experiment::kAidg1;
  std::snprintf(buf, sizeof buf, "%-24s %10s %10s", "model", "seeker W/G", "holder W/G");
  out << buf;
  if (modes) {
    std::snprintf(buf, sizeof buf, " %10s %10s", "mode A", "mode B");
    out << buf;
  }
  std::snprintf(buf, sizeof buf, " %9s %9s %8s\n", "C_ELO", "V_ELO", "gap");
  out << buf;
  for (const auto& [alias, m] : s.models) {
    std::snprintf(buf, sizeof buf, "%-24s %10s %10s", alias.c_str(),
                  Tally(m.as_seeker).c_str(), Tally(m.as_holder).c_str());
    out << buf;
    if (modes) {
      std::snprintf(buf, sizeof buf, " %10s %10s", Tally(m.seeker_mode_a).c_str(),
                    Tally(m.seeker_mode_b).c_str());
      out << buf;
    }
    if (auto it = s.ratings.find(alias); it != s.ratings.end()) {
      std::snprintf(buf, sizeof buf, " %9.1f %9.1f %8.1f\n", it->second.c_elo,
                    it->second.v_elo, it->second.v_elo - it->second.c_elo);
    } else {
      std::snprintf(buf, sizeof buf, " %9s %9s %8s\n", "-", "-", "-");
    }
    out << buf;
  }
  return out.str();
}

TournamentResult RunTournaments(const TournamentConfig& config, AgentProvider& agents,
                                const std::vector<SecretFact>& secrets,
                                const Ontology& ontology, const RunOptions& options) {
  const Schedule schedule = BuildSchedule(config, secrets, ontology);
  for (const auto& g : schedule.games) ValidateGameConfig(g, config.allow_self_play);

  TournamentResult result{{}, RatingBook(config.rating.initial_rating), {}, {}};
  for (const auto& alias : Aliases(config)) result.book.AddModel(alias);

  std::optional<RunLayout> layout;
  if (options.output_dir) {
    layout = RunLayout{*options.output_dir};
    for (int t = 1; t <= config.n_tournaments; ++t) {
      if (std::filesystem::exists(layout->Games(t))) {
        throw ConfigError(layout->TournamentDir(t).string() +
                          " already holds a run; choose a fresh output directory");
      }
    }
  }

  const std::size_t n = schedule.size();
  std::vector<std::optional<GameRecord>> done(n);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  const auto play = [&](const GameConfig& g) -> GameRecord {
    try {
      auto seeker = agents.Make(g.seeker_model, Role::kSeeker, g);
      auto holder = agents.Make(g.holder_model, Role::kHolder, g);
      return RunGame(g, *seeker, *holder, agents.Judge(), ontology);
    } catch (const std::exception& e) {
      GameRecord r;
      r.config = g;
      r.aborted = true;
      r.abort_reason = std::string("harness error: ") + e.what();
      return r;
    }
  };
  const auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      GameRecord r = play(schedule.games[i]);
      {
        std::lock_guard<std::mutex> lock(mu);
        done[i] = std::move(r);
      }
      ready.notify_all();
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.concurrency), n);
  std::vector<std::jthread> pool;
  struct StopGuard {
    std::atomic<bool>& stop;
    ~StopGuard() { stop.store(true); }
  } guard{stop};
  if (n_workers > 1) {
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  std::optional<RecordWriter> games, ratings;
  int open_tournament = 0;
  std::size_t tournament_begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const GameConfig& g = schedule.games[i];
    if (layout && g.tournament != open_tournament) {
      open_tournament = g.tournament;
      std::filesystem::create_directories(layout->TournamentDir(open_tournament));
      std::ofstream snapshot(layout->ConfigSnapshot(open_tournament), std::ios::trunc);
      snapshot << TournamentConfigToJson(config);
      games.emplace(layout->Games(open_tournament));
      ratings.emplace(layout->Ratings(open_tournament));
    }
    GameRecord record;
    if (n_workers <= 1) {
      record = play(g);
    } else {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      record = std::move(*done[i]);
      done[i].reset();
    }
    std::optional<RatingUpdate> update;
    if (!record.aborted) update = ApplyUpdate(result.book, record, config.rating);
    if (layout) {
      games->Write(record);
      if (update) ratings->Write(*update);
      std::ofstream(layout->Timing(open_tournament), std::ios::app)
          << EncodeTiming(record) << '\n';
    }
    if (options.on_game) options.on_game(record);
    result.records.push_back(std::move(record));

    const bool last_of_tournament =
        i + 1 == n || schedule.games[i + 1].tournament != g.tournament;
    if (last_of_tournament) {
      std::span<const GameRecord> slice(result.records.data() + tournament_begin,
                                        i + 1 - tournament_begin);
      result.per_tournament.push_back(
          Summarize(config.experiment, g.tournament, slice, result.book));
      if (layout) {
        RecordWriter(layout->Summary(g.tournament)).Write(result.per_tournament.back());
      }
      tournament_begin = i + 1;
    }
  }
  result.summary = Summarize(config.experiment, 0, result.records, result.book);
  if (layout) {
    RecordWriter(layout->root / kSummaryFile).Write(result.summary);
    EloTable table;
    table.Set(config.experiment, result.book);
    WriteEloTable(layout->EloTableFile(), table);
    std::ofstream(layout->RunSummary(), std::ios::trunc) << RenderSummary(result.summary);
  }
  return result;
}

}  // namespace aidg
