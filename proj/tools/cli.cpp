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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "aidg/analysis.hpp"
#include "aidg/arbiter.hpp"
#include "aidg/corpus.hpp"
#include "aidg/engine.hpp"
#include "aidg/error.hpp"
#include "aidg/rating.hpp"
#include "aidg/scripted.hpp"
#include "aidg/store.hpp"
#include "aidg/tournament.hpp"

namespace aidg::cli {
namespace {

namespace fs = std::filesystem;

// Raised when a trace directory holds nothing the verb can use.
class NoRecords : public Error {
 public:
  using Error::Error;
};

struct Corpora {
  std::vector<SecretFact> secrets;
  std::unique_ptr<Ontology> owned;
  const Ontology* ontology = nullptr;
};

std::ifstream OpenInput(const fs::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file " + path.string());
  return in;
}

Corpora LoadCorpora(const std::optional<fs::path>& secrets,
                    const std::optional<fs::path>& ontology) {
  Corpora c;
  if (secrets) {
    auto in = OpenInput(*secrets, "secrets");
    c.secrets = LoadSecretCorpus(in);
  } else {
    c.secrets = DefaultSecrets();
  }
  if (ontology) {
    auto in = OpenInput(*ontology, "ontology");
    c.owned = std::make_unique<Ontology>(LoadOntology(in));
    c.ontology = c.owned.get();
  } else {
    c.ontology = &DefaultOntology();
  }
  return c;
}

// Config files name corpora relative to their own directory.
TournamentConfig LoadConfigFile(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
  TournamentConfig config = LoadTournamentConfig(path);
  const fs::path base = path.parent_path();
  for (auto* p : {&config.secrets_path, &config.ontology_path}) {
    if (*p && p->value().is_relative()) *p = base / p->value();
  }
  return config;
}

std::string Describe(const Secret& secret) {
  if (const auto* fact = std::get_if<SecretFact>(&secret)) {
    return "#" + std::to_string(fact->id) + " \"" + fact->text + "\"";
  }
  const auto& word = std::get<OntologyWord>(secret);
  return word.word + " (" + word.category + ")";
}

// ---------------------------------------------------------------- traces

std::vector<GameRecord> CollectGames(const fs::path& dir) {
  std::vector<GameRecord> games;
  for (const auto& file : FindFiles(dir, kGamesFile)) {
    auto part = ReadGames(file);
    std::move(part.begin(), part.end(), std::back_inserter(games));
  }
  std::stable_sort(games.begin(), games.end(), [](const GameRecord& a, const GameRecord& b) {
    if (a.config.experiment != b.config.experiment) {
      return a.config.experiment < b.config.experiment;
    }
    return a.config.sequence < b.config.sequence;
  });
  return games;
}

RatingConfig RatingConfigFor(const fs::path& dir) {
  const auto snapshots = FindFiles(dir, "config.json");
  if (snapshots.empty()) return {};
  std::ifstream in(snapshots.front());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseTournamentConfig(text).rating;
}

void RequireDirectory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw NoRecords("not a directory: " + dir.string());
}

std::string FormatRatingRow(const std::string& model, const RoleRatings& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-24s %14.6f %14.6f %10.2f\n", model.c_str(), r.c_elo,
                r.v_elo, r.v_elo - r.c_elo);
  return buf;
}

std::string RenderBook(const RatingBook& book) {
  char head[160];
  std::snprintf(head, sizeof head, "%-24s %14s %14s %10s\n", "Model", "C_ELO", "V_ELO", "Gap");
  std::string text = head;
  for (const auto& [model, r] : book.ratings()) text += FormatRatingRow(model, r);
  return text;
}

// ---------------------------------------------------------------- verbs

struct TournamentArgs {
  std::string config;
  std::optional<std::string> experiment;
  std::optional<std::uint64_t> seed;
  std::optional<int> tournaments;
  std::optional<int> concurrency;
  std::optional<std::string> out;
  bool dry_run = false;
  bool scripted = false;
};

int RunTournamentCmd(const TournamentArgs& args, std::ostream& out) {
  TournamentConfig config = LoadConfigFile(args.config);
  if (args.experiment) config.experiment = ParseExperiment(*args.experiment);
  if (args.tournaments) config.n_tournaments = *args.tournaments;
  if (args.seed) {
    config.seeds.clear();
    for (int i = 0; i < config.n_tournaments; ++i) config.seeds.push_back(*args.seed + i);
  } else if (args.tournaments &&
             config.seeds.size() != static_cast<std::size_t>(config.n_tournaments)) {
    config.seeds.clear();
    for (int i = 1; i <= config.n_tournaments; ++i) config.seeds.push_back(i);
  }
  if (args.concurrency) config.concurrency = *args.concurrency;
  if (args.out) config.output_dir = *args.out;
  if (args.scripted) ForceScripted(config);
  config.Validate();

  const Corpora corpora = LoadCorpora(config.secrets_path, config.ontology_path);
  if (args.dry_run) {
    const Schedule schedule = BuildSchedule(config, corpora.secrets, *corpora.ontology);
    const std::size_t per = schedule.size() / static_cast<std::size_t>(config.n_tournaments);
    out << ToString(config.experiment) << ": " << config.models.size() << " models, "
        << config.n_tournaments << " tournaments\n";
    out << per << " games per tournament\n";
    out << schedule.size() << " games in total\n";
    for (const auto& g : schedule.games) {
      out << g.game_id << "  mode " << ToString(g.mode) << "  seeker " << g.seeker_model
          << "  holder " << g.holder_model << "  secret " << Describe(g.secret) << "\n";
    }
    return kOk;
  }

  auto provider = MakeAgentProvider(config, *corpora.ontology);
  RunOptions options;
  options.output_dir = config.output_dir;
  const TournamentResult result =
      RunTournaments(config, *provider, corpora.secrets, *corpora.ontology, options);
  out << RenderSummary(result.summary);
  out << "traces written to " << config.output_dir.string() << "\n";
  return kOk;
}

struct GameArgs {
  std::string experiment;
  std::optional<std::string> config;
  std::optional<std::string> seeker;
  std::optional<std::string> holder;
  std::string mode = "A";
  std::optional<int> secret_id;
  std::optional<std::string> word;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  bool json = false;
};

std::string RenderTranscript(const GameRecord& record) {
  std::string text;
  const GameConfig& g = record.config;
  text += std::string(ToString(g.experiment)) + " " + g.game_id + ": seeker " +
          g.seeker_model + ", holder " + g.holder_model + ", secret " + Describe(g.secret);
  if (g.experiment == Experiment::kAidg1) text += ", mode " + std::string(ToString(g.mode));
  text += "\n";
  for (const auto& t : record.transcript.turns()) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%3d", t.index);
    text += std::string(idx) + " seeker: " + t.seeker_utterance + "\n";
    for (const auto& note : t.notes) text += "    engine: " + note + "\n";
    if (!t.holder_utterance.empty()) text += "    holder: " + t.holder_utterance + "\n";
  }
  if (record.aborted) {
    text += "aborted: " + record.abort_reason + "\n";
  } else {
    text += std::string(ToString(record.outcome->winner)) + " wins (" +
            std::string(ToString(record.outcome->reason)) + ") at turn " +
            std::to_string(record.outcome->terminal_turn) + "\n";
  }
  return text;
}

int RunGameCmd(const GameArgs& args, std::ostream& out) {
  const Experiment experiment = ParseExperiment(args.experiment);
  std::optional<TournamentConfig> config;
  if (args.config) config = LoadConfigFile(*args.config);
  const Corpora corpora = config ? LoadCorpora(config->secrets_path, config->ontology_path)
                                 : LoadCorpora(std::nullopt, std::nullopt);
  const bool first = experiment == Experiment::kAidg1;

  GameConfig g;
  g.game_id = first ? "aidg1-single" : "aidg2-single";
  g.experiment = experiment;
  g.mode = first ? ParseMode(args.mode) : Mode::kNotApplicable;
  g.max_turns = DefaultMaxTurns(experiment);
  g.seed = args.seed;
  g.seeker_model = args.seeker.value_or(first ? "blind-random-seeker" : "oracle-seeker");
  g.holder_model = args.holder.value_or(first ? "stonewall-holder" : "truthful-holder");
  if (first) {
    if (args.word) throw ConfigError("--word applies to aidg2 games");
    if (args.secret_id) {
      const auto it = std::find_if(corpora.secrets.begin(), corpora.secrets.end(),
                                   [&](const SecretFact& s) { return s.id == *args.secret_id; });
      if (it == corpora.secrets.end()) throw ConfigError("no secret with that id");
      g.secret = *it;
    } else {
      g.secret = ShuffleSecrets(corpora.secrets, args.seed).front();
    }
  } else {
    if (args.secret_id) throw ConfigError("--secret-id applies to aidg1 games");
    if (args.word) {
      const auto idx = corpora.ontology->FindWord(*args.word);
      if (!idx) throw ConfigError("word not in the ontology: " + *args.word);
      g.secret = corpora.ontology->words()[*idx];
    } else {
      g.secret = DrawTargets(*corpora.ontology, 1, args.seed).front();
    }
  }

  std::unique_ptr<AgentProvider> provider;
  std::unique_ptr<Agent> seeker, holder;
  DeterministicJudge fallback_judge;
  LeakJudge* judge = &fallback_judge;
  if (config) {
    config->experiment = experiment;
    provider = MakeAgentProvider(*config, *corpora.ontology);
    seeker = provider->Make(g.seeker_model, Role::kSeeker, g);
    holder = provider->Make(g.holder_model, Role::kHolder, g);
    judge = &provider->Judge();
  } else {
    seeker = MakeScriptedAgent(ParseScriptedSpec(g.seeker_model), *corpora.ontology);
    holder = MakeScriptedAgent(ParseScriptedSpec(g.holder_model), *corpora.ontology);
  }

  const GameRecord record = RunGame(g, *seeker, *holder, *judge, *corpora.ontology);
  if (args.out) RecordWriter(*args.out).Write(record);
  if (args.json) {
    out << EncodeRecord(record) << "\n";
  } else {
    out << RenderTranscript(record);
  }
  return record.aborted ? kFailure : kOk;
}

int ReplayCmd(const fs::path& dir, std::ostream& out, std::ostream& err) {
  RequireDirectory(dir);
  std::vector<GameRecord> games = CollectGames(dir);
  if (games.empty()) throw NoRecords("no game records below " + dir.string());
  if (games.front().config.experiment != games.back().config.experiment) {
    throw ConfigError("replay expects a single run; found both experiments");
  }
  const RatingBook book = ReplayRatings(games, RatingConfigFor(dir));

  std::vector<RatingUpdate> stored;
  for (const auto& file : FindFiles(dir, kRatingsFile)) {
    auto part = ReadRatingUpdates(file);
    std::move(part.begin(), part.end(), std::back_inserter(stored));
  }
  std::stable_sort(stored.begin(), stored.end(),
                   [](const RatingUpdate& a, const RatingUpdate& b) { return a.sequence < b.sequence; });

  constexpr double kTolerance = 1e-9;
  const auto close = [](double a, double b) { return std::fabs(a - b) <= kTolerance; };
  std::vector<std::string> problems;
  const auto& replayed = book.history();
  if (!stored.empty() && stored.size() != replayed.size()) {
    problems.push_back("stored " + std::to_string(stored.size()) + " rating updates, replay produced " +
                       std::to_string(replayed.size()));
  }
  for (std::size_t i = 0; i < std::min(stored.size(), replayed.size()); ++i) {
    const RatingUpdate& s = stored[i];
    const RatingUpdate& r = replayed[i];
    if (s.game_id != r.game_id || s.sequence != r.sequence || !close(s.delta_c, r.delta_c) ||
        !close(s.delta_v, r.delta_v) || !close(s.expected, r.expected) ||
        !close(s.multiplier, r.multiplier)) {
      problems.push_back("update for " + s.game_id + " differs from replay");
    }
  }
  const fs::path run_summary = dir / kSummaryFile;
  if (fs::exists(run_summary)) {
    for (const auto& rec : ReadRecords(run_summary, RecordKind::kSummary)) {
      const auto& summary = std::get<TournamentSummary>(rec);
      for (const auto& [model, r] : summary.ratings) {
        if (!book.Has(model)) {
          problems.push_back("summary lists unknown model " + model);
          continue;
        }
        const RoleRatings& live = book.Get(model);
        if (!close(live.c_elo, r.c_elo) || !close(live.v_elo, r.v_elo)) {
          problems.push_back("final ratings of " + model + " differ from replay");
        }
      }
    }
  }

  out << RenderBook(book);
  out << games.size() << " games replayed, " << replayed.size() << " rating updates\n";
  if (!problems.empty()) {
    for (const auto& p : problems) err << "mismatch: " << p << "\n";
    return kReplayMismatch;
  }
  out << "stored ratings match\n";
  return kOk;
}

int RateCmd(const fs::path& dir, const std::optional<std::string>& tsv, std::ostream& out) {
  RequireDirectory(dir);
  const std::vector<GameRecord> games = CollectGames(dir);
  if (games.empty()) throw NoRecords("no game records below " + dir.string());
  const RatingConfig rating = RatingConfigFor(dir);
  EloTable table;
  for (Experiment e : {Experiment::kAidg1, Experiment::kAidg2}) {
    std::vector<GameRecord> subset;
    std::copy_if(games.begin(), games.end(), std::back_inserter(subset),
                 [&](const GameRecord& g) { return g.config.experiment == e; });
    if (subset.empty()) continue;
    const RatingBook book = ReplayRatings(subset, rating);
    out << ToString(e) << " (" << subset.size() << " games)\n" << RenderBook(book);
    table.Set(e, book);
  }
  if (tsv) {
    WriteEloTable(*tsv, table);
    out << "rating table written to " << *tsv << "\n";
  }
  return kOk;
}

int AnalyzeCmd(const fs::path& dir, const std::string& report,
               const std::optional<std::string>& out_dir, std::ostream& out,
               std::ostream& err) {
  RequireDirectory(dir);
  const std::vector<GameRecord> games = CollectGames(dir);
  EloTable table;
  for (const auto& file : FindFiles(dir, kEloTableFile)) table.Merge(ReadEloTable(file));
  if (games.empty() && table.rows.empty()) {
    throw NoRecords("no game records or rating tables below " + dir.string());
  }

  std::vector<ReportKind> kinds;
  if (report == "all") {
    kinds = AllReportKinds();
  } else {
    kinds.push_back(*ParseReportKind(report));
  }
  const fs::path target = out_dir ? fs::path(*out_dir) : dir / "reports";
  int rendered = 0;
  for (ReportKind kind : kinds) {
    RenderedReport r;
    try {
      r = RenderReport(kind, games, table);
    } catch (const StatsError& e) {
      if (kinds.size() == 1) throw NoRecords(e.what());
      err << "skipped " << ToString(kind) << ": " << e.what() << "\n";
      continue;
    }
    if (rendered++ > 0) out << "\n";
    out << "== " << r.name << " ==\n" << r.text;
    fs::create_directories(target);
    std::ofstream(target / (r.name + ".txt"), std::ios::trunc) << r.text;
    std::ofstream(target / (r.name + ".json"), std::ios::trunc) << r.json;
  }
  if (rendered == 0) throw NoRecords("no report could be produced from " + dir.string());
  return kOk;
}

int ValidateCorpusCmd(const std::optional<std::string>& secrets,
                      const std::optional<std::string>& ontology, std::ostream& out) {
  bool ok = true;
  const auto print = [&](const char* corpus, const std::vector<CorpusCheckResult>& results) {
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << corpus << ": " << r.name;
      if (!r.passed && !r.detail.empty()) out << " (" << r.detail << ")";
      out << "\n";
      ok = ok && r.passed;
    }
  };
  {
    std::istringstream shipped{std::string(DefaultSecretsText())};
    std::ifstream file;
    if (secrets) file = OpenInput(*secrets, "secrets");
    print("secrets", CheckSecretCorpus(secrets ? static_cast<std::istream&>(file) : shipped));
  }
  {
    std::istringstream shipped{std::string(DefaultOntologyText())};
    std::ifstream file;
    if (ontology) file = OpenInput(*ontology, "ontology");
    std::istream& in = ontology ? static_cast<std::istream&>(file) : shipped;
    std::vector<CorpusCheckResult> results;
    try {
      results = CheckOntology(ParseOntologyDocument(in));
    } catch (const CorpusError& e) {
      results.push_back({e.check(), "syntax", false, e.what()});
    }
    print("ontology", results);
  }
  return ok ? kOk : kCorpusInvalid;
}

// Routes diagnostics (engine warnings included) to `err`.
class LoggerScope {
 public:
  LoggerScope(std::ostream& err, bool verbose) : previous_(spdlog::default_logger()) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    sink->set_pattern("[%l] %v");
    auto logger = std::make_shared<spdlog::logger>("aidg", sink);
    logger->set_level(verbose ? spdlog::level::info : spdlog::level::warn);
    spdlog::set_default_logger(logger);
  }
  ~LoggerScope() { spdlog::set_default_logger(previous_); }
  LoggerScope(const LoggerScope&) = delete;
  LoggerScope& operator=(const LoggerScope&) = delete;

 private:
  std::shared_ptr<spdlog::logger> previous_;
};

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial information-deduction games: tournaments, ratings, analysis",
               "aidg"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  const std::vector<std::string> experiments{"aidg1", "aidg2"};

  TournamentArgs t;
  auto* run_t = app.add_subcommand("run-tournament", "Run a round-robin tournament");
  run_t->add_option("--config", t.config, "Tournament config (JSON)")->required();
  run_t->add_option("--experiment", t.experiment)->check(CLI::IsMember(experiments));
  run_t->add_option("--seed", t.seed, "First tournament seed; later ones count up");
  run_t->add_option("--tournaments", t.tournaments)->check(CLI::PositiveNumber);
  run_t->add_option("--concurrency", t.concurrency, "Games in flight")->check(CLI::PositiveNumber);
  run_t->add_option("--out", t.out, "Output directory");
  run_t->add_flag("--dry-run", t.dry_run, "Print the schedule and exit");
  run_t->add_flag("--scripted", t.scripted, "Replace all agents with scripted ones");

  GameArgs g;
  auto* run_g = app.add_subcommand("run-game", "Play one game and print the transcript");
  run_g->add_option("--experiment", g.experiment)->required()->check(CLI::IsMember(experiments));
  run_g->add_option("--config", g.config, "Resolve --seeker/--holder as config aliases");
  run_g->add_option("--seeker", g.seeker, "Scripted agent spec or config alias");
  run_g->add_option("--holder", g.holder, "Scripted agent spec or config alias");
  run_g->add_option("--mode", g.mode, "AIDG-I seeker mode")->check(CLI::IsMember({"A", "B"}));
  run_g->add_option("--secret-id", g.secret_id, "AIDG-I secret id");
  run_g->add_option("--word", g.word, "AIDG-II target word");
  run_g->add_option("--seed", g.seed);
  run_g->add_option("--out", g.out, "Append the game record to this JSONL file");
  run_g->add_flag("--json", g.json, "Print the canonical record instead of a transcript");

  std::string replay_dir;
  auto* replay = app.add_subcommand("replay", "Recompute ratings and compare with stored ones");
  replay->add_option("dir", replay_dir, "Run directory")->required();

  std::string rate_dir;
  std::optional<std::string> rate_tsv;
  auto* rate = app.add_subcommand("rate", "Recompute ratings from game records");
  rate->add_option("dir", rate_dir, "Trace directory")->required();
  rate->add_option("--tsv", rate_tsv, "Write the rating table here");

  std::string analyze_dir;
  std::string report = "all";
  std::optional<std::string> analyze_out;
  std::vector<std::string> reports{"all"};
  for (ReportKind k : AllReportKinds()) reports.emplace_back(ToString(k));
  auto* analyze = app.add_subcommand("analyze", "Produce result tables from traces");
  analyze->add_option("dir", analyze_dir, "Trace directory")->required();
  analyze->add_option("--report", report)->check(CLI::IsMember(reports));
  analyze->add_option("--out", analyze_out, "Report file directory (default: <dir>/reports)");

  std::optional<std::string> secrets_file, ontology_file;
  auto* validate = app.add_subcommand("validate-corpus", "Check corpus invariants");
  validate->add_option("--secrets", secrets_file, "Secret corpus (default: shipped)");
  validate->add_option("--ontology", ontology_file, "Ontology (default: shipped)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  LoggerScope logging(err, verbose);
  try {
    if (*run_t) return RunTournamentCmd(t, out);
    if (*run_g) return RunGameCmd(g, out);
    if (*replay) return ReplayCmd(replay_dir, out, err);
    if (*rate) return RateCmd(rate_dir, rate_tsv, out);
    if (*analyze) return AnalyzeCmd(analyze_dir, report, analyze_out, out, err);
    if (*validate) return ValidateCorpusCmd(secrets_file, ontology_file, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const AgentResolutionError& e) {
    err << "error: " << e.what() << "\n";
    return kAgentResolution;
  } catch (const NoRecords& e) {
    err << "error: " << e.what() << "\n";
    return kNoRecords;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << "\n";
    return kCorpusInvalid;
  } catch (const ReplayMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kReplayMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace aidg::cli
