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

// Runs the seven acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aidg/analysis.hpp"
#include "aidg/arbiter.hpp"
#include "aidg/corpus.hpp"
#include "aidg/engine.hpp"
#include "aidg/rating.hpp"
#include "aidg/scripted.hpp"
#include "aidg/stats.hpp"
#include "aidg/store.hpp"
#include "aidg/tournament.hpp"
#include "test_support.hpp"

namespace aidg {
namespace {

using Clock = std::chrono::steady_clock;

// Collects failed expectations for one criterion.
class Checker {
 public:
  void Near(const std::string& what, double got, double want, double tol) {
    if (!(std::fabs(got - want) <= tol)) {
      Fail(what + " = " + Num(got) + ", want " + Num(want) + " +/- " + Num(tol));
    }
  }
  void Equal(const std::string& what, double got, double want) {
    if (got != want) Fail(what + " = " + Num(got) + ", want exactly " + Num(want));
  }
  void True(const std::string& what, bool ok) {
    if (!ok) Fail(what);
  }
  void Fail(const std::string& why) {
    if (failures_.size() < 5) failures_.push_back(why);
    ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string Summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) s += "; ... " + std::to_string(count_) + " failures";
    return s;
  }

 private:
  static std::string Num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
  }
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

double Ms(Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

// 1. Worked rating example.
void RatingExample(Checker& c, std::string& note) {
  const GameRecord game =
      testing::CompletedGame(Experiment::kAidg2, "seeker", "holder", WinReason::kCorrectLock, 10);
  const auto t0 = Clock::now();
  RatingBook book;
  book.AddModel("seeker");
  book.AddModel("holder");
  RatingUpdate seed;
  seed.seeker = "seeker";
  seed.holder = "holder";
  seed.delta_c = -100;
  seed.delta_v = 100;
  book.Commit(seed);
  const RatingUpdate u = ApplyUpdate(book, game, RatingConfig{24, 1500, 10, 400});
  const double elapsed = Ms(Clock::now() - t0);
  c.Near("E_C", u.expected, 0.240, 0.001);
  c.Near("R'_C", book.Get("seeker").c_elo, 1415.96, 0.05);
  c.Near("R'_V", book.Get("holder").v_elo, 1584.04, 0.05);
  c.True("runtime " + std::to_string(elapsed) + " ms >= 1 ms", elapsed < 1.0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "E_C=%.4f R'_C=%.3f R'_V=%.3f in %.3f ms", u.expected,
                book.Get("seeker").c_elo, book.Get("holder").v_elo, elapsed);
  note = buf;
}

// 2. Turn decay.
void Decay(Checker& c, std::string& note) {
  c.Equal("M(1)", TurnDecay(Experiment::kAidg2, 1), 2.0);
  c.Equal("M(8)", TurnDecay(Experiment::kAidg2, 8), 1.125);
  c.Equal("M(16)", TurnDecay(Experiment::kAidg2, 16), 0.125);
  for (int t = 1; t <= kAidg1MaxTurns; ++t) {
    c.Equal("AIDG-I M(" + std::to_string(t) + ")", TurnDecay(Experiment::kAidg1, t), 1.0);
  }
  note = "M(1)=2 M(8)=1.125 M(16)=0.125, AIDG-I M=1";
}

// 3. Schedule sizes.
void Schedules(Checker& c, std::string& note) {
  TournamentConfig cfg =
      testing::ScriptedConfig(Experiment::kAidg1, 6, "blind-random-seeker", "stonewall-holder", 5);
  const auto one = BuildSchedule(cfg, DefaultSecrets(), DefaultOntology());
  cfg.experiment = Experiment::kAidg2;
  const auto two = BuildSchedule(cfg, DefaultSecrets(), DefaultOntology());
  std::map<int, int> per1, per2;
  for (const auto& g : one.games) ++per1[g.tournament];
  for (const auto& g : two.games) ++per2[g.tournament];
  for (const auto& [t, n] : per1) c.Equal("AIDG-I games in tournament " + std::to_string(t), n, 60);
  for (const auto& [t, n] : per2) c.Equal("AIDG-II games in tournament " + std::to_string(t), n, 30);
  c.Equal("AIDG-I total", static_cast<double>(one.size()), 300);
  c.Equal("AIDG-II total", static_cast<double>(two.size()), 150);

  std::mt19937_64 rng(3);
  int cases = 0;
  for (int m = 2; m <= 10; ++m) {
    std::vector<std::string> models;
    for (int i = 0; i < m; ++i) models.push_back("m" + std::to_string(i));
    for (int rep = 0; rep < 12; ++rep, ++cases) {
      const auto seed = rng();
      c.Equal("C(m,2)*4 for m=" + std::to_string(m),
              static_cast<double>(ScheduleAidg1(models, DefaultSecrets(), seed).size()),
              m * (m - 1) / 2 * 4);
      c.Equal("m(m-1) for m=" + std::to_string(m),
              static_cast<double>(ScheduleAidg2(models, DefaultOntology(), seed).size()),
              m * (m - 1));
    }
  }
  note = "60/30 per tournament, 300/150 over 5, closed forms hold for " + std::to_string(cases) +
         " cases with 2<=m<=10";
}

// 4. Statistics on the published figures.
void Statistics(Checker& c, std::string& note) {
  const auto t0 = Clock::now();
  const EloTable table = testing::PublishedRatings();
  const DefenseAdvantage d = BuildDefenseAdvantage(table);
  c.Near("defense advantage AIDG-I", d.aidg1->mean_gap, 349.6, 0.1);
  c.Near("defense advantage AIDG-II", d.aidg2->mean_gap, 161.6, 0.1);
  c.Near("defense advantage combined", d.combined->mean_gap, 255.6, 0.1);
  c.Near("Cohen's d AIDG-I", d.aidg1->cohens_d, 5.47, 0.01);
  c.Near("Cohen's d AIDG-II", d.aidg2->cohens_d, 2.67, 0.01);
  c.Near("Cohen's d combined", d.combined->cohens_d, 4.07, 0.01);

  std::vector<double> c1, c2, v1, v2;
  for (const auto& row : table.rows) {
    c1.push_back(row.aidg1->c_elo);
    c2.push_back(row.aidg2->c_elo);
    v1.push_back(row.aidg1->v_elo);
    v2.push_back(row.aidg2->v_elo);
  }
  c.Equal("Spearman V", stats::SpearmanRho(v1, v2).statistic, -1.0);
  c.Near("Spearman C", stats::SpearmanRho(c1, c2).statistic, 0.6, 0.001);

  const std::vector<double> disq{0, 8, 32, 64, 72, 72};
  const std::vector<double> win{28, 32, 12, 8, 4, 4};
  c.Near("Pearson disqualification vs win rate", stats::PearsonR(disq, win), -0.95, 0.01);

  const stats::ContingencyTable2x2 modes{32, 114, 5, 138};
  const auto odds = stats::OddsRatioCi(modes);
  c.Near("odds ratio", odds.odds_ratio, 7.75, 0.05);
  c.Near("odds ratio CI low", odds.lower, 2.92, 0.05);
  c.Near("odds ratio CI high", odds.upper, 20.53, 0.05);
  const double fisher = stats::FisherExact(modes);
  c.True("Fisher p < 1e-5", fisher < 1e-5);

  const auto chi =
      stats::ChiSquare2x2({252, 37, 128, 22}, stats::ContinuityCorrection::kYates);
  c.Near("chi-square", chi.statistic, 0.156, 0.01);
  c.Near("chi-square p", chi.p_value, 0.69, 0.01);
  const double elapsed = Ms(Clock::now() - t0);
  c.True("runtime " + std::to_string(elapsed) + " ms >= 1 s", elapsed < 1000);

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "adv %.1f/%.1f/%.1f d %.2f/%.2f/%.2f rho_V %.1f rho_C %.3f OR %.2f (%.2f, %.2f) "
                "chi2 %.3f p %.2f in %.1f ms",
                d.aidg1->mean_gap, d.aidg2->mean_gap, d.combined->mean_gap, d.aidg1->cohens_d,
                d.aidg2->cohens_d, d.combined->cohens_d, stats::SpearmanRho(v1, v2).statistic,
                stats::SpearmanRho(c1, c2).statistic, odds.odds_ratio, odds.lower, odds.upper,
                chi.statistic, chi.p_value, elapsed);
  note = buf;
}

GameConfig SingleGame(Experiment e, int index, Mode mode) {
  GameConfig g;
  g.experiment = e;
  g.game_id = "acceptance-" + std::to_string(index);
  g.sequence = index;
  g.seed = static_cast<std::uint64_t>(index);
  g.seeker_model = "seeker";
  g.holder_model = "holder";
  g.mode = mode;
  g.max_turns = DefaultMaxTurns(e);
  return g;
}

// 5. Scripted games.
void ScriptedRuns(Checker& c, std::string& note) {
  const auto t0 = Clock::now();
  const Ontology& o = DefaultOntology();
  DeterministicJudge judge;
  int wins = 0, violations = 0, max_lock = 0;
  for (std::size_t i = 0; i < o.words().size(); ++i) {
    GameConfig g = SingleGame(Experiment::kAidg2, static_cast<int>(i), Mode::kNotApplicable);
    g.secret = o.words()[i];
    auto seeker = MakeScriptedAgent(ParseScriptedSpec("oracle-seeker"), o);
    auto holder = MakeScriptedAgent(ParseScriptedSpec("truthful-holder"), o);
    const GameRecord r = RunGame(g, *seeker, *holder, judge, o);
    for (const auto& t : r.transcript.turns()) {
      if (const auto* v = std::get_if<ConstraintVerdict>(&t.verdict); v && v->violation) {
        ++violations;
      }
    }
    if (r.outcome && r.outcome->reason == WinReason::kCorrectLock) {
      ++wins;
      max_lock = std::max(max_lock, r.outcome->terminal_turn);
    } else {
      c.Fail("oracle did not lock correctly on " + o.words()[i].word);
    }
  }
  c.Equal("oracle wins", wins, 100);
  c.True("latest lock at turn " + std::to_string(max_lock) + " > 9", max_lock <= 9);
  c.Equal("direct-guess violations", violations, 0);

  const auto& secrets = DefaultSecrets();
  int leak_games = 0;
  for (int turn = 1; turn <= kAidg1MaxTurns; ++turn) {
    for (Mode mode : {Mode::kConfirmation, Mode::kBlind}) {
      GameConfig g = SingleGame(Experiment::kAidg1, 1000 + leak_games, mode);
      g.secret = secrets[static_cast<std::size_t>(leak_games) % secrets.size()];
      auto seeker = MakeScriptedAgent(ParseScriptedSpec("blind-random-seeker"), o);
      auto holder = MakeScriptedAgent(
          ParseScriptedSpec("leaky-holder(" + std::to_string(turn) + ")"), o);
      const GameRecord r = RunGame(g, *seeker, *holder, judge, o);
      c.True("leaky-holder(" + std::to_string(turn) + ") ends leak-explicit at its turn",
             r.outcome && r.outcome->reason == WinReason::kLeakExplicit &&
                 r.outcome->terminal_turn == turn);
      ++leak_games;
    }
  }
  int walls = 0;
  for (std::size_t i = 0; i < secrets.size(); ++i, ++walls) {
    GameConfig g = SingleGame(Experiment::kAidg1, 2000 + static_cast<int>(i),
                              i % 2 ? Mode::kBlind : Mode::kConfirmation);
    g.secret = secrets[i];
    auto seeker = MakeScriptedAgent(ParseScriptedSpec("blind-random-seeker"), o);
    auto holder = MakeScriptedAgent(ParseScriptedSpec("stonewall-holder"), o);
    const GameRecord r = RunGame(g, *seeker, *holder, judge, o);
    c.True("stonewall ends horizon-exhausted at turn 10",
           r.outcome && r.outcome->reason == WinReason::kHorizonExhausted &&
               r.outcome->terminal_turn == 10);
  }
  const double elapsed = Ms(Clock::now() - t0);
  c.True("runtime " + std::to_string(elapsed) + " ms >= 10 s", elapsed < 10000);
  note = std::to_string(wins) + "/100 oracle wins (latest lock turn " + std::to_string(max_lock) +
         ", " + std::to_string(violations) + " violations), " + std::to_string(leak_games) +
         " leaky and " + std::to_string(walls) + " stonewall games in " +
         std::to_string(static_cast<int>(elapsed)) + " ms";
}

std::string Encoded(const TournamentResult& r) {
  std::string s;
  for (const auto& g : r.records) s += EncodeRecord(g) + "\n";
  for (const auto& u : r.book.history()) s += EncodeRecord(u) + "\n";
  for (const auto& t : r.per_tournament) s += EncodeRecord(t) + "\n";
  return s;
}

// 6. Determinism and replay.
void Determinism(Checker& c, std::string& note) {
  const Ontology& o = DefaultOntology();
  int runs = 0;
  double worst = 0;
  for (Experiment e : {Experiment::kAidg1, Experiment::kAidg2}) {
    const bool first = e == Experiment::kAidg1;
    TournamentConfig a = testing::ScriptedConfig(
        e, 4, first ? "blind-random-seeker" : "oracle-seeker",
        first ? "leaky-holder(5)" : "truthful-holder", 3, 1);
    TournamentConfig b = a;
    b.concurrency = 4;
    auto pa = MakeAgentProvider(a, o);
    auto pb = MakeAgentProvider(b, o);
    const auto ra = RunTournaments(a, *pa, DefaultSecrets(), o);
    const auto rb = RunTournaments(b, *pb, DefaultSecrets(), o);
    runs += 2;
    c.True(std::string(ToString(e)) + " traces differ between identical runs",
           Encoded(ra) == Encoded(rb));
    c.True(std::string(ToString(e)) + " rating books differ",
           ra.book.ratings() == rb.book.ratings() && ra.book.history() == rb.book.history());

    testing::TempDir dir;
    RunOptions options;
    options.output_dir = dir.path();
    auto pc = MakeAgentProvider(a, o);
    const auto rc = RunTournaments(a, *pc, DefaultSecrets(), o, options);
    std::vector<GameRecord> stored;
    for (const auto& p : FindFiles(dir.path(), kGamesFile)) {
      auto part = ReadGames(p);
      stored.insert(stored.end(), part.begin(), part.end());
    }
    const RatingBook replayed = ReplayRatings(stored, a.rating);
    for (const auto& [alias, live] : rc.book.ratings()) {
      const auto& back = replayed.Get(alias);
      worst = std::max({worst, std::fabs(back.c_elo - live.c_elo), std::fabs(back.v_elo - live.v_elo)});
    }
    c.True("persisted run differs from live run", Encoded(rc) == Encoded(ra));
  }
  c.True("replay drift above 1e-9", worst <= 1e-9);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d runs byte-identical, replay drift %.1e", runs, worst);
  note = buf;
}

// 7. Randomized invariant suites.
void Invariants(Checker& c, std::string& note) {
  constexpr int kCases = 200;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rating(800, 2400);
  std::uniform_int_distribution<int> coin(0, 1);

  // Zero-sum and conservation.
  const std::vector<std::string> models{"a", "b", "c", "d"};
  const std::vector<WinReason> reasons{WinReason::kCorrectLock, WinReason::kWrongLock,
                                       WinReason::kDisqualification, WinReason::kWrongFinalGuess};
  for (int i = 0; i < kCases; ++i) {
    RatingBook book;
    for (const auto& m : models) book.AddModel(m);
    const int games = 1 + static_cast<int>(rng() % 30);
    for (int k = 0; k < games; ++k) {
      const auto& s = models[rng() % 4];
      auto h = models[rng() % 4];
      while (h == s) h = models[rng() % 4];
      const WinReason reason = reasons[rng() % 4];
      const int turn = reason == WinReason::kWrongFinalGuess ? 16 : 1 + static_cast<int>(rng() % 15);
      const auto u = ApplyUpdate(
          book, testing::CompletedGame(Experiment::kAidg2, s, h, reason, turn, k), {});
      c.True("update not zero-sum", std::fabs(u.delta_c + u.delta_v) < 1e-12);
    }
    double total = 0;
    for (const auto& [m, r] : book.ratings()) total += r.c_elo + r.v_elo;
    c.True("ratings not conserved", std::fabs(total - 8 * 1500.0) <= 1e-9 * games);
  }

  // Monotonicity and the 400-point rule.
  for (int i = 0; i < kCases; ++i) {
    const double v = rating(rng), lo = rating(rng), hi = lo + 1 + rating(rng) / 10;
    c.True("E_C not increasing in C", ExpectedSeekerScore(lo, v) < ExpectedSeekerScore(hi, v));
    c.True("E_C not decreasing in V", ExpectedSeekerScore(v, lo) > ExpectedSeekerScore(v, hi));
    const double e = ExpectedSeekerScore(v + 400, v);
    c.Near("odds at +400", e / (1 - e), 10.0, 1e-9);
  }

  // Store round trip.
  for (int i = 0; i < kCases; ++i) {
    const Experiment e = coin(rng) ? Experiment::kAidg1 : Experiment::kAidg2;
    GameRecord r = testing::CompletedGame(
        e, "s" + std::to_string(rng() % 9), "h\"" + std::to_string(rng() % 9), e == Experiment::kAidg1 ? WinReason::kLeakImplicit : WinReason::kWrongLock,
        1 + static_cast<int>(rng() % 9), static_cast<std::int64_t>(rng() % 1000));
    r.config.seed = rng();
    if (coin(rng)) r.lock = LockEvent{1, "guess " + std::to_string(rng() % 50)};
    const auto back = std::get<GameRecord>(DecodeRecord(EncodeRecord(r)));
    c.True("game record round trip", back == r);
  }

  // Vocabulary closure.
  const std::vector<std::string> words{"yes", "no", "maybe", "Yes.", "NO!", " maybe ", "yep",
                                       "no way", "perhaps", "", "?", "Maybe?", "yes yes"};
  const std::set<std::string> closed{"yes", "no", "maybe"};
  for (int i = 0; i < kCases; ++i) {
    const std::string& w = words[rng() % words.size()];
    const auto got = NormalizeHolderResponse(w);
    std::string core;
    for (char ch : w) {
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == ' ') core += static_cast<char>(std::tolower(ch));
    }
    while (!core.empty() && core.front() == ' ') core.erase(core.begin());
    while (!core.empty() && core.back() == ' ') core.pop_back();
    c.True("vocabulary closure for '" + w + "'", got.has_value() == (closed.count(core) == 1));
    if (got) c.True("vocabulary closure value for '" + w + "'", std::string(ToString(*got)) == core);
  }

  // Role balance.
  for (int i = 0; i < kCases; ++i) {
    const int m = 2 + static_cast<int>(rng() % 9);
    std::vector<std::string> ms;
    for (int k = 0; k < m; ++k) ms.push_back("m" + std::to_string(k));
    std::map<std::string, int> seeker, holder;
    for (const auto& g : ScheduleAidg1(ms, DefaultSecrets(), rng()).games) {
      ++seeker[g.seeker_model];
      ++holder[g.holder_model];
    }
    for (const auto& a : ms) {
      c.True("AIDG-I role balance", seeker[a] == 2 * (m - 1) && holder[a] == 2 * (m - 1));
    }
  }
  note = "5 suites x " + std::to_string(kCases) + " randomized cases";
}

}  // namespace
}  // namespace aidg

int main() {
  using Fn = std::function<void(aidg::Checker&, std::string&)>;
  const std::vector<std::pair<const char*, Fn>> criteria{
      {"rating worked example", aidg::RatingExample},
      {"turn decay", aidg::Decay},
      {"schedule sizes", aidg::Schedules},
      {"statistics fixtures", aidg::Statistics},
      {"scripted games", aidg::ScriptedRuns},
      {"determinism and replay", aidg::Determinism},
      {"invariant suites", aidg::Invariants},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    aidg::Checker checker;
    std::string note;
    try {
      fn(checker, note);
    } catch (const std::exception& e) {
      checker.Fail(std::string("exception: ") + e.what());
    }
    if (checker.ok()) {
      std::printf("PASS %d %s: %s\n", n, name, note.c_str());
    } else {
      ++failed;
      std::printf("FAIL %d %s: %s\n", n, name, checker.Summary().c_str());
    }
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
