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

#include "aidg/analysis.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aidg/error.hpp"

namespace aidg {
namespace {

using Json = nlohmann::ordered_json;

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

std::string Pct(double share) { return Fmt("%.1f%%", 100.0 * share); }

// Very small p-values are shown against a floor, as in published tables.
std::string FormatP(double p, double floor) {
  if (p < floor) return Fmt("<%.*f", floor < 1e-4 ? 5 : 4, floor);
  return Fmt("%.3f", p);
}

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<const GameRecord*> Completed(std::span<const GameRecord> records,
                                         std::optional<Experiment> experiment = {}) {
  std::vector<const GameRecord*> out;
  for (const auto& r : records) {
    if (r.aborted || !r.outcome) continue;
    if (experiment && r.config.experiment != *experiment) continue;
    out.push_back(&r);
  }
  return out;
}

std::vector<OutcomeShare> Shares(const std::vector<const GameRecord*>& games,
                                 std::initializer_list<WinReason> reasons) {
  std::vector<OutcomeShare> out;
  for (WinReason reason : reasons) {
    OutcomeShare s{reason, 0, 0.0};
    for (const auto* g : games) {
      if (g->outcome->reason == reason) ++s.count;
    }
    s.share = Ratio(s.count, static_cast<std::int64_t>(games.size()));
    out.push_back(s);
  }
  return out;
}

std::optional<ModeComparison> CompareModes(const std::vector<const GameRecord*>& games) {
  ModeComparison m;
  std::map<std::string, ModeRow> rows;
  for (const auto* g : games) {
    const bool won = g->outcome->winner == Role::kSeeker;
    ModeRow& row = rows[g->config.seeker_model];
    row.model = g->config.seeker_model;
    if (g->config.mode == Mode::kConfirmation) {
      ++m.games_a, ++row.games_a;
      if (won) ++m.wins_a, ++row.wins_a;
    } else if (g->config.mode == Mode::kBlind) {
      ++m.games_b, ++row.games_b;
      if (won) ++m.wins_b, ++row.wins_b;
    }
  }
  if (m.games_a == 0 || m.games_b == 0) return std::nullopt;
  const stats::ContingencyTable2x2 t{m.wins_a, m.games_a - m.wins_a, m.wins_b,
                                     m.games_b - m.wins_b};
  try {
    m.odds_ratio = stats::OddsRatioCi(t);
  } catch (const StatsError&) {
    return std::nullopt;
  }
  m.fisher_p = stats::FisherExact(t);
  for (auto& [model, row] : rows) m.per_model.push_back(row);
  // Largest mode-A advantage first.
  std::stable_sort(m.per_model.begin(), m.per_model.end(),
                   [](const ModeRow& x, const ModeRow& y) {
                     return Ratio(x.wins_a, x.games_a) > Ratio(y.wins_a, y.games_a);
                   });
  return m;
}

std::vector<DisqualificationRow> Disqualifications(
    const std::vector<const GameRecord*>& games) {
  std::map<std::string, DisqualificationRow> rows;
  std::map<std::string, double> turn_sums;
  for (const auto* g : games) {
    auto& row = rows[g->config.seeker_model];
    row.model = g->config.seeker_model;
    ++row.games;
    if (g->outcome->winner == Role::kSeeker) ++row.wins;
    if (g->outcome->reason == WinReason::kDisqualification) {
      ++row.disqualifications;
      turn_sums[row.model] += g->outcome->terminal_turn;
    }
  }
  std::vector<DisqualificationRow> out;
  for (auto& [model, row] : rows) {
    row.disq_rate = Ratio(row.disqualifications, row.games);
    row.win_rate = Ratio(row.wins, row.games);
    if (row.disqualifications > 0) {
      row.mean_violation_turn = turn_sums[model] / static_cast<double>(row.disqualifications);
    }
    out.push_back(row);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DisqualificationRow& a, const DisqualificationRow& b) {
                     return a.disq_rate < b.disq_rate;
                   });
  return out;
}

ResponseDistribution Responses(const std::vector<const GameRecord*>& games) {
  ResponseDistribution d;
  for (const auto* g : games) {
    ResponseCounts& c =
        g->outcome->winner == Role::kHolder ? d.holder_won : d.holder_lost;
    for (const auto& t : g->transcript.turns()) {
      switch (t.response) {
        case ResponseKind::kYes: ++c.yes; break;
        case ResponseKind::kNo: ++c.no; break;
        case ResponseKind::kMaybe: ++c.maybe; break;
        default: break;
      }
    }
  }
  if (d.holder_won.total() > 0 && d.holder_lost.total() > 0) {
    d.maybe_z = stats::TwoProportionZ(d.holder_won.maybe, d.holder_won.total(),
                                      d.holder_lost.maybe, d.holder_lost.total());
  }
  return d;
}

std::optional<DefenseRow> DefenseFor(const EloTable& table, Experiment e) {
  stats::GapSample sample;
  for (const auto& row : table.rows) {
    const auto& r = e == Experiment::kAidg1 ? row.aidg1 : row.aidg2;
    if (r) sample.emplace_back(row.model, r->v_elo - r->c_elo);
  }
  if (sample.size() < 2) return std::nullopt;
  std::vector<double> gaps;
  for (const auto& [m, g] : sample) gaps.push_back(g);
  DefenseRow row;
  row.label = std::string(ToString(e));
  row.models = sample.size();
  row.mean_gap = stats::Mean(gaps);
  row.cohens_d = stats::CohensDGap(sample);
  row.p_value = stats::OneSampleT(gaps).p_value;
  return row;
}

Json TestJson(const std::optional<stats::TestResult>& t) {
  if (!t) return nullptr;
  return Json{{"statistic", t->statistic}, {"p_value", t->p_value}};
}

Json RatingsJson(const std::optional<RoleRatings>& r) {
  if (!r) return nullptr;
  return Json{{"c_elo", r->c_elo}, {"v_elo", r->v_elo}};
}

RenderedReport RenderElo(const EloTable& table) {
  const EloReport rep = BuildEloReport(table);
  std::ostringstream text;
  text << Fmt("%-24s %8s %8s %8s %5s\n", "Model", "C_ELO", "V_ELO", "Gap", "Rank");
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    text << Fmt("%-24s %8.1f %8.1f %8.1f %5d\n", r.ratings.model.c_str(), r.avg_c,
                r.avg_v, r.gap, r.rank);
    rows.push_back(Json{{"model", r.ratings.model},
                        {"aidg1", RatingsJson(r.ratings.aidg1)},
                        {"aidg2", RatingsJson(r.ratings.aidg2)},
                        {"avg_c", r.avg_c},
                        {"avg_v", r.avg_v},
                        {"gap", r.gap},
                        {"rank", r.rank}});
  }
  if (rep.rows.size() >= 2) {
    text << Fmt("%-24s %8.1f %8.1f\n", "Std. Dev.", rep.sd_c, rep.sd_v);
  }
  if (rep.spearman_c) {
    text << Fmt("Spearman rho, C_ELO (I) vs (II): %.3f (p = %s)\n",
                rep.spearman_c->statistic, FormatP(rep.spearman_c->p_value, 1e-4).c_str());
  }
  if (rep.spearman_v) {
    text << Fmt("Spearman rho, V_ELO (I) vs (II): %.3f (p = %s)\n",
                rep.spearman_v->statistic, FormatP(rep.spearman_v->p_value, 1e-4).c_str());
  }
  Json j{{"report", "elo"},
         {"rows", rows},
         {"sd_c", rep.sd_c},
         {"sd_v", rep.sd_v},
         {"spearman_c", TestJson(rep.spearman_c)},
         {"spearman_v", TestJson(rep.spearman_v)}};
  return {"elo", text.str(), j.dump(2) + "\n"};
}

RenderedReport RenderDefense(const EloTable& table) {
  const DefenseAdvantage adv = BuildDefenseAdvantage(table);
  if (!adv.aidg1 && !adv.aidg2) {
    throw StatsError("defense report needs ratings for at least two models");
  }
  std::ostringstream text;
  text << Fmt("%-12s %12s %10s %10s\n", "Experiment", "Def. Adv.", "Cohen's d", "p-value");
  Json rows = Json::array();
  for (const auto* row : {&adv.aidg1, &adv.aidg2, &adv.combined}) {
    if (!*row) continue;
    const DefenseRow& r = **row;
    text << Fmt("%-12s %8.1f ELO %10.2f %10s\n", r.label.c_str(), r.mean_gap,
                r.cohens_d, FormatP(r.p_value, 1e-4).c_str());
    rows.push_back(Json{{"experiment", r.label},
                        {"models", r.models},
                        {"mean_gap", r.mean_gap},
                        {"cohens_d", r.cohens_d},
                        {"p_value", r.p_value}});
  }
  Json j{{"report", "defense"}, {"rows", rows}};
  return {"defense", text.str(), j.dump(2) + "\n"};
}

RenderedReport RenderModes(const OutcomeReport& rep) {
  if (!rep.modes) throw StatsError("mode report needs AIDG-I games in both modes");
  const ModeComparison& m = *rep.modes;
  std::ostringstream text;
  text << Fmt("%-24s %6s %9s\n", "Attack Mode", "Games", "Win Rate");
  text << Fmt("%-24s %6lld %9s\n", "A (Confirmation)", static_cast<long long>(m.games_a),
              Pct(Ratio(m.wins_a, m.games_a)).c_str());
  text << Fmt("%-24s %6lld %9s\n", "B (Blind Extraction)",
              static_cast<long long>(m.games_b), Pct(Ratio(m.wins_b, m.games_b)).c_str());
  text << Fmt("Odds Ratio (95%% CI): %.2f (%.2f-%.2f)%s\n", m.odds_ratio.odds_ratio,
              m.odds_ratio.lower, m.odds_ratio.upper,
              m.odds_ratio.haldane_corrected ? " [0.5 added to each cell]" : "");
  text << "Fisher's exact p-value: " << FormatP(m.fisher_p, 1e-5) << "\n\n";
  text << Fmt("%-24s %8s %8s %8s\n", "Model", "Mode A", "Mode B", "Diff.");
  Json per_model = Json::array();
  for (const auto& row : m.per_model) {
    const double a = Ratio(row.wins_a, row.games_a);
    const double b = Ratio(row.wins_b, row.games_b);
    text << Fmt("%-24s %8s %8s %+7.0fpp\n", row.model.c_str(), Pct(a).c_str(),
                Pct(b).c_str(), 100.0 * (a - b));
    per_model.push_back(Json{{"model", row.model},
                             {"games_a", row.games_a},
                             {"wins_a", row.wins_a},
                             {"games_b", row.games_b},
                             {"wins_b", row.wins_b}});
  }
  Json j{{"report", "modes"},
         {"games_a", m.games_a},
         {"wins_a", m.wins_a},
         {"games_b", m.games_b},
         {"wins_b", m.wins_b},
         {"odds_ratio", m.odds_ratio.odds_ratio},
         {"ci_lower", m.odds_ratio.lower},
         {"ci_upper", m.odds_ratio.upper},
         {"haldane_corrected", m.odds_ratio.haldane_corrected},
         {"fisher_p", m.fisher_p},
         {"per_model", per_model}};
  return {"modes", text.str(), j.dump(2) + "\n"};
}

Json SharesJson(const std::vector<OutcomeShare>& shares) {
  Json out = Json::array();
  for (const auto& s : shares) {
    out.push_back(Json{{"reason", ToString(s.reason)}, {"count", s.count}, {"share", s.share}});
  }
  return out;
}

RenderedReport RenderOutcomes(const OutcomeReport& rep) {
  std::ostringstream text;
  const auto count = [](const std::vector<OutcomeShare>& v, WinReason r) {
    for (const auto& s : v) {
      if (s.reason == r) return s.count;
    }
    return std::int64_t{0};
  };
  if (rep.aidg2_games > 0) {
    const auto& v = rep.aidg2_outcomes;
    const std::int64_t n = rep.aidg2_games;
    text << "AIDG-II outcomes (" << n << " games)\n";
    text << Fmt("%-32s %10s\n", "Outcome", "Percentage");
    const std::int64_t seeker =
        count(v, WinReason::kCorrectLock) + count(v, WinReason::kCorrectFinalGuess);
    text << Fmt("%-32s %10s\n", "Seeker Win (Correct Guess)", Pct(Ratio(seeker, n)).c_str());
    text << Fmt("%-32s %10s\n", "Holder Win (Disqualification)",
                Pct(Ratio(count(v, WinReason::kDisqualification), n)).c_str());
    text << Fmt("%-32s %10s\n", "Holder Win (Wrong Lock)",
                Pct(Ratio(count(v, WinReason::kWrongLock), n)).c_str());
    text << Fmt("%-32s %10s\n", "Holder Win (Wrong Final Guess)",
                Pct(Ratio(count(v, WinReason::kWrongFinalGuess), n)).c_str());
  }
  if (rep.aidg1_games > 0) {
    if (rep.aidg2_games > 0) text << "\n";
    text << "AIDG-I outcomes (" << rep.aidg1_games << " games)\n";
    text << Fmt("%-32s %10s\n", "Outcome", "Percentage");
    for (const auto& s : rep.aidg1_outcomes) {
      text << Fmt("%-32s %10s\n", std::string(ToString(s.reason)).c_str(),
                  Pct(s.share).c_str());
    }
  }
  if (rep.cross) {
    const CrossFormat& c = *rep.cross;
    text << Fmt("\nHolder win rate: AIDG-I %s (%lld/%lld) vs AIDG-II %s (%lld/%lld); "
                "chi-square = %.3f, p = %.2f\n",
                Pct(Ratio(c.holder_wins_1, c.games_1)).c_str(),
                static_cast<long long>(c.holder_wins_1), static_cast<long long>(c.games_1),
                Pct(Ratio(c.holder_wins_2, c.games_2)).c_str(),
                static_cast<long long>(c.holder_wins_2), static_cast<long long>(c.games_2),
                c.chi_square.statistic, c.chi_square.p_value);
  }
  if (rep.aborted > 0) text << rep.aborted << " aborted games excluded\n";
  Json j{{"report", "outcomes"},
         {"aidg1_games", rep.aidg1_games},
         {"aidg2_games", rep.aidg2_games},
         {"aborted", rep.aborted},
         {"aidg1", SharesJson(rep.aidg1_outcomes)},
         {"aidg2", SharesJson(rep.aidg2_outcomes)}};
  if (rep.cross) {
    j["cross_format"] = Json{{"holder_wins_aidg1", rep.cross->holder_wins_1},
                             {"games_aidg1", rep.cross->games_1},
                             {"holder_wins_aidg2", rep.cross->holder_wins_2},
                             {"games_aidg2", rep.cross->games_2},
                             {"chi_square", rep.cross->chi_square.statistic},
                             {"p_value", rep.cross->chi_square.p_value},
                             {"continuity_correction", "yates"}};
  } else {
    j["cross_format"] = nullptr;
  }
  return {"outcomes", text.str(), j.dump(2) + "\n"};
}

RenderedReport RenderTiming(const OutcomeReport& rep) {
  if (rep.aidg2_games == 0) throw StatsError("timing report needs AIDG-II games");
  std::ostringstream text;
  text << Fmt("%-16s %6s %6s %7s %8s\n", "Timing", "Games", "Wins", "Rate", "Mult.");
  Json rows = Json::array();
  for (const auto& b : rep.timing) {
    const std::string label = b.first_turn == b.last_turn
                                  ? Fmt("%s (%d)", b.label.c_str(), b.first_turn)
                                  : Fmt("%s (%d-%d)", b.label.c_str(), b.first_turn,
                                        b.last_turn);
    text << Fmt("%-16s %6lld %6lld %7s %7.3fx\n", label.c_str(),
                static_cast<long long>(b.games), static_cast<long long>(b.wins),
                Pct(b.rate).c_str(), b.mean_multiplier);
    rows.push_back(Json{{"bucket", b.label},
                        {"first_turn", b.first_turn},
                        {"last_turn", b.last_turn},
                        {"games", b.games},
                        {"wins", b.wins},
                        {"rate", b.rate},
                        {"mean_multiplier", b.mean_multiplier}});
  }
  Json j{{"report", "timing"}, {"buckets", rows}};
  return {"timing", text.str(), j.dump(2) + "\n"};
}

RenderedReport RenderDisqualification(const OutcomeReport& rep) {
  if (rep.disqualification.empty()) {
    throw StatsError("disqualification report needs AIDG-II games");
  }
  std::ostringstream text;
  text << Fmt("%-24s %10s %9s %9s\n", "Model", "Disq. Rate", "Win Rate", "Avg Turn");
  Json rows = Json::array();
  std::vector<double> disq, wins;
  for (const auto& r : rep.disqualification) {
    text << Fmt("%-24s %10s %9s %9s\n", r.model.c_str(), Pct(r.disq_rate).c_str(),
                Pct(r.win_rate).c_str(),
                r.mean_violation_turn ? Fmt("%.1f", *r.mean_violation_turn).c_str() : "-");
    rows.push_back(Json{{"model", r.model},
                        {"games", r.games},
                        {"disqualifications", r.disqualifications},
                        {"wins", r.wins},
                        {"disq_rate", r.disq_rate},
                        {"win_rate", r.win_rate},
                        {"mean_violation_turn", r.mean_violation_turn
                                                    ? Json(*r.mean_violation_turn)
                                                    : Json(nullptr)}});
    disq.push_back(r.disq_rate);
    wins.push_back(r.win_rate);
  }
  Json j{{"report", "disq"}, {"rows", rows}, {"pearson_r", nullptr}};
  try {
    const double r = stats::PearsonR(disq, wins);
    text << Fmt("Pearson r (disqualification rate vs win rate): %.2f\n", r);
    j["pearson_r"] = r;
  } catch (const StatsError&) {
    // Fewer than two models or no variation: no correlation to report.
  }
  return {"disq", text.str(), j.dump(2) + "\n"};
}

RenderedReport RenderResponses(const OutcomeReport& rep) {
  const ResponseDistribution& d = rep.responses;
  if (d.holder_won.total() + d.holder_lost.total() == 0) {
    throw StatsError("response report needs AIDG-II holder answers");
  }
  std::ostringstream text;
  text << Fmt("%-10s %12s %12s\n", "Response", "Holder Won", "Holder Lost");
  for (HolderResponse r : {HolderResponse::kYes, HolderResponse::kNo, HolderResponse::kMaybe}) {
    std::string name(ToString(r));
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    text << Fmt("%-10s %12s %12s\n", name.c_str(), Pct(d.holder_won.Share(r)).c_str(),
                Pct(d.holder_lost.Share(r)).c_str());
  }
  if (d.maybe_z) {
    text << Fmt("\"maybe\" share, holder won vs lost: z = %.2f, p = %s\n",
                d.maybe_z->statistic, FormatP(d.maybe_z->p_value, 1e-4).c_str());
  }
  const auto counts = [](const ResponseCounts& c) {
    return Json{{"yes", c.yes}, {"no", c.no}, {"maybe", c.maybe}};
  };
  Json j{{"report", "responses"},
         {"holder_won", counts(d.holder_won)},
         {"holder_lost", counts(d.holder_lost)},
         {"maybe_z", TestJson(d.maybe_z)}};
  return {"responses", text.str(), j.dump(2) + "\n"};
}

}  // namespace

double ResponseCounts::Share(HolderResponse r) const {
  const std::int64_t n = total();
  switch (r) {
    case HolderResponse::kYes: return Ratio(yes, n);
    case HolderResponse::kNo: return Ratio(no, n);
    case HolderResponse::kMaybe: return Ratio(maybe, n);
  }
  return 0.0;
}

std::vector<TimingBucket> TimingBuckets(std::span<const GameRecord> records) {
  std::vector<TimingBucket> buckets = {{"Early", 1, 8},
                                       {"Mid", 9, 12},
                                       {"Late", 13, 15},
                                       {"Final", 16, 16}};
  std::vector<double> multiplier_sums(buckets.size(), 0.0);
  for (const auto* g : Completed(records, Experiment::kAidg2)) {
    if (!IsLockOrGuess(g->outcome->reason)) continue;
    const int t = g->outcome->terminal_turn;
    for (std::size_t b = 0; b < buckets.size(); ++b) {
      if (t < buckets[b].first_turn || t > buckets[b].last_turn) continue;
      ++buckets[b].games;
      if (g->outcome->winner == Role::kSeeker) ++buckets[b].wins;
      multiplier_sums[b] += TurnDecay(Experiment::kAidg2, t);
    }
  }
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    buckets[b].rate = Ratio(buckets[b].wins, buckets[b].games);
    if (buckets[b].games > 0) {
      buckets[b].mean_multiplier = multiplier_sums[b] / static_cast<double>(buckets[b].games);
    }
  }
  return buckets;
}

OutcomeReport BuildOutcomeReport(std::span<const GameRecord> records) {
  OutcomeReport rep;
  for (const auto& r : records) {
    if (r.aborted) ++rep.aborted;
  }
  const auto first = Completed(records, Experiment::kAidg1);
  const auto second = Completed(records, Experiment::kAidg2);
  if (first.empty() && second.empty()) {
    throw StatsError("no completed games to analyze");
  }
  rep.aidg1_games = static_cast<std::int64_t>(first.size());
  rep.aidg2_games = static_cast<std::int64_t>(second.size());
  if (!first.empty()) {
    rep.aidg1_outcomes =
        Shares(first, {WinReason::kLeakExplicit, WinReason::kLeakConfirmational,
                       WinReason::kLeakParaphrase, WinReason::kLeakImplicit,
                       WinReason::kHorizonExhausted});
    rep.modes = CompareModes(first);
  }
  if (!second.empty()) {
    rep.aidg2_outcomes =
        Shares(second, {WinReason::kCorrectLock, WinReason::kCorrectFinalGuess,
                        WinReason::kDisqualification, WinReason::kWrongLock,
                        WinReason::kWrongFinalGuess});
    rep.timing = TimingBuckets(records);
    rep.responses = Responses(second);
    rep.disqualification = Disqualifications(second);
  }
  if (!first.empty() && !second.empty()) {
    CrossFormat c;
    for (const auto* g : first) c.holder_wins_1 += g->outcome->winner == Role::kHolder;
    for (const auto* g : second) c.holder_wins_2 += g->outcome->winner == Role::kHolder;
    c.games_1 = rep.aidg1_games;
    c.games_2 = rep.aidg2_games;
    try {
      c.chi_square = stats::ChiSquare2x2(
          {c.holder_wins_1, c.games_1 - c.holder_wins_1, c.holder_wins_2,
           c.games_2 - c.holder_wins_2},
          stats::ContinuityCorrection::kYates);
      rep.cross = c;
    } catch (const StatsError&) {
      // One outcome never occurred; the comparison is undefined.
    }
  }
  return rep;
}

DefenseAdvantage BuildDefenseAdvantage(const EloTable& table) {
  DefenseAdvantage adv;
  adv.aidg1 = DefenseFor(table, Experiment::kAidg1);
  adv.aidg2 = DefenseFor(table, Experiment::kAidg2);
  if (adv.aidg1 && adv.aidg2) {
    DefenseRow c;
    c.label = "Combined";
    std::set<std::string> models;
    std::vector<double> gaps;
    for (const auto& row : table.rows) {
      for (const auto* r : {&row.aidg1, &row.aidg2}) {
        if (!*r) continue;
        models.insert(row.model);
        gaps.push_back((*r)->v_elo - (*r)->c_elo);
      }
    }
    c.models = models.size();
    c.mean_gap = stats::CombinedEffect(adv.aidg1->mean_gap, adv.aidg2->mean_gap);
    c.cohens_d = stats::CombinedEffect(adv.aidg1->cohens_d, adv.aidg2->cohens_d);
    c.p_value = stats::OneSampleT(gaps).p_value;
    adv.combined = c;
  }
  return adv;
}

EloReport BuildEloReport(const EloTable& table) {
  EloReport rep;
  for (const auto& row : table.rows) {
    const auto c = row.AverageC();
    const auto v = row.AverageV();
    if (!c || !v) continue;
    rep.rows.push_back({row, *c, *v, *v - *c, 0});
  }
  if (rep.rows.empty()) throw StatsError("rating table is empty");
  std::stable_sort(rep.rows.begin(), rep.rows.end(),
                   [](const EloReportRow& a, const EloReportRow& b) {
                     return a.avg_c > b.avg_c;
                   });
  for (std::size_t i = 0; i < rep.rows.size(); ++i) rep.rows[i].rank = static_cast<int>(i) + 1;
  if (rep.rows.size() >= 2) {
    std::vector<double> cs, vs;
    for (const auto& r : rep.rows) {
      cs.push_back(r.avg_c);
      vs.push_back(r.avg_v);
    }
    rep.sd_c = stats::SampleStdDev(cs);
    rep.sd_v = stats::SampleStdDev(vs);
  }
  std::vector<double> c1, c2, v1, v2;
  for (const auto& r : rep.rows) {
    if (!r.ratings.aidg1 || !r.ratings.aidg2) continue;
    c1.push_back(r.ratings.aidg1->c_elo);
    c2.push_back(r.ratings.aidg2->c_elo);
    v1.push_back(r.ratings.aidg1->v_elo);
    v2.push_back(r.ratings.aidg2->v_elo);
  }
  if (c1.size() >= 2) {
    try {
      rep.spearman_c = stats::SpearmanRho(c1, c2);
    } catch (const StatsError&) {
    }
    try {
      rep.spearman_v = stats::SpearmanRho(v1, v2);
    } catch (const StatsError&) {
    }
  }
  return rep;
}

std::optional<ReportKind> ParseReportKind(std::string_view name) {
  for (ReportKind k : AllReportKinds()) {
    if (ToString(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view ToString(ReportKind kind) {
  switch (kind) {
    case ReportKind::kElo: return "elo";
    case ReportKind::kDefense: return "defense";
    case ReportKind::kModes: return "modes";
    case ReportKind::kOutcomes: return "outcomes";
    case ReportKind::kTiming: return "timing";
    case ReportKind::kDisqualification: return "disq";
    case ReportKind::kResponses: return "responses";
  }
  return "elo";
}

const std::vector<ReportKind>& AllReportKinds() {
  static const std::vector<ReportKind> kinds = {
      ReportKind::kElo,    ReportKind::kDefense,           ReportKind::kModes,
      ReportKind::kOutcomes, ReportKind::kTiming, ReportKind::kDisqualification,
      ReportKind::kResponses};
  return kinds;
}

RenderedReport RenderReport(ReportKind kind, std::span<const GameRecord> records,
                            const EloTable& table) {
  switch (kind) {
    case ReportKind::kElo: return RenderElo(table);
    case ReportKind::kDefense: return RenderDefense(table);
    default: break;
  }
  const OutcomeReport rep = BuildOutcomeReport(records);
  switch (kind) {
    case ReportKind::kModes: return RenderModes(rep);
    case ReportKind::kOutcomes: return RenderOutcomes(rep);
    case ReportKind::kTiming: return RenderTiming(rep);
    case ReportKind::kDisqualification: return RenderDisqualification(rep);
    case ReportKind::kResponses: return RenderResponses(rep);
    default: break;
  }
  throw StatsError("unknown report");
}

}  // namespace aidg
