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

#ifndef AIDG_ANALYSIS_HPP_
#define AIDG_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/game.hpp"
#include "aidg/rating.hpp"
#include "aidg/stats.hpp"

// Report tables recomputed from game records and rating tables.
namespace aidg {

struct OutcomeShare {
  WinReason reason;
  std::int64_t count = 0;
  double share = 0.0;
};

// Lock or final-guess games whose terminal turn falls in [first, last].
struct TimingBucket {
  std::string label;
  int first_turn = 0;
  int last_turn = 0;
  std::int64_t games = 0;
  std::int64_t wins = 0;
  double rate = 0.0;
  double mean_multiplier = 0.0;
};

struct ResponseCounts {
  std::int64_t yes = 0, no = 0, maybe = 0;
  std::int64_t total() const { return yes + no + maybe; }
  double Share(HolderResponse r) const;
};

// Holder reply tokens over all turns, split by who won the game.
struct ResponseDistribution {
  ResponseCounts holder_won;
  ResponseCounts holder_lost;
  // "maybe" share, holder-won vs holder-lost games.
  std::optional<stats::TestResult> maybe_z;
};

struct DisqualificationRow {
  std::string model;  // as seeker
  std::int64_t games = 0;
  std::int64_t disqualifications = 0;
  std::int64_t wins = 0;
  double disq_rate = 0.0;
  double win_rate = 0.0;
  std::optional<double> mean_violation_turn;
};

struct ModeRow {
  std::string model;  // as seeker
  std::int64_t games_a = 0, wins_a = 0, games_b = 0, wins_b = 0;
};

struct ModeComparison {
  std::int64_t games_a = 0, wins_a = 0, games_b = 0, wins_b = 0;
  stats::OddsRatio odds_ratio;
  double fisher_p = 1.0;
  std::vector<ModeRow> per_model;
};

// Holder win rates of the two protocols compared by a chi-square test.
struct CrossFormat {
  std::int64_t holder_wins_1 = 0, games_1 = 0;
  std::int64_t holder_wins_2 = 0, games_2 = 0;
  stats::TestResult chi_square;
};

struct OutcomeReport {
  std::int64_t aidg1_games = 0;
  std::int64_t aidg2_games = 0;
  std::int64_t aborted = 0;
  std::vector<OutcomeShare> aidg1_outcomes;
  std::vector<OutcomeShare> aidg2_outcomes;
  std::vector<TimingBucket> timing;
  ResponseDistribution responses;
  std::vector<DisqualificationRow> disqualification;
  std::optional<ModeComparison> modes;
  std::optional<CrossFormat> cross;
};

// Throws StatsError when no completed record is present.
OutcomeReport BuildOutcomeReport(std::span<const GameRecord> records);

std::vector<TimingBucket> TimingBuckets(std::span<const GameRecord> records);

struct DefenseRow {
  std::string label;
  std::size_t models = 0;
  double mean_gap = 0.0;
  double cohens_d = 0.0;
  double p_value = 1.0;  // one-sample t on the gaps
};

struct DefenseAdvantage {
  std::optional<DefenseRow> aidg1;
  std::optional<DefenseRow> aidg2;
  std::optional<DefenseRow> combined;  // means of the two rows above
};

DefenseAdvantage BuildDefenseAdvantage(const EloTable& table);

struct EloReportRow {
  EloRow ratings;
  double avg_c = 0.0;
  double avg_v = 0.0;
  double gap = 0.0;
  int rank = 0;  // by average C_ELO, descending
};

struct EloReport {
  std::vector<EloReportRow> rows;
  double sd_c = 0.0;  // sample sd of average C_ELO
  double sd_v = 0.0;
  // Rank agreement of each role's ratings across the two protocols.
  std::optional<stats::TestResult> spearman_c;
  std::optional<stats::TestResult> spearman_v;
};

EloReport BuildEloReport(const EloTable& table);

enum class ReportKind {
  kElo,
  kDefense,
  kModes,
  kOutcomes,
  kTiming,
  kDisqualification,
  kResponses,
};

// "elo", "defense", "modes", "outcomes", "timing", "disq", "responses".
std::optional<ReportKind> ParseReportKind(std::string_view name);
std::string_view ToString(ReportKind kind);
const std::vector<ReportKind>& AllReportKinds();

struct RenderedReport {
  std::string name;
  std::string text;  // human-readable table
  std::string json;  // machine-readable, one document
};

// Throws StatsError when the inputs cannot support the requested report.
RenderedReport RenderReport(ReportKind kind, std::span<const GameRecord> records,
                            const EloTable& table);

}  // namespace aidg

#endif  // AIDG_ANALYSIS_HPP_
