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

#ifndef AIDG_RATING_HPP_
#define AIDG_RATING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aidg/game.hpp"

namespace aidg {

struct RatingConfig {
  double k_factor = 24.0;
  double initial_rating = 1500.0;
  double logistic_base = 10.0;
  double scale = 400.0;

  // Throws RatingError unless k_factor > 0, scale > 0 and base > 1.
  void Validate() const;
};

// Seeker (C_ELO) and holder (V_ELO) ratings of one model.
struct RoleRatings {
  double c_elo = 0.0;
  double v_elo = 0.0;

  bool operator==(const RoleRatings&) const = default;
};

struct RatingUpdate {
  std::string game_id;
  std::int64_t sequence = 0;
  Experiment experiment = Experiment::kAidg1;
  std::string seeker;
  std::string holder;
  int terminal_turn = 0;
  int seeker_score = 0;
  double seeker_before = 0.0;  // seeker's C_ELO before the game
  double holder_before = 0.0;  // holder's V_ELO before the game
  double expected = 0.0;       // E_C
  double multiplier = 1.0;     // M(t)
  double delta_c = 0.0;
  double delta_v = 0.0;
  std::map<std::string, std::string> extras;

  bool operator==(const RatingUpdate&) const = default;
};

// Role-separated ratings for every registered model plus the ordered update
// history that produced them. Single writer.
class RatingBook {
 public:
  explicit RatingBook(double initial_rating = 1500.0)
      : initial_rating_(initial_rating) {}

  void AddModel(const std::string& alias);
  bool Has(std::string_view alias) const;
  // Throws RatingError for unknown aliases.
  const RoleRatings& Get(std::string_view alias) const;
  std::vector<std::string> Aliases() const;  // sorted
  const std::map<std::string, RoleRatings, std::less<>>& ratings() const {
    return ratings_;
  }
  const std::vector<RatingUpdate>& history() const { return history_; }
  double initial_rating() const { return initial_rating_; }

  // Adds the update's deltas and appends it to the history.
  void Commit(const RatingUpdate& update);

  // Rebuilds a book by committing `history` in order from initial ratings.
  static RatingBook FromHistory(const std::vector<RatingUpdate>& history,
                                const std::vector<std::string>& aliases,
                                double initial_rating);

 private:
  double initial_rating_;
  std::map<std::string, RoleRatings, std::less<>> ratings_;
  std::vector<RatingUpdate> history_;
};

// 1 / (1 + base^((v - c) / scale)).
double ExpectedSeekerScore(double c_elo, double v_elo,
                           const RatingConfig& config = {});

// 1 in AIDG-I; (17 - t) / 8 for AIDG-II terminal turn t in [1, 16].
// Throws RatingError when t is out of range.
double TurnDecay(Experiment experiment, int terminal_turn);

// Computes and commits the update for a completed record.
// Throws RatingError for aborted records or unknown aliases.
RatingUpdate ApplyUpdate(RatingBook& book, const GameRecord& record,
                         const RatingConfig& config);

// V_ELO - C_ELO.
double CapabilityGap(const RatingBook& book, std::string_view alias);

// One row per model of the cross-experiment rating table.
struct EloRow {
  std::string model;
  std::optional<RoleRatings> aidg1;
  std::optional<RoleRatings> aidg2;

  std::optional<double> AverageC() const;
  std::optional<double> AverageV() const;
};

struct EloTable {
  std::vector<EloRow> rows;

  EloRow& Row(const std::string& model);
  const EloRow* Find(std::string_view model) const;
  void Set(Experiment experiment, const RatingBook& book);
  void Merge(const EloTable& other);
};

}  // namespace aidg

#endif  // AIDG_RATING_HPP_
