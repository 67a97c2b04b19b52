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

#include "aidg/rating.hpp"

#include <cmath>

#include "aidg/error.hpp"

namespace aidg {

void RatingConfig::Validate() const {
  if (!(k_factor > 0.0)) throw RatingError("k_factor must be positive");
  if (!(scale > 0.0)) throw RatingError("scale must be positive");
  if (!(logistic_base > 1.0)) throw RatingError("logistic_base must exceed 1");
  if (!std::isfinite(initial_rating)) throw RatingError("initial_rating must be finite");
}

void RatingBook::AddModel(const std::string& alias) {
  ratings_.try_emplace(alias, RoleRatings{initial_rating_, initial_rating_});
}

bool RatingBook::Has(std::string_view alias) const {
  return ratings_.find(alias) != ratings_.end();
}

const RoleRatings& RatingBook::Get(std::string_view alias) const {
  auto it = ratings_.find(alias);
  if (it == ratings_.end()) {
    throw RatingError("unknown model '" + std::string(alias) + "'");
  }
  return it->second;
}

std::vector<std::string> RatingBook::Aliases() const {
  std::vector<std::string> out;
  out.reserve(ratings_.size());
  for (const auto& [alias, r] : ratings_) out.push_back(alias);
  return out;
}

void RatingBook::Commit(const RatingUpdate& update) {
  auto seeker = ratings_.find(update.seeker);
  auto holder = ratings_.find(update.holder);
  if (seeker == ratings_.end() || holder == ratings_.end()) {
    throw RatingError("update " + update.game_id + " names an unknown model");
  }
  seeker->second.c_elo += update.delta_c;
  holder->second.v_elo += update.delta_v;
  history_.push_back(update);
}

RatingBook RatingBook::FromHistory(const std::vector<RatingUpdate>& history,
                                   const std::vector<std::string>& aliases,
                                   double initial_rating) {
  RatingBook book(initial_rating);
  for (const auto& alias : aliases) book.AddModel(alias);
  for (const auto& u : history) {
    book.AddModel(u.seeker);
    book.AddModel(u.holder);
    book.Commit(u);
  }
  return book;
}

double ExpectedSeekerScore(double c_elo, double v_elo, const RatingConfig& config) {
  return 1.0 / (1.0 + std::pow(config.logistic_base, (v_elo - c_elo) / config.scale));
}

double TurnDecay(Experiment experiment, int terminal_turn) {
  const int max_turns = DefaultMaxTurns(experiment);
  if (terminal_turn < 1 || terminal_turn > max_turns) {
    throw RatingError("terminal turn " + std::to_string(terminal_turn) +
                      " outside [1, " + std::to_string(max_turns) + "]");
  }
  if (experiment == Experiment::kAidg1) return 1.0;
  return (17.0 - terminal_turn) / 8.0;
}

RatingUpdate ApplyUpdate(RatingBook& book, const GameRecord& record,
                         const RatingConfig& config) {
  const auto [s_c, s_v] = ScoreOf(record);
  const GameConfig& game = record.config;
  const double c = book.Get(game.seeker_model).c_elo;
  const double v = book.Get(game.holder_model).v_elo;

  RatingUpdate u;
  u.game_id = game.game_id;
  u.sequence = game.sequence;
  u.experiment = game.experiment;
  u.seeker = game.seeker_model;
  u.holder = game.holder_model;
  u.terminal_turn = record.outcome->terminal_turn;
  u.seeker_score = s_c;
  u.seeker_before = c;
  u.holder_before = v;
  u.expected = ExpectedSeekerScore(c, v, config);
  u.multiplier = TurnDecay(game.experiment, u.terminal_turn);
  u.delta_c = config.k_factor * u.multiplier * (s_c - u.expected);
  u.delta_v = config.k_factor * u.multiplier * (s_v - (1.0 - u.expected));
  book.Commit(u);
  return u;
}

double CapabilityGap(const RatingBook& book, std::string_view alias) {
  const RoleRatings& r = book.Get(alias);
  return r.v_elo - r.c_elo;
}

namespace {

std::optional<double> AverageOf(const std::optional<RoleRatings>& a,
                                const std::optional<RoleRatings>& b,
                                double RoleRatings::*field) {
  if (a && b) return ((*a).*field + (*b).*field) / 2.0;
  if (a) return (*a).*field;
  if (b) return (*b).*field;
  return std::nullopt;
}

}  // namespace

std::optional<double> EloRow::AverageC() const {
  return AverageOf(aidg1, aidg2, &RoleRatings::c_elo);
}

std::optional<double> EloRow::AverageV() const {
  return AverageOf(aidg1, aidg2, &RoleRatings::v_elo);
}

EloRow& EloTable::Row(const std::string& model) {
  for (auto& row : rows) {
    if (row.model == model) return row;
  }
  rows.push_back(EloRow{model, std::nullopt, std::nullopt});
  return rows.back();
}

const EloRow* EloTable::Find(std::string_view model) const {
  for (const auto& row : rows) {
    if (row.model == model) return &row;
  }
  return nullptr;
}

void EloTable::Set(Experiment experiment, const RatingBook& book) {
  for (const auto& [alias, r] : book.ratings()) {
    auto& row = Row(alias);
    (experiment == Experiment::kAidg1 ? row.aidg1 : row.aidg2) = r;
  }
}

void EloTable::Merge(const EloTable& other) {
  for (const auto& src : other.rows) {
    auto& dst = Row(src.model);
    if (src.aidg1) dst.aidg1 = src.aidg1;
    if (src.aidg2) dst.aidg2 = src.aidg2;
  }
}

}  // namespace aidg
