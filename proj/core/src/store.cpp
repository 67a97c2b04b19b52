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

#include "aidg/store.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "aidg/error.hpp"
#include "aidg/text.hpp"

namespace aidg {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void AppendExtras(Json& j, const std::map<std::string, std::string>& extras) {
  for (const auto& [key, raw] : extras) {
    if (!j.contains(key)) j[key] = Json::parse(raw);
  }
}

Json EncodeVerdict(const TurnVerdict& verdict) {
  if (const auto* leak = std::get_if<LeakVerdict>(&verdict)) {
    return Json{{"type", "leak"},
                {"leaked", leak->leaked},
                {"category", leak->category
                                 ? Json(std::string(ToString(*leak->category)))
                                 : Json(nullptr)},
                {"rationale", leak->rationale}};
  }
  if (const auto* c = std::get_if<ConstraintVerdict>(&verdict)) {
    return Json{{"type", "constraint"},
                {"violation", c->violation},
                {"kind", c->kind ? Json(std::string(ToString(*c->kind))) : Json(nullptr)},
                {"offending_span", c->offending_span}};
  }
  return nullptr;
}

Json EncodeGame(const GameRecord& r) {
  const GameConfig& c = r.config;
  Json j;
  j["kind"] = "game";
  j["schema_version"] = kSchemaVersion;
  j["game_id"] = c.game_id;
  j["sequence"] = c.sequence;
  j["tournament"] = c.tournament;
  j["experiment"] = ToString(c.experiment);
  j["mode"] = ToString(c.mode);
  j["seeker"] = c.seeker_model;
  j["holder"] = c.holder_model;
  if (const auto* fact = std::get_if<SecretFact>(&c.secret)) {
    j["secret"] = Json{{"id", fact->id}, {"text", fact->text}};
  } else {
    const auto& word = std::get<OntologyWord>(c.secret);
    j["secret"] = Json{{"word", word.word}, {"category", word.category}};
  }
  j["max_turns"] = c.max_turns;
  j["seed"] = c.seed;
  Json turns = Json::array();
  for (const auto& t : r.transcript.turns()) {
    turns.push_back(Json{{"t", t.index},
                         {"seeker", t.seeker_utterance},
                         {"holder", t.holder_utterance},
                         {"response", ToString(t.response)},
                         {"verdict", EncodeVerdict(t.verdict)},
                         {"notes", t.notes},
                         {"rejected", t.rejected},
                         {"seeker_truncated", t.seeker_truncated},
                         {"holder_truncated", t.holder_truncated}});
  }
  j["turns"] = std::move(turns);
  if (r.outcome) {
    j["outcome"] = Json{{"winner", ToString(r.outcome->winner)},
                        {"reason", ToString(r.outcome->reason)},
                        {"terminal_turn", r.outcome->terminal_turn}};
  } else {
    j["outcome"] = nullptr;
  }
  j["lock"] = r.lock ? Json{{"turn", r.lock->turn}, {"guess", r.lock->guess}}
                     : Json(nullptr);
  j["aborted"] = r.aborted;
  j["abort_reason"] = r.abort_reason;
  AppendExtras(j, r.extras);
  return j;
}

Json EncodeUpdate(const RatingUpdate& u) {
  Json j;
  j["kind"] = "rating-update";
  j["schema_version"] = kSchemaVersion;
  j["game_id"] = u.game_id;
  j["sequence"] = u.sequence;
  j["experiment"] = ToString(u.experiment);
  j["seeker"] = u.seeker;
  j["holder"] = u.holder;
  j["terminal_turn"] = u.terminal_turn;
  j["seeker_score"] = u.seeker_score;
  j["seeker_before"] = u.seeker_before;
  j["holder_before"] = u.holder_before;
  j["expected"] = u.expected;
  j["multiplier"] = u.multiplier;
  j["delta_c"] = u.delta_c;
  j["delta_v"] = u.delta_v;
  AppendExtras(j, u.extras);
  return j;
}

Json EncodeTally(const RoleTally& t) {
  return Json{{"games", t.games}, {"wins", t.wins}};
}

Json EncodeSummary(const TournamentSummary& s) {
  Json j;
  j["kind"] = "summary";
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = ToString(s.experiment);
  j["tournament"] = s.tournament;
  j["scheduled"] = s.scheduled;
  j["completed"] = s.completed;
  j["aborted"] = s.aborted;
  j["seeker_wins"] = s.seeker_wins;
  j["holder_wins"] = s.holder_wins;
  j["mean_multiplier"] = s.mean_multiplier;
  Json models = Json::object();
  for (const auto& [alias, m] : s.models) {
    models[alias] = Json{{"as_seeker", EncodeTally(m.as_seeker)},
                         {"as_holder", EncodeTally(m.as_holder)},
                         {"seeker_mode_a", EncodeTally(m.seeker_mode_a)},
                         {"seeker_mode_b", EncodeTally(m.seeker_mode_b)}};
  }
  j["models"] = std::move(models);
  Json ratings = Json::object();
  for (const auto& [alias, r] : s.ratings) {
    ratings[alias] = Json{{"c_elo", r.c_elo}, {"v_elo", r.v_elo}};
  }
  j["ratings"] = std::move(ratings);
  AppendExtras(j, s.extras);
  return j;
}

// Reads fields off one decoded line and remembers which keys were used.
class Fields {
 public:
  explicit Fields(const Json& j) : j_(j) {}

  const Json& At(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw StoreError("missing key '" + key + "'");
    return j_.at(key);
  }
  template <typename T>
  T Get(const std::string& key) {
    return At(key).get<T>();
  }

  std::map<std::string, std::string> Extras(std::string_view kind) const {
    std::map<std::string, std::string> extras;
    for (const auto& [key, value] : j_.items()) {
      if (used_.count(key) != 0) continue;
      spdlog::warn("{} record has unknown key '{}'; preserved", kind, key);
      extras[key] = value.dump();
    }
    return extras;
  }

 private:
  const Json& j_;
  std::set<std::string> used_;
};

TurnVerdict DecodeVerdict(const Json& j) {
  if (j.is_null()) return std::monostate{};
  const std::string type = j.at("type").get<std::string>();
  if (type == "leak") {
    LeakVerdict v;
    v.leaked = j.at("leaked").get<bool>();
    if (!j.at("category").is_null()) {
      v.category = ParseLeakCategory(j.at("category").get<std::string>());
    }
    v.rationale = j.at("rationale").get<std::string>();
    return v;
  }
  if (type == "constraint") {
    ConstraintVerdict v;
    v.violation = j.at("violation").get<bool>();
    if (!j.at("kind").is_null()) {
      v.kind = ParseConstraintKind(j.at("kind").get<std::string>());
    }
    v.offending_span = j.at("offending_span").get<std::string>();
    return v;
  }
  throw StoreError("unknown verdict type '" + type + "'");
}

GameRecord DecodeGame(const Json& j) {
  Fields f(j);
  f.At("kind");
  f.At("schema_version");
  GameRecord r;
  GameConfig& c = r.config;
  c.game_id = f.Get<std::string>("game_id");
  c.sequence = f.Get<std::int64_t>("sequence");
  c.tournament = f.Get<int>("tournament");
  c.experiment = ParseExperiment(f.Get<std::string>("experiment"));
  c.mode = ParseMode(f.Get<std::string>("mode"));
  c.seeker_model = f.Get<std::string>("seeker");
  c.holder_model = f.Get<std::string>("holder");
  const Json& secret = f.At("secret");
  if (secret.contains("word")) {
    c.secret = OntologyWord{secret.at("word").get<std::string>(),
                            secret.at("category").get<std::string>()};
  } else {
    c.secret = SecretFact{secret.at("id").get<int>(), secret.at("text").get<std::string>()};
  }
  c.max_turns = f.Get<int>("max_turns");
  c.seed = f.Get<std::uint64_t>("seed");
  for (const auto& t : f.At("turns")) {
    TurnRecord turn;
    turn.index = t.at("t").get<int>();
    turn.seeker_utterance = t.at("seeker").get<std::string>();
    turn.holder_utterance = t.at("holder").get<std::string>();
    turn.response = ParseResponseKind(t.at("response").get<std::string>());
    turn.verdict = DecodeVerdict(t.at("verdict"));
    turn.notes = t.at("notes").get<std::vector<std::string>>();
    turn.rejected = t.at("rejected").get<std::vector<std::string>>();
    turn.seeker_truncated = t.at("seeker_truncated").get<bool>();
    turn.holder_truncated = t.at("holder_truncated").get<bool>();
    r.transcript.Append(std::move(turn));
  }
  if (const Json& o = f.At("outcome"); !o.is_null()) {
    r.outcome = Outcome{ParseRole(o.at("winner").get<std::string>()),
                        ParseWinReason(o.at("reason").get<std::string>()),
                        o.at("terminal_turn").get<int>()};
  }
  if (const Json& l = f.At("lock"); !l.is_null()) {
    r.lock = LockEvent{l.at("turn").get<int>(), l.at("guess").get<std::string>()};
  }
  r.aborted = f.Get<bool>("aborted");
  r.abort_reason = f.Get<std::string>("abort_reason");
  if (r.aborted == r.outcome.has_value()) {
    throw StoreError("game " + c.game_id + ": exactly one of outcome/aborted expected");
  }
  r.extras = f.Extras("game");
  return r;
}

RatingUpdate DecodeUpdate(const Json& j) {
  Fields f(j);
  f.At("kind");
  f.At("schema_version");
  RatingUpdate u;
  u.game_id = f.Get<std::string>("game_id");
  u.sequence = f.Get<std::int64_t>("sequence");
  u.experiment = ParseExperiment(f.Get<std::string>("experiment"));
  u.seeker = f.Get<std::string>("seeker");
  u.holder = f.Get<std::string>("holder");
  u.terminal_turn = f.Get<int>("terminal_turn");
  u.seeker_score = f.Get<int>("seeker_score");
  u.seeker_before = f.Get<double>("seeker_before");
  u.holder_before = f.Get<double>("holder_before");
  u.expected = f.Get<double>("expected");
  u.multiplier = f.Get<double>("multiplier");
  u.delta_c = f.Get<double>("delta_c");
  u.delta_v = f.Get<double>("delta_v");
  u.extras = f.Extras("rating-update");
  return u;
}

RoleTally DecodeTally(const Json& j) {
  return {j.at("games").get<std::int64_t>(), j.at("wins").get<std::int64_t>()};
}

TournamentSummary DecodeSummary(const Json& j) {
  Fields f(j);
  f.At("kind");
  f.At("schema_version");
  TournamentSummary s;
  s.experiment = ParseExperiment(f.Get<std::string>("experiment"));
  s.tournament = f.Get<int>("tournament");
  s.scheduled = f.Get<std::int64_t>("scheduled");
  s.completed = f.Get<std::int64_t>("completed");
  s.aborted = f.Get<std::int64_t>("aborted");
  s.seeker_wins = f.Get<std::int64_t>("seeker_wins");
  s.holder_wins = f.Get<std::int64_t>("holder_wins");
  s.mean_multiplier = f.Get<double>("mean_multiplier");
  for (const auto& [alias, m] : f.At("models").items()) {
    s.models[alias] = ModelSummary{DecodeTally(m.at("as_seeker")),
                                   DecodeTally(m.at("as_holder")),
                                   DecodeTally(m.at("seeker_mode_a")),
                                   DecodeTally(m.at("seeker_mode_b"))};
  }
  for (const auto& [alias, r] : f.At("ratings").items()) {
    s.ratings[alias] = RoleRatings{r.at("c_elo").get<double>(), r.at("v_elo").get<double>()};
  }
  s.extras = f.Extras("summary");
  return s;
}

std::string FormatRating(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::optional<double> ParseRating(const std::string& cell, std::size_t line) {
  if (cell == "-") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw StoreError("rating table line " + std::to_string(line) + ": bad number '" +
                     cell + "'");
  }
}

constexpr std::string_view kEloHeader =
    "model\tc_elo_aidg1\tv_elo_aidg1\tc_elo_aidg2\tv_elo_aidg2\tavg_c\tavg_v";

}  // namespace

std::string_view ToString(RecordKind kind) {
  switch (kind) {
    case RecordKind::kGame: return "game";
    case RecordKind::kRatingUpdate: return "rating-update";
    case RecordKind::kSummary: return "summary";
  }
  return "game";
}

RecordKind KindOf(const TraceRecord& record) {
  return static_cast<RecordKind>(record.index());
}

std::string EncodeRecord(const TraceRecord& record) {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, GameRecord>) {
          return EncodeGame(r).dump();
        } else if constexpr (std::is_same_v<T, RatingUpdate>) {
          return EncodeUpdate(r).dump();
        } else {
          return EncodeSummary(r).dump();
        }
      },
      record);
}

TraceRecord DecodeRecord(std::string_view line, std::size_t line_number) {
  const std::string where = "line " + std::to_string(line_number) + ": ";
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(where + "malformed record: " + e.what());
  }
  try {
    if (!j.is_object()) throw StoreError("record is not an object");
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
      throw StoreError("missing schema_version");
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw StoreError("unsupported schema_version " + std::to_string(version));
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "game") return DecodeGame(j);
    if (kind == "rating-update") return DecodeUpdate(j);
    if (kind == "summary") return DecodeSummary(j);
    throw StoreError("unknown record kind '" + kind + "'");
  } catch (const StoreError& e) {
    throw StoreError(where + e.what());
  } catch (const Error& e) {
    throw StoreError(where + e.what());
  } catch (const std::exception& e) {
    throw StoreError(where + "bad field: " + e.what());
  }
}

RecordWriter::RecordWriter(const fs::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  out_.open(path, std::ios::out | std::ios::app | std::ios::binary);
  if (!out_) throw StoreError("cannot open " + path.string() + " for writing");
}

void RecordWriter::Write(const TraceRecord& record) {
  out_ << EncodeRecord(record) << '\n';
  out_.flush();
  if (!out_) throw StoreError("write to " + path_.string() + " failed");
  ++count_;
}

std::size_t WriteRecords(const fs::path& path, std::span<const TraceRecord> records) {
  RecordWriter writer(path);
  for (const auto& r : records) writer.Write(r);
  return writer.count();
}

std::vector<TraceRecord> ReadRecords(const fs::path& path,
                                     std::optional<RecordKind> filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      TraceRecord r = DecodeRecord(line, line_number);
      if (!filter || KindOf(r) == *filter) out.push_back(std::move(r));
    } catch (const StoreError& e) {
      throw StoreError(path.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<GameRecord> ReadGames(const fs::path& path) {
  std::vector<GameRecord> out;
  for (auto& r : ReadRecords(path, RecordKind::kGame)) {
    out.push_back(std::get<GameRecord>(std::move(r)));
  }
  return out;
}

std::vector<RatingUpdate> ReadRatingUpdates(const fs::path& path) {
  std::vector<RatingUpdate> out;
  for (auto& r : ReadRecords(path, RecordKind::kRatingUpdate)) {
    out.push_back(std::get<RatingUpdate>(std::move(r)));
  }
  return out;
}

RatingBook ReplayRatings(std::span<const GameRecord> records,
                         const RatingConfig& config) {
  config.Validate();
  RatingBook book(config.initial_rating);
  if (records.empty()) return book;
  const std::int64_t first = records.front().config.sequence;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& c = records[i].config;
    const std::int64_t expected = first + static_cast<std::int64_t>(i);
    if (c.sequence != expected) {
      throw ReplayMismatch("expected game sequence " + std::to_string(expected) +
                           " but found " + std::to_string(c.sequence) + " (" +
                           c.game_id + ")");
    }
    book.AddModel(c.seeker_model);
    book.AddModel(c.holder_model);
  }
  for (const auto& r : records) {
    if (!r.aborted) ApplyUpdate(book, r, config);
  }
  return book;
}

void WriteEloTable(const fs::path& path, const EloTable& table) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::out | std::ios::trunc | std::ios::binary);
  if (!out) throw StoreError("cannot open " + path.string() + " for writing");
  out << kEloHeader << '\n';
  const auto field = [](const std::optional<RoleRatings>& r, double RoleRatings::*m) {
    return r ? std::optional<double>((*r).*m) : std::nullopt;
  };
  for (const auto& row : table.rows) {
    out << row.model << '\t' << FormatRating(field(row.aidg1, &RoleRatings::c_elo))
        << '\t' << FormatRating(field(row.aidg1, &RoleRatings::v_elo)) << '\t'
        << FormatRating(field(row.aidg2, &RoleRatings::c_elo)) << '\t'
        << FormatRating(field(row.aidg2, &RoleRatings::v_elo)) << '\t'
        << FormatRating(row.AverageC()) << '\t' << FormatRating(row.AverageV())
        << '\n';
  }
  if (!out) throw StoreError("write to " + path.string() + " failed");
}

EloTable ReadEloTable(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  EloTable table;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty() || line.front() == '#') continue;
    if (line_number == 1 || line == kEloHeader) {
      if (line != kEloHeader) {
        throw StoreError(path.string() + ": unexpected rating table header");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ss(line);
    for (std::string cell; std::getline(ss, cell, '\t');) cells.push_back(cell);
    if (cells.size() != 7) {
      throw StoreError(path.string() + ": line " + std::to_string(line_number) +
                       " has " + std::to_string(cells.size()) + " columns, expected 7");
    }
    EloRow& row = table.Row(cells[0]);
    const auto c1 = ParseRating(cells[1], line_number);
    const auto v1 = ParseRating(cells[2], line_number);
    const auto c2 = ParseRating(cells[3], line_number);
    const auto v2 = ParseRating(cells[4], line_number);
    if (c1.has_value() != v1.has_value() || c2.has_value() != v2.has_value()) {
      throw StoreError(path.string() + ": line " + std::to_string(line_number) +
                       ": a protocol needs both ratings or neither");
    }
    if (c1) row.aidg1 = RoleRatings{*c1, *v1};
    if (c2) row.aidg2 = RoleRatings{*c2, *v2};
  }
  return table;
}

fs::path RunLayout::TournamentDir(int tournament) const {
  return root / ("tournament-" + std::to_string(tournament));
}
fs::path RunLayout::Games(int t) const { return TournamentDir(t) / kGamesFile; }
fs::path RunLayout::Ratings(int t) const { return TournamentDir(t) / kRatingsFile; }
fs::path RunLayout::Summary(int t) const { return TournamentDir(t) / kSummaryFile; }
fs::path RunLayout::Timing(int t) const { return TournamentDir(t) / "timing.jsonl"; }
fs::path RunLayout::ConfigSnapshot(int t) const {
  return TournamentDir(t) / "config.json";
}
fs::path RunLayout::EloTableFile() const { return root / kEloTableFile; }
fs::path RunLayout::RunSummary() const { return root / "summary.txt"; }

std::vector<fs::path> FindFiles(const fs::path& root, std::string_view file_name) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return out;
  for (const auto& entry : fs::recursive_directory_iterator(root, ec)) {
    if (entry.is_regular_file() && entry.path().filename() == file_name) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace aidg
