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

#ifndef AIDG_STORE_HPP_
#define AIDG_STORE_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aidg/game.hpp"
#include "aidg/rating.hpp"
#include "aidg/tournament.hpp"

// Line-delimited trace files. Every line is one JSON object whose first keys
// are "kind" and "schema_version"; remaining keys follow a fixed order.
namespace aidg {

inline constexpr int kSchemaVersion = 1;

enum class RecordKind { kGame, kRatingUpdate, kSummary };
std::string_view ToString(RecordKind kind);

using TraceRecord = std::variant<GameRecord, RatingUpdate, TournamentSummary>;

RecordKind KindOf(const TraceRecord& record);

// Canonical single-line encoding without trailing newline. Timing is left out.
std::string EncodeRecord(const TraceRecord& record);
// Throws StoreError naming `line_number` on malformed input or an unknown
// schema_version. Unknown keys are logged and preserved in extras.
TraceRecord DecodeRecord(std::string_view line, std::size_t line_number = 0);

// Appends one line per record and flushes after each.
class RecordWriter {
 public:
  // Creates the file (and parent directories) if missing.
  explicit RecordWriter(const std::filesystem::path& path);
  void Write(const TraceRecord& record);
  std::size_t count() const { return count_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t count_ = 0;
};

std::size_t WriteRecords(const std::filesystem::path& path,
                         std::span<const TraceRecord> records);

std::vector<TraceRecord> ReadRecords(const std::filesystem::path& path,
                                     std::optional<RecordKind> filter = {});
std::vector<GameRecord> ReadGames(const std::filesystem::path& path);
std::vector<RatingUpdate> ReadRatingUpdates(const std::filesystem::path& path);

// Recomputes ratings from records in their original schedule order. Records
// must carry contiguous sequence numbers starting at the first record's;
// gaps or reordering throw ReplayMismatch. Aborted records are skipped.
RatingBook ReplayRatings(std::span<const GameRecord> records,
                         const RatingConfig& config);

// Table file with one row per model:
// model, C_ELO (I), V_ELO (I), C_ELO (II), V_ELO (II), Avg C, Avg V.
// Missing cells are written as "-".
void WriteEloTable(const std::filesystem::path& path, const EloTable& table);
EloTable ReadEloTable(const std::filesystem::path& path);

// Run directory layout.
struct RunLayout {
  std::filesystem::path root;

  std::filesystem::path TournamentDir(int tournament) const;
  std::filesystem::path Games(int tournament) const;
  std::filesystem::path Ratings(int tournament) const;
  std::filesystem::path Summary(int tournament) const;
  std::filesystem::path Timing(int tournament) const;
  std::filesystem::path ConfigSnapshot(int tournament) const;
  std::filesystem::path EloTableFile() const;
  std::filesystem::path RunSummary() const;
};

inline constexpr std::string_view kGamesFile = "games.jsonl";
inline constexpr std::string_view kRatingsFile = "ratings.jsonl";
inline constexpr std::string_view kSummaryFile = "summary.jsonl";
inline constexpr std::string_view kEloTableFile = "elo_table.tsv";

// Files named `file_name` anywhere below `root`, sorted by path.
std::vector<std::filesystem::path> FindFiles(const std::filesystem::path& root,
                                             std::string_view file_name);

}  // namespace aidg

#endif  // AIDG_STORE_HPP_
