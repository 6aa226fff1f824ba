#pragma once

// Round-robin results from the 2016 2D simulation league evaluation,
// transcribed digit for digit. Matrices are averages-only: the source tables
// publish mean goals per pairing but no win/draw/loss counts.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "leaguelab/error.hpp"
#include "leaguelab/ingest.hpp"
#include "leaguelab/model.hpp"

namespace leaguelab::fixtures {

/// Row-perspective score grid as printed: cell (i, j) is "row : column".
/// Diagonal cells are ignored.
using Grid = std::vector<std::vector<std::pair<double, double>>>;

inline std::vector<TeamId> team_list(std::initializer_list<const char*> names) {
  std::vector<TeamId> out;
  for (const char* n : names) out.emplace_back(n);
  return out;
}

/// Builds a matrix from the upper triangle of a full grid, checking that the
/// lower triangle mirrors it.
inline ScoreMatrix matrix_from_grid(std::vector<TeamId> teams,
                                    const Grid& grid) {
  const std::size_t n = teams.size();
  if (grid.size() != n) {
    throw Error(ErrorCode::InvalidValue, "grid row count != team count");
  }
  ScoreMatrix m(teams);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].size() != n) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("grid row {} has {} cells", i, grid[i].size()));
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto [a, b] = grid[i][j];
      const auto [b2, a2] = grid[j][i];
      if (a != a2 || b != b2) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("grid cells ({}, {}) and ({}, {}) disagree",
                                teams[i], teams[j], teams[j], teams[i]));
      }
      m.set_pair(PairAggregate::averages_only(teams[i], teams[j], a, b));
    }
  }
  return m;
}

/// A published round-robin table: the matrix plus its printed points,
/// rounded goals and rank columns, all in matrix team order.
struct PublishedTable {
  std::string name;
  ScoreMatrix matrix;
  std::vector<int> points;
  std::vector<std::pair<int, int>> goals;
  std::vector<int> ranks;
};

namespace detail {
inline constexpr std::pair<double, double> kSelf{0.0, 0.0};
}

/// Top 8 of RoboCup 2016, in actual final order; ~4000 games per pair.
inline PublishedTable table1() {
  using detail::kSelf;
  auto teams = team_list({"Gliders", "HELIOS", "Ri-one", "CSU_Yunlu", "Oxsy",
                          "Shiraz", "MT2016", "FURY"});
  const Grid grid = {
      {kSelf, {0.3, 0.4}, {2.8, 0.3}, {1.9, 0.3}, {0.7, 0.8}, {3.8, 0.4}, {5.0, 0.0}, {2.5, 0.2}},
      {{0.4, 0.3}, kSelf, {1.8, 0.1}, {3.0, 0.2}, {1.2, 0.5}, {4.3, 0.3}, {3.6, 0.0}, {2.5, 0.0}},
      {{0.3, 2.8}, {0.1, 1.8}, kSelf, {1.1, 1.1}, {0.2, 1.8}, {0.6, 0.5}, {0.4, 0.0}, {0.6, 0.5}},
      {{0.3, 1.9}, {0.2, 3.0}, {1.1, 1.1}, kSelf, {0.5, 1.2}, {2.0, 0.7}, {1.4, 0.0}, {1.2, 0.4}},
      {{0.8, 0.7}, {0.5, 1.2}, {1.8, 0.2}, {1.2, 0.5}, kSelf, {3.5, 0.5}, {4.4, 0.0}, {3.0, 0.1}},
      {{0.4, 3.8}, {0.3, 4.3}, {0.5, 0.6}, {0.7, 2.0}, {0.5, 3.5}, kSelf, {0.5, 0.1}, {0.8, 1.0}},
      {{0.0, 5.0}, {0.0, 3.6}, {0.0, 0.4}, {0.0, 1.4}, {0.0, 4.4}, {0.1, 0.5}, kSelf, {0.0, 0.0}},
      {{0.2, 2.5}, {0.0, 2.5}, {0.5, 0.6}, {0.4, 1.2}, {0.1, 3.0}, {1.0, 0.8}, {0.0, 0.0}, kSelf},
  };
  return {"table1",
          matrix_from_grid(std::move(teams), grid),
          {17, 17, 4, 11, 15, 5, 2, 3},
          {{18, 1}, {17, 1}, {3, 10}, {6, 8}, {16, 4}, {5, 16}, {0, 15}, {2, 12}},
          {1, 2, 6, 4, 3, 5, 8, 7}};
}

/// WE2015 against the 2016 top 8: averages over 1000 games. Opponent names
/// follow the table1 ids so the row merges into that field.
inline BenchmarkRow table2() {
  BenchmarkRow row;
  row.team = TeamId("WE2015");
  const std::array<std::pair<const char*, std::pair<double, double>>, 8> cells{{
      {"Gliders", {1.4, 1.8}},
      {"HELIOS", {1.3, 1.7}},
      {"Ri-one", {5.0, 0.5}},
      {"CSU_Yunlu", {2.7, 0.5}},
      {"Oxsy", {3.5, 1.3}},
      {"Shiraz", {4.0, 0.8}},
      {"MT2016", {5.9, 0.0}},
      {"FURY", {4.8, 0.4}},
  }};
  for (const auto& [opp, score] : cells) {
    row.cells.push_back({TeamId(opp), score.first, score.second});
  }
  return row;
}

/// WE2015's single evaluation-round games played at the 2016 event.
inline std::vector<GameRecord> table2_event_games() {
  const std::array<std::pair<const char*, std::pair<int, int>>, 8> games{{
      {"Gliders", {0, 1}},
      {"HELIOS", {1, 2}},
      {"Ri-one", {7, 1}},
      {"CSU_Yunlu", {2, 0}},
      {"Oxsy", {4, 1}},
      {"Shiraz", {3, 2}},
      {"MT2016", {4, 0}},
      {"FURY", {11, 2}},
  }};
  std::vector<GameRecord> out;
  for (const auto& [opp, score] : games) {
    out.push_back({TeamId("WE2015"), TeamId(opp), score.first, score.second});
  }
  return out;
}

/// table1 extended with WE2015, as printed.
inline PublishedTable table3() {
  using detail::kSelf;
  auto teams = team_list({"Gliders", "HELIOS", "WE2015", "Ri-one", "CSU_Yunlu",
                          "Oxsy", "Shiraz", "MT2016", "FURY"});
  const Grid grid = {
      {kSelf, {0.3, 0.4}, {1.8, 1.4}, {2.8, 0.3}, {1.9, 0.3}, {0.7, 0.8}, {3.8, 0.4}, {5.0, 0.0}, {2.5, 0.2}},
      {{0.4, 0.3}, kSelf, {1.7, 1.3}, {1.8, 0.1}, {3.0, 0.2}, {1.2, 0.5}, {4.3, 0.3}, {3.6, 0.0}, {2.5, 0.0}},
      {{1.4, 1.8}, {1.3, 1.7}, kSelf, {5.0, 0.5}, {2.7, 0.5}, {3.5, 1.3}, {4.0, 0.8}, {5.9, 0.0}, {4.8, 0.4}},
      {{0.3, 2.8}, {0.1, 1.8}, {0.5, 5.0}, kSelf, {1.1, 1.1}, {0.2, 1.8}, {0.6, 0.5}, {0.4, 0.0}, {0.6, 0.5}},
      {{0.3, 1.9}, {0.2, 3.0}, {0.5, 2.7}, {1.1, 1.1}, kSelf, {0.5, 1.2}, {2.0, 0.7}, {1.4, 0.0}, {1.2, 0.4}},
      {{0.8, 0.7}, {0.5, 1.2}, {1.3, 3.5}, {1.8, 0.2}, {1.2, 0.5}, kSelf, {3.5, 0.5}, {4.4, 0.0}, {3.0, 0.1}},
      {{0.4, 3.8}, {0.3, 4.3}, {0.8, 4.0}, {0.5, 0.6}, {0.7, 2.0}, {0.5, 3.5}, kSelf, {0.5, 0.1}, {0.8, 1.0}},
      {{0.0, 5.0}, {0.0, 3.6}, {0.0, 5.9}, {0.0, 0.4}, {0.0, 1.4}, {0.0, 4.4}, {0.1, 0.5}, kSelf, {0.0, 0.0}},
      {{0.2, 2.5}, {0.0, 2.5}, {0.4, 4.8}, {0.5, 0.6}, {0.4, 1.2}, {0.1, 3.0}, {1.0, 0.8}, {0.0, 0.0}, kSelf},
  };
  return {"table3",
          matrix_from_grid(std::move(teams), grid),
          {20, 20, 18, 4, 11, 15, 5, 2, 3},
          {{20, 2}, {19, 2}, {29, 8}, {4, 15}, {7, 11}, {17, 8}, {6, 20}, {0, 21}, {2, 17}},
          {1, 2, 3, 7, 5, 4, 6, 9, 8}};
}

/// Six champions 2011-2016; 1000 games per pair.
inline PublishedTable table4() {
  using detail::kSelf;
  auto teams = team_list(
      {"Gliders2016", "WE2015", "WE2014", "WE2013", "HELIOS2012", "WE2011"});
  const Grid grid = {
      {kSelf, {1.8, 1.4}, {1.8, 1.3}, {1.7, 0.9}, {1.2, 0.1}, {2.0, 1.0}},
      {{1.4, 1.8}, kSelf, {2.5, 2.5}, {3.0, 2.5}, {2.2, 0.9}, {4.0, 2.9}},
      {{1.3, 1.8}, {2.5, 2.5}, kSelf, {2.8, 2.6}, {2.3, 0.8}, {3.9, 3.0}},
      {{0.9, 1.7}, {2.5, 3.0}, {2.6, 2.8}, kSelf, {1.9, 0.9}, {2.9, 3.2}},
      {{0.1, 1.2}, {0.9, 2.2}, {0.8, 2.3}, {0.9, 1.9}, kSelf, {2.6, 1.8}},
      {{1.0, 2.0}, {2.9, 4.0}, {3.0, 3.9}, {3.2, 2.9}, {1.8, 2.6}, kSelf},
  };
  return {"table4",
          matrix_from_grid(std::move(teams), grid),
          {15, 8, 8, 6, 3, 1},
          {{9, 4}, {13, 12}, {13, 12}, {12, 12}, {6, 9}, {12, 16}},
          {1, 2, 3, 4, 5, 6}};
}

/// Actual final standings of the 2016 top 8.
inline Ranking rank_actual_2016() {
  return Ranking(team_list({"Gliders", "HELIOS", "Ri-one", "CSU_Yunlu", "Oxsy",
                            "Shiraz", "MT2016", "FURY"}));
}

/// Champions from newest to oldest.
inline Ranking rank_chronological() {
  return Ranking(team_list(
      {"Gliders2016", "WE2015", "WE2014", "WE2013", "HELIOS2012", "WE2011"}));
}

using Payload =
    std::variant<ScoreMatrix, BenchmarkRow, std::vector<GameRecord>, Ranking>;

inline std::vector<std::string_view> names() {
  return {"table1",           "table2",          "table2_event",
          "table3",           "table4",          "rank_actual_2016",
          "rank_chronological"};
}

/// Resolves a fixture by name (without the leading '@').
inline Payload find(std::string_view name) {
  if (name == "table1") return table1().matrix;
  if (name == "table2") return table2();
  if (name == "table2_event") return table2_event_games();
  if (name == "table3") return table3().matrix;
  if (name == "table4") return table4().matrix;
  if (name == "rank_actual_2016") return rank_actual_2016();
  if (name == "rank_chronological") return rank_chronological();
  throw Error(ErrorCode::UnknownFixture,
              fmt::format("no fixture named '{}' (known: {})", name,
                          fmt::join(names(), ", ")));
}

}  // namespace leaguelab::fixtures
