#pragma once

#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "leaguelab/error.hpp"

namespace leaguelab {

/// A team identifier: a non-empty token without whitespace or parentheses.
class TeamId {
 public:
  TeamId() = default;
  explicit TeamId(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("invalid team id '{}'", value_));
    }
  }

  static bool is_valid(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      auto u = static_cast<unsigned char>(c);
      if (u <= 0x20 || u == 0x7f || c == '(' || c == ')') return false;
    }
    return true;
  }

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const TeamId&, const TeamId&) = default;
  friend bool operator==(const TeamId&, const TeamId&) = default;

 private:
  std::string value_;
};

inline TeamId operator""_team(const char* s, std::size_t n) {
  return TeamId(std::string(s, n));
}

}  // namespace leaguelab

template <>
struct std::hash<leaguelab::TeamId> {
  std::size_t operator()(const leaguelab::TeamId& t) const noexcept {
    return std::hash<std::string>{}(t.str());
  }
};

template <>
struct fmt::formatter<leaguelab::TeamId> : fmt::formatter<std::string_view> {
  template <typename Ctx>
  auto format(const leaguelab::TeamId& t, Ctx& ctx) const {
    return fmt::formatter<std::string_view>::format(t.str(), ctx);
  }
};

namespace leaguelab {

/// Shortest decimal that reads back to the same double.
inline std::string shortest_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Rounds half away from zero; the rounding that defines the discrete scheme
/// (2.5 -> 3, 0.5 -> 1, 1.2 -> 1).
inline std::int64_t round_half_away(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::InvalidValue, "cannot round a non-finite value");
  }
  if (std::fabs(x) >= 9.0e18) {
    throw Error(ErrorCode::InvalidValue, fmt::format("{} is out of range", x));
  }
  return static_cast<std::int64_t>(std::llround(x));
}

struct GameRecord {
  TeamId left;
  TeamId right;
  std::int64_t goals_left = 0;
  std::int64_t goals_right = 0;

  void validate() const {
    if (left == right) {
      throw Error(ErrorCode::SelfPair,
                  fmt::format("team '{}' cannot play itself", left));
    }
    if (goals_left < 0 || goals_right < 0) {
      throw Error(ErrorCode::NegativeGoals,
                  fmt::format("negative goals in {} {}:{} {}", left,
                              goals_left, goals_right, right));
    }
  }

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

/// Aggregate of all games between two teams. Averages-only aggregates
/// (counts_known == false) come from published tables that omit win/draw/loss
/// counts; their n_games may be 0 when unpublished.
struct PairAggregate {
  TeamId a;
  TeamId b;
  std::int64_t n_games = 0;
  double avg_goals_a = 0.0;
  double avg_goals_b = 0.0;
  std::int64_t wins_a = 0;
  std::int64_t draws = 0;
  std::int64_t wins_b = 0;
  bool counts_known = false;

  static PairAggregate averages_only(TeamId a, TeamId b, double avg_a,
                                     double avg_b,
                                     std::int64_t n_games = 0) {
    PairAggregate p;
    p.a = std::move(a);
    p.b = std::move(b);
    p.n_games = n_games;
    p.avg_goals_a = avg_a;
    p.avg_goals_b = avg_b;
    return p;
  }

  PairAggregate swapped() const {
    PairAggregate p = *this;
    std::swap(p.a, p.b);
    std::swap(p.avg_goals_a, p.avg_goals_b);
    std::swap(p.wins_a, p.wins_b);
    return p;
  }

  void validate() const {
    if (a == b) {
      throw Error(ErrorCode::SelfPair,
                  fmt::format("pair ({}, {}) is a self-pair", a, b));
    }
    if (n_games < 0) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("pair ({}, {}): negative game count", a, b));
    }
    for (double v : {avg_goals_a, avg_goals_b}) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("pair ({}, {}): average goals must be finite "
                                "and non-negative, got {}",
                                a, b, v));
      }
    }
    if (counts_known) {
      if (wins_a < 0 || draws < 0 || wins_b < 0) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("pair ({}, {}): negative result count", a, b));
      }
      if (wins_a + draws + wins_b != n_games) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("pair ({}, {}): {} + {} + {} != {} games", a, b,
                                wins_a, draws, wins_b, n_games));
      }
    }
  }

  friend bool operator==(const PairAggregate&, const PairAggregate&) = default;
};

/// Round-robin aggregates over an ordered team set, one entry per unordered
/// pair. Lookups in either orientation return the aggregate seen from the
/// first argument's side.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;

  explicit ScoreMatrix(std::vector<TeamId> teams) : teams_(std::move(teams)) {
    for (std::size_t i = 0; i < teams_.size(); ++i) {
      if (!index_.emplace(teams_[i], i).second) {
        throw Error(ErrorCode::DuplicateTeam,
                    fmt::format("team '{}' listed twice", teams_[i]));
      }
    }
  }

  const std::vector<TeamId>& teams() const noexcept { return teams_; }
  std::size_t size() const noexcept { return teams_.size(); }
  std::size_t expected_pair_count() const noexcept {
    return teams_.size() * (teams_.size() - (teams_.empty() ? 0 : 1)) / 2;
  }
  std::size_t pair_count() const noexcept { return pairs_.size(); }

  bool contains(const TeamId& t) const { return index_.contains(t); }

  std::size_t index_of(const TeamId& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) {
      throw Error(ErrorCode::UnknownTeam, fmt::format("unknown team '{}'", t));
    }
    return it->second;
  }

  /// Inserts or replaces the aggregate for (agg.a, agg.b).
  void set_pair(PairAggregate agg) {
    agg.validate();
    std::size_t i = index_of(agg.a);
    std::size_t j = index_of(agg.b);
    if (i > j) {
      agg = agg.swapped();
      std::swap(i, j);
    }
    pairs_[{i, j}] = std::move(agg);
  }

  bool has_pair(const TeamId& a, const TeamId& b) const {
    auto i = index_of(a), j = index_of(b);
    return pairs_.contains(i < j ? std::pair{i, j} : std::pair{j, i});
  }

  PairAggregate pair(const TeamId& a, const TeamId& b) const {
    std::size_t i = index_of(a), j = index_of(b);
    if (i == j) {
      throw Error(ErrorCode::SelfPair,
                  fmt::format("pair ({}, {}) is a self-pair", a, b));
    }
    auto it = pairs_.find(i < j ? std::pair{i, j} : std::pair{j, i});
    if (it == pairs_.end()) {
      throw Error(ErrorCode::IncompleteMatrix,
                  fmt::format("no aggregate for pair ({}, {})", a, b));
    }
    return i < j ? it->second : it->second.swapped();
  }

  /// Aggregates in canonical order: (i, j) with i < j by team position.
  std::vector<PairAggregate> pairs() const {
    std::vector<PairAggregate> out;
    out.reserve(pairs_.size());
    for (const auto& [key, agg] : pairs_) out.push_back(agg);
    return out;
  }

  std::vector<std::pair<TeamId, TeamId>> missing_pairs() const {
    std::vector<std::pair<TeamId, TeamId>> out;
    for (std::size_t i = 0; i < teams_.size(); ++i) {
      for (std::size_t j = i + 1; j < teams_.size(); ++j) {
        if (!pairs_.contains({i, j})) out.emplace_back(teams_[i], teams_[j]);
      }
    }
    return out;
  }

  bool complete() const { return pairs_.size() == expected_pair_count(); }

  void require_complete() const {
    auto missing = missing_pairs();
    if (missing.empty()) return;
    std::string list;
    for (const auto& [a, b] : missing) {
      if (!list.empty()) list += ", ";
      list += fmt::format("({}, {})", a, b);
    }
    throw Error(ErrorCode::IncompleteMatrix,
                fmt::format("{} missing pair(s): {}", missing.size(), list));
  }

  bool counts_known() const {
    for (const auto& [key, agg] : pairs_) {
      if (!agg.counts_known) return false;
    }
    return true;
  }

  friend bool operator==(const ScoreMatrix& x, const ScoreMatrix& y) {
    return x.teams_ == y.teams_ && x.pairs_ == y.pairs_;
  }

 private:
  std::vector<TeamId> teams_;
  std::unordered_map<TeamId, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, PairAggregate> pairs_;
};

struct PointsRow {
  TeamId team;
  double points = 0.0;
  std::int64_t goals_for_rounded = 0;
  std::int64_t goals_against_rounded = 0;
  double goals_for_raw = 0.0;
  double goals_against_raw = 0.0;

  std::int64_t goal_difference_rounded() const {
    return goals_for_rounded - goals_against_rounded;
  }
  double goal_difference_raw() const {
    return goals_for_raw - goals_against_raw;
  }
};

/// One row per team, in the team order of the source matrix.
struct PointsTable {
  std::vector<PointsRow> rows;

  const PointsRow& row(const TeamId& t) const {
    for (const auto& r : rows) {
      if (r.team == t) return r;
    }
    throw Error(ErrorCode::UnknownTeam, fmt::format("unknown team '{}'", t));
  }
};

/// A bijection from teams onto ranks 1..n.
class Ranking {
 public:
  Ranking() = default;

  /// `order[i]` receives rank i + 1.
  explicit Ranking(std::vector<TeamId> order) : order_(std::move(order)) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (!rank_.emplace(order_[i], static_cast<int>(i + 1)).second) {
        throw Error(ErrorCode::DuplicateTeam,
                    fmt::format("team '{}' ranked twice", order_[i]));
      }
    }
  }

  std::size_t size() const noexcept { return order_.size(); }
  bool empty() const noexcept { return order_.empty(); }
  const std::vector<TeamId>& order() const noexcept { return order_; }
  bool contains(const TeamId& t) const { return rank_.contains(t); }

  int rank_of(const TeamId& t) const {
    auto it = rank_.find(t);
    if (it == rank_.end()) {
      throw Error(ErrorCode::UnknownTeam,
                  fmt::format("team '{}' is not ranked", t));
    }
    return it->second;
  }

  /// Ranks listed in the given team order.
  std::vector<int> ranks_for(const std::vector<TeamId>& teams) const {
    std::vector<int> out;
    out.reserve(teams.size());
    for (const auto& t : teams) out.push_back(rank_of(t));
    return out;
  }

  friend bool operator==(const Ranking& x, const Ranking& y) {
    return x.order_ == y.order_;
  }

 private:
  std::vector<TeamId> order_;
  std::unordered_map<TeamId, int> rank_;
};

}  // namespace leaguelab
