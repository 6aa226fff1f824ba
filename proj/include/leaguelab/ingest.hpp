#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "leaguelab/error.hpp"
#include "leaguelab/model.hpp"
#include "leaguelab/simlab.hpp"

namespace leaguelab {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto end = s.find(sep, pos);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, end - pos));
    pos = end + 1;
  }
}

}  // namespace detail

/// Parses a game log: one `left,right,goals_left,goals_right` record per
/// line. Blank lines and lines starting with `#` are skipped; LF and CRLF are
/// both accepted.
inline std::vector<GameRecord> parse_results(std::string_view text) {
  std::vector<GameRecord> games;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split(text, '\n')) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto fail = [&](ErrorCode code, const std::string& what) {
      return Error(code, fmt::format("line {}: {}", line_no, what));
    };
    auto fields = detail::split(line, ',');
    if (fields.size() != 4) {
      throw fail(ErrorCode::Parse,
                 fmt::format("expected 4 comma-separated fields, got {}",
                             fields.size()));
    }
    for (auto& f : fields) f = detail::trim(f);

    auto team = [&](std::string_view f) {
      if (!TeamId::is_valid(f)) {
        throw fail(ErrorCode::Parse, fmt::format("invalid team id '{}'", f));
      }
      return TeamId(std::string(f));
    };
    auto goals = [&](std::string_view f) {
      std::int64_t v = 0;
      const char* first = f.data();
      const char* last = f.data() + f.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (f.empty() || ec != std::errc() || ptr != last) {
        throw fail(ErrorCode::Parse, fmt::format("invalid goal count '{}'", f));
      }
      if (v < 0) {
        throw fail(ErrorCode::NegativeGoals,
                   fmt::format("negative goal count {}", v));
      }
      return v;
    };

    GameRecord g{team(fields[0]), team(fields[1]), goals(fields[2]),
                 goals(fields[3])};
    if (g.left == g.right) {
      throw fail(ErrorCode::SelfPair,
                 fmt::format("team '{}' cannot play itself", g.left));
    }
    games.push_back(std::move(g));
  }
  return games;
}

inline std::string dump_results(std::span<const GameRecord> games) {
  std::string out;
  for (const auto& g : games) {
    out += fmt::format("{},{},{},{}\n", g.left, g.right, g.goals_left,
                       g.goals_right);
  }
  return out;
}

/// Builds a counts-known matrix from individual games. Team order is order of
/// first appearance; every pair of teams must have met at least once.
inline ScoreMatrix aggregate(std::span<const GameRecord> games) {
  if (games.empty()) {
    throw Error(ErrorCode::EmptyInput, "no games to aggregate");
  }
  std::vector<TeamId> teams;
  std::unordered_map<TeamId, std::size_t> index;
  auto intern = [&](const TeamId& t) {
    auto [it, inserted] = index.emplace(t, teams.size());
    if (inserted) teams.push_back(t);
    return it->second;
  };

  struct Tally {
    std::int64_t n = 0, goals_lo = 0, goals_hi = 0, wins_lo = 0, draws = 0,
                 wins_hi = 0;
  };
  std::map<std::pair<std::size_t, std::size_t>, Tally> tallies;
  for (const auto& g : games) {
    g.validate();
    std::size_t l = intern(g.left), r = intern(g.right);
    std::int64_t gl = g.goals_left, gr = g.goals_right;
    if (l > r) {
      std::swap(l, r);
      std::swap(gl, gr);
    }
    auto& t = tallies[{l, r}];
    ++t.n;
    t.goals_lo += gl;
    t.goals_hi += gr;
    if (gl > gr) {
      ++t.wins_lo;
    } else if (gl < gr) {
      ++t.wins_hi;
    } else {
      ++t.draws;
    }
  }

  ScoreMatrix matrix(teams);
  for (const auto& [key, t] : tallies) {
    PairAggregate agg;
    agg.a = teams[key.first];
    agg.b = teams[key.second];
    agg.n_games = t.n;
    agg.avg_goals_a = static_cast<double>(t.goals_lo) / static_cast<double>(t.n);
    agg.avg_goals_b = static_cast<double>(t.goals_hi) / static_cast<double>(t.n);
    agg.wins_a = t.wins_lo;
    agg.draws = t.draws;
    agg.wins_b = t.wins_hi;
    agg.counts_known = true;
    matrix.set_pair(std::move(agg));
  }
  matrix.require_complete();
  return matrix;
}

/// Reconstructs one game list consistent with a counts-known matrix: the
/// same per-pair counts and goal totals, so aggregate(explode(m)) == m for
/// matrices produced by aggregate().
inline std::vector<GameRecord> explode(const ScoreMatrix& matrix) {
  matrix.require_complete();
  std::vector<GameRecord> games;
  for (const auto& p : matrix.pairs()) {
    if (!p.counts_known) {
      throw Error(ErrorCode::CountsRequired,
                  fmt::format("pair ({}, {}) has averages only", p.a, p.b));
    }
    const auto n = static_cast<double>(p.n_games);
    std::int64_t extra_a = round_half_away(p.avg_goals_a * n) - p.wins_a;
    std::int64_t extra_b = round_half_away(p.avg_goals_b * n) - p.wins_b;
    // Baseline: wins 1:0, draws 0:0, losses 0:1.
    const bool feasible =
        extra_a >= 0 && extra_b >= 0 &&
        (p.wins_a > 0 || p.wins_b > 0 || extra_a == extra_b) &&
        (p.wins_a > 0 || extra_b >= extra_a) &&
        (p.wins_b > 0 || extra_a >= extra_b) &&
        (p.n_games > 0 || (extra_a == 0 && extra_b == 0));
    if (!feasible) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("pair ({}, {}): goal totals inconsistent with "
                              "win/draw/loss counts",
                              p.a, p.b));
    }
    std::vector<GameRecord> pair_games;
    for (std::int64_t i = 0; i < p.wins_a; ++i) pair_games.push_back({p.a, p.b, 1, 0});
    for (std::int64_t i = 0; i < p.draws; ++i) pair_games.push_back({p.a, p.b, 0, 0});
    for (std::int64_t i = 0; i < p.wins_b; ++i) pair_games.push_back({p.a, p.b, 0, 1});
    if (p.wins_a > 0 && p.wins_b > 0) {
      pair_games.front().goals_left += extra_a;
      pair_games.back().goals_right += extra_b;
    } else if (p.wins_a > 0) {
      // B's goals ride along in a game A still wins by one or more.
      pair_games.front().goals_left += extra_a;
      pair_games.front().goals_right += extra_b;
    } else if (p.wins_b > 0) {
      pair_games.back().goals_left += extra_a;
      pair_games.back().goals_right += extra_b;
    } else if (!pair_games.empty()) {
      pair_games.front().goals_left += extra_a;
      pair_games.front().goals_right += extra_b;
    }
    games.insert(games.end(), pair_games.begin(), pair_games.end());
  }
  return games;
}

/// Average scores of a benchmark team against each opponent of a field.
struct BenchmarkRow {
  struct Cell {
    TeamId opponent;
    double avg_bench = 0.0;
    double avg_opponent = 0.0;
  };
  TeamId team;
  std::vector<Cell> cells;
};

/// Adds the benchmark team to `base` as a new last team. Existing aggregates
/// are kept as-is; the new pairs are averages-only.
inline ScoreMatrix merge_benchmark(const ScoreMatrix& base,
                                   const BenchmarkRow& row) {
  if (base.contains(row.team)) {
    throw Error(ErrorCode::DuplicateTeam,
                fmt::format("benchmark team '{}' already in the field",
                            row.team));
  }
  std::vector<TeamId> missing, extra;
  std::unordered_map<TeamId, const BenchmarkRow::Cell*> by_opp;
  for (const auto& c : row.cells) {
    if (!base.contains(c.opponent)) {
      extra.push_back(c.opponent);
    } else if (!by_opp.emplace(c.opponent, &c).second) {
      throw Error(ErrorCode::Coverage,
                  fmt::format("opponent '{}' appears twice in the benchmark "
                              "row",
                              c.opponent));
    }
  }
  for (const auto& t : base.teams()) {
    if (!by_opp.contains(t)) missing.push_back(t);
  }
  if (!missing.empty() || !extra.empty()) {
    throw Error(ErrorCode::Coverage,
                fmt::format("benchmark row must cover the field exactly; "
                            "missing: [{}]; extra: [{}]",
                            fmt::join(missing, ", "), fmt::join(extra, ", ")));
  }

  std::vector<TeamId> teams = base.teams();
  teams.push_back(row.team);
  ScoreMatrix merged(std::move(teams));
  for (auto agg : base.pairs()) merged.set_pair(std::move(agg));
  for (const auto& t : base.teams()) {
    const auto* c = by_opp.at(t);
    merged.set_pair(PairAggregate::averages_only(row.team, t, c->avg_bench,
                                                 c->avg_opponent));
  }
  return merged;
}

/// The same aggregates over a permuted team order.
inline ScoreMatrix reordered(const ScoreMatrix& m,
                             const std::vector<TeamId>& order) {
  if (order.size() != m.size()) {
    throw Error(ErrorCode::DomainMismatch, "reorder needs the same team set");
  }
  for (const auto& t : order) {
    if (!m.contains(t)) {
      throw Error(ErrorCode::DomainMismatch,
                  fmt::format("team '{}' not in matrix", t));
    }
  }
  ScoreMatrix out(order);
  for (auto agg : m.pairs()) out.set_pair(std::move(agg));
  return out;
}

// ---------------------------------------------------------------------------
// Matrix document:
//   {"pairs": [{"a", "b", "n_games", "avg_a", "avg_b", "counts_known",
//               "wins_a"?, "draws"?, "wins_b"?}], "teams": [...]}
// Keys are emitted sorted and averages at full round-trip precision.

namespace detail {

[[noreturn]] inline void json_fail(const std::string& path,
                                   const std::string& what) {
  throw Error(ErrorCode::Parse, fmt::format("{}: {}", path, what));
}

inline const nlohmann::json& require(const nlohmann::json& obj,
                                     const std::string& path,
                                     const char* key) {
  if (!obj.is_object()) json_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) json_fail(path + "." + key, "missing field");
  return *it;
}

inline std::int64_t as_count(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer()) json_fail(path, "expected an integer");
  auto x = v.get<std::int64_t>();
  if (x < 0) json_fail(path, "must be non-negative");
  return x;
}

inline double as_real(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) json_fail(path, "expected a number");
  return v.get<double>();
}

inline TeamId as_team(const nlohmann::json& v, const std::string& path) {
  if (!v.is_string() || !TeamId::is_valid(v.get<std::string>())) {
    json_fail(path, "expected a team id string");
  }
  return TeamId(v.get<std::string>());
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, fmt::format("$: {}", e.what()));
  }
}

}  // namespace detail

inline nlohmann::json matrix_to_json(const ScoreMatrix& m) {
  nlohmann::json doc;
  doc["teams"] = nlohmann::json::array();
  for (const auto& t : m.teams()) doc["teams"].push_back(t.str());
  doc["pairs"] = nlohmann::json::array();
  for (const auto& p : m.pairs()) {
    nlohmann::json e{{"a", p.a.str()},
                     {"b", p.b.str()},
                     {"n_games", p.n_games},
                     {"avg_a", p.avg_goals_a},
                     {"avg_b", p.avg_goals_b},
                     {"counts_known", p.counts_known}};
    if (p.counts_known) {
      e["wins_a"] = p.wins_a;
      e["draws"] = p.draws;
      e["wins_b"] = p.wins_b;
    }
    doc["pairs"].push_back(std::move(e));
  }
  return doc;
}

inline std::string dump_matrix(const ScoreMatrix& m) {
  return matrix_to_json(m).dump(2) + "\n";
}

inline ScoreMatrix matrix_from_json(const nlohmann::json& doc) {
  using detail::json_fail;
  const auto& teams_json = detail::require(doc, "$", "teams");
  if (!teams_json.is_array()) json_fail("$.teams", "expected an array");
  std::vector<TeamId> teams;
  for (std::size_t i = 0; i < teams_json.size(); ++i) {
    teams.push_back(
        detail::as_team(teams_json[i], fmt::format("$.teams[{}]", i)));
  }
  ScoreMatrix m(std::move(teams));

  const auto& pairs_json = detail::require(doc, "$", "pairs");
  if (!pairs_json.is_array()) json_fail("$.pairs", "expected an array");
  for (std::size_t i = 0; i < pairs_json.size(); ++i) {
    const auto path = fmt::format("$.pairs[{}]", i);
    const auto& e = pairs_json[i];
    auto field = [&](const char* key) -> const nlohmann::json& {
      return detail::require(e, path, key);
    };
    PairAggregate p;
    p.a = detail::as_team(field("a"), path + ".a");
    p.b = detail::as_team(field("b"), path + ".b");
    p.n_games = detail::as_count(field("n_games"), path + ".n_games");
    p.avg_goals_a = detail::as_real(field("avg_a"), path + ".avg_a");
    p.avg_goals_b = detail::as_real(field("avg_b"), path + ".avg_b");
    const bool has_counts =
        e.contains("wins_a") || e.contains("draws") || e.contains("wins_b");
    if (auto it = e.find("counts_known"); it != e.end()) {
      if (!it->is_boolean()) {
        json_fail(path + ".counts_known", "expected a boolean");
      }
      p.counts_known = it->get<bool>();
    } else {
      p.counts_known = has_counts;
    }
    if (p.counts_known) {
      p.wins_a = detail::as_count(field("wins_a"), path + ".wins_a");
      p.draws = detail::as_count(field("draws"), path + ".draws");
      p.wins_b = detail::as_count(field("wins_b"), path + ".wins_b");
    } else if (has_counts) {
      json_fail(path, "counts given but counts_known is false");
    }
    if (!m.contains(p.a) || !m.contains(p.b)) {
      json_fail(path, "pair names a team missing from $.teams");
    }
    if (m.has_pair(p.a, p.b)) json_fail(path, "duplicate pair");
    try {
      m.set_pair(std::move(p));
    } catch (const Error& err) {
      throw Error(err.code(), fmt::format("{}: {}", path, err.what()));
    }
  }
  m.require_complete();
  return m;
}

inline ScoreMatrix load_matrix(std::string_view text) {
  return matrix_from_json(detail::parse_json(text));
}

// ---------------------------------------------------------------------------
// Ranking document: {"ranking": ["first", "second", ...]}

inline std::string dump_ranking(const Ranking& r) {
  nlohmann::json doc;
  doc["ranking"] = nlohmann::json::array();
  for (const auto& t : r.order()) doc["ranking"].push_back(t.str());
  return doc.dump(2) + "\n";
}

inline Ranking ranking_from_json(const nlohmann::json& doc) {
  const auto& arr = detail::require(doc, "$", "ranking");
  if (!arr.is_array()) detail::json_fail("$.ranking", "expected an array");
  std::vector<TeamId> order;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    order.push_back(detail::as_team(arr[i], fmt::format("$.ranking[{}]", i)));
  }
  return Ranking(std::move(order));
}

inline Ranking load_ranking(std::string_view text) {
  return ranking_from_json(detail::parse_json(text));
}

// ---------------------------------------------------------------------------
// Score-model document:
//   {"teams": [...], "sigma"?: 1.0,
//    "pairs": [{"a", "b", "mean_a", "mean_b", "sigma"?}]}

inline PairModelSet load_pair_models(std::string_view text,
                                     double default_sigma) {
  using detail::json_fail;
  const auto doc = detail::parse_json(text);
  const auto& teams_json = detail::require(doc, "$", "teams");
  if (!teams_json.is_array()) json_fail("$.teams", "expected an array");
  std::vector<TeamId> teams;
  for (std::size_t i = 0; i < teams_json.size(); ++i) {
    teams.push_back(
        detail::as_team(teams_json[i], fmt::format("$.teams[{}]", i)));
  }
  double sigma = default_sigma;
  if (auto it = doc.find("sigma"); it != doc.end()) {
    sigma = detail::as_real(*it, "$.sigma");
  }
  PairModelSet models(std::move(teams));
  const auto& pairs_json = detail::require(doc, "$", "pairs");
  if (!pairs_json.is_array()) json_fail("$.pairs", "expected an array");
  for (std::size_t i = 0; i < pairs_json.size(); ++i) {
    const auto path = fmt::format("$.pairs[{}]", i);
    const auto& e = pairs_json[i];
    auto field = [&](const char* key) -> const nlohmann::json& {
      return detail::require(e, path, key);
    };
    const auto a = detail::as_team(field("a"), path + ".a");
    const auto b = detail::as_team(field("b"), path + ".b");
    ScoreModel model{detail::as_real(field("mean_a"), path + ".mean_a"),
                     detail::as_real(field("mean_b"), path + ".mean_b"),
                     sigma};
    if (auto it = e.find("sigma"); it != e.end()) {
      model.sigma = detail::as_real(*it, path + ".sigma");
    }
    try {
      if (models.find(a, b)) json_fail(path, "duplicate pair");
      models.set(a, b, model);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::Parse) throw;
      throw Error(err.code(), fmt::format("{}: {}", path, err.what()));
    }
  }
  return models;
}

}  // namespace leaguelab
