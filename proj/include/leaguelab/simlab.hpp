#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "leaguelab/error.hpp"
#include "leaguelab/model.hpp"
#include "leaguelab/parallel.hpp"
#include "leaguelab/rng.hpp"

namespace leaguelab {

inline constexpr std::int64_t kBiasSampleGames = 10000;
inline constexpr std::int64_t kTournamentGames = 4000;

/// Latent mean goals of each side and the shared standard deviation.
struct ScoreModel {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double sigma = 1.0;

  void validate() const {
    for (double m : {mean_a, mean_b}) {
      if (!std::isfinite(m) || m < 0.0) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("mean goals must be finite and non-negative, "
                                "got {}",
                                m));
      }
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("sigma must be positive, got {}", sigma));
    }
  }

  ScoreModel swapped() const { return {mean_b, mean_a, sigma}; }

  friend bool operator==(const ScoreModel&, const ScoreModel&) = default;
};

struct SimConfig {
  std::int64_t n_games = kTournamentGames;
  std::uint64_t master_seed = 0;
  double sigma = 1.0;
  /// Worker count; never changes results.
  unsigned threads = 1;

  void validate() const {
    if (n_games <= 0) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("n_games must be positive, got {}", n_games));
    }
    if (!std::isfinite(sigma) || sigma <= 0.0) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("sigma must be positive, got {}", sigma));
    }
  }
};

/// Integer goals of one side: a Gaussian draw rounded half away from zero and
/// clamped at zero.
inline std::int64_t sample_goals(double mean, double sigma,
                                 RandomStream& stream) {
  if (!std::isfinite(sigma) || sigma < 0.0 || !std::isfinite(mean)) {
    throw Error(ErrorCode::InvalidValue,
                fmt::format("bad goal model mean={} sigma={}", mean, sigma));
  }
  const double draw =
      sigma == 0.0 ? mean : mean + sigma * stream.standard_normal();
  return std::max<std::int64_t>(0, round_half_away(draw));
}

/// The games of one simulated pairing, in play order. Uses the stream
/// numbered `pair_index` under `cfg.master_seed`.
inline std::vector<GameRecord> simulate_games(const ScoreModel& model,
                                              const SimConfig& cfg,
                                              std::uint64_t pair_index,
                                              const TeamId& a = "A"_team,
                                              const TeamId& b = "B"_team) {
  model.validate();
  cfg.validate();
  RandomStream stream(cfg.master_seed, pair_index);
  std::vector<GameRecord> games;
  games.reserve(static_cast<std::size_t>(cfg.n_games));
  for (std::int64_t g = 0; g < cfg.n_games; ++g) {
    const auto ga = sample_goals(model.mean_a, model.sigma, stream);
    const auto gb = sample_goals(model.mean_b, model.sigma, stream);
    games.push_back({a, b, ga, gb});
  }
  return games;
}

/// Plays cfg.n_games games and returns their counts-known aggregate.
/// Draws the same sequence as simulate_games for equal arguments.
inline PairAggregate simulate_pair(const ScoreModel& model,
                                   const SimConfig& cfg,
                                   std::uint64_t pair_index,
                                   const TeamId& a = "A"_team,
                                   const TeamId& b = "B"_team) {
  model.validate();
  cfg.validate();
  RandomStream stream(cfg.master_seed, pair_index);
  std::int64_t goals_a = 0, goals_b = 0;
  PairAggregate agg;
  agg.a = a;
  agg.b = b;
  agg.counts_known = true;
  agg.n_games = cfg.n_games;
  for (std::int64_t g = 0; g < cfg.n_games; ++g) {
    const auto ga = sample_goals(model.mean_a, model.sigma, stream);
    const auto gb = sample_goals(model.mean_b, model.sigma, stream);
    goals_a += ga;
    goals_b += gb;
    if (ga > gb) {
      ++agg.wins_a;
    } else if (ga < gb) {
      ++agg.wins_b;
    } else {
      ++agg.draws;
    }
  }
  agg.avg_goals_a = static_cast<double>(goals_a) / static_cast<double>(agg.n_games);
  agg.avg_goals_b = static_cast<double>(goals_b) / static_cast<double>(agg.n_games);
  return agg;
}

// ---------------------------------------------------------------------------
// Exact oracle for the clamp-and-round Gaussian goal model.

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double normal_upper_tail(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

inline constexpr double kPmfTailCutoff = 1e-9;

/// Probability of each integer goal count 0..K, where K is the smallest count
/// whose cumulative probability reaches 1 - 1e-9; the remaining mass is
/// added to K.
inline std::vector<double> exact_pair_distribution(double mean, double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw Error(ErrorCode::InvalidValue,
                fmt::format("sigma must be positive, got {}", sigma));
  }
  if (!std::isfinite(mean)) {
    throw Error(ErrorCode::InvalidValue, "mean must be finite");
  }
  std::vector<double> pmf;
  double total = 0.0;
  for (std::int64_t k = 0;; ++k) {
    const double hi = (static_cast<double>(k) + 0.5 - mean) / sigma;
    double p;
    if (k == 0) {
      p = normal_cdf(hi);
    } else {
      const double lo = (static_cast<double>(k) - 0.5 - mean) / sigma;
      // Difference of upper tails keeps precision right of the mean.
      p = lo > 0.0 ? normal_upper_tail(lo) - normal_upper_tail(hi)
                   : normal_cdf(hi) - normal_cdf(lo);
    }
    if (normal_upper_tail(hi) <= kPmfTailCutoff) {
      pmf.push_back(1.0 - total);
      return pmf;
    }
    pmf.push_back(p);
    total += p;
  }
}

struct PairPointsEstimate {
  double points_a = 0.0;
  double points_b = 0.0;
  double win_rate_a = 0.0;
  double draw_rate = 0.0;
  double win_rate_b = 0.0;
  double mean_goals_a = 0.0;
  double mean_goals_b = 0.0;
};

/// Win/draw/loss probabilities and expected continuous points of a pairing.
inline PairPointsEstimate exact_pair_points(const ScoreModel& model) {
  model.validate();
  const auto pa = exact_pair_distribution(model.mean_a, model.sigma);
  const auto pb = exact_pair_distribution(model.mean_b, model.sigma);

  auto prob = [](const std::vector<double>& p, std::size_t k) {
    return k < p.size() ? p[k] : 0.0;
  };
  PairPointsEstimate e;
  double cdf_a = 0.0, cdf_b = 0.0;  // P(X < k)
  const std::size_t kmax = std::max(pa.size(), pb.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    const double xa = prob(pa, k), xb = prob(pb, k);
    e.win_rate_a += xa * cdf_b;
    e.win_rate_b += xb * cdf_a;
    e.draw_rate += xa * xb;
    e.mean_goals_a += static_cast<double>(k) * xa;
    e.mean_goals_b += static_cast<double>(k) * xb;
    cdf_a += xa;
    cdf_b += xb;
  }
  e.points_a = 3.0 * e.win_rate_a + e.draw_rate;
  e.points_b = 3.0 * e.win_rate_b + e.draw_rate;
  return e;
}

/// Monte Carlo estimate of a pairing plus standard errors of both sides'
/// mean per-game points.
struct MonteCarloEstimate {
  PairPointsEstimate estimate;
  double points_se_a = 0.0;
  double points_se_b = 0.0;
};

inline MonteCarloEstimate estimate_from_aggregate(const PairAggregate& agg) {
  if (!agg.counts_known) {
    throw Error(ErrorCode::CountsRequired,
                fmt::format("pair ({}, {}) has averages only", agg.a, agg.b));
  }
  if (agg.n_games <= 0) {
    throw Error(ErrorCode::EmptyPair,
                fmt::format("pair ({}, {}) has no games", agg.a, agg.b));
  }
  const auto n = static_cast<double>(agg.n_games);
  MonteCarloEstimate mc;
  auto& e = mc.estimate;
  e.win_rate_a = static_cast<double>(agg.wins_a) / n;
  e.draw_rate = static_cast<double>(agg.draws) / n;
  e.win_rate_b = static_cast<double>(agg.wins_b) / n;
  e.points_a = static_cast<double>(3 * agg.wins_a + agg.draws) / n;
  e.points_b = static_cast<double>(3 * agg.wins_b + agg.draws) / n;
  e.mean_goals_a = agg.avg_goals_a;
  e.mean_goals_b = agg.avg_goals_b;

  auto se = [&](std::int64_t wins, double mean_points) {
    if (agg.n_games < 2) return 0.0;
    const double second = static_cast<double>(9 * wins + agg.draws) / n;
    const double var = std::max(0.0, second - mean_points * mean_points) *
                       n / (n - 1.0);
    return std::sqrt(var / n);
  };
  mc.points_se_a = se(agg.wins_a, e.points_a);
  mc.points_se_b = se(agg.wins_b, e.points_b);
  return mc;
}

// ---------------------------------------------------------------------------
// Closed-form bounds on a team's continuous points per contest kind.

enum class Contest { EqualStrength, Stronger, Weaker };

inline std::string_view symbol(Contest c) {
  switch (c) {
    case Contest::EqualStrength: return "⇔";
    case Contest::Stronger: return "⇒";
    case Contest::Weaker: return "⇐";
  }
  return "?";
}

inline std::vector<Contest> parse_scenario(std::string_view text) {
  std::vector<Contest> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok == "eq" || tok == "<=>" || tok == "⇔") {
      out.push_back(Contest::EqualStrength);
    } else if (tok == "win" || tok == "=>" || tok == "⇒") {
      out.push_back(Contest::Stronger);
    } else if (tok == "loss" || tok == "<=" || tok == "⇐") {
      out.push_back(Contest::Weaker);
    } else {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("unknown contest '{}' (use eq|win|loss)", tok));
    }
    pos = end + 1;
  }
  return out;
}

struct ScenarioBound {
  std::vector<Contest> scenario;
  double lower = 0.0;
  double upper = 0.0;
};

/// Per contest: equal [1.0, 1.5], stronger [1.5, 3.0], weaker [0.0, 1.5];
/// a sequence of contests sums elementwise.
inline ScenarioBound scenario_bounds(std::span<const Contest> scenario) {
  if (scenario.empty()) {
    throw Error(ErrorCode::InvalidValue, "scenario must not be empty");
  }
  ScenarioBound b;
  b.scenario.assign(scenario.begin(), scenario.end());
  for (Contest c : scenario) {
    switch (c) {
      case Contest::EqualStrength: b.lower += 1.0; b.upper += 1.5; break;
      case Contest::Stronger: b.lower += 1.5; b.upper += 3.0; break;
      case Contest::Weaker: b.lower += 0.0; b.upper += 1.5; break;
    }
  }
  return b;
}

inline ScenarioBound scenario_bounds(std::initializer_list<Contest> scenario) {
  return scenario_bounds(std::span<const Contest>(scenario.begin(),
                                                  scenario.size()));
}

// ---------------------------------------------------------------------------

/// One q value: an equal pairing (q, q) and an asymmetric pairing (q, 0),
/// each simulated and solved exactly.
struct BiasRow {
  double q = 0.0;
  MonteCarloEstimate equal_mc;
  PairPointsEstimate equal_exact;
  MonteCarloEstimate asym_mc;
  PairPointsEstimate asym_exact;
};

/// Row i simulates its equal pairing on stream 2i and its asymmetric pairing
/// on stream 2i + 1.
inline std::vector<BiasRow> bias_table(std::span<const double> q_values,
                                       const SimConfig& cfg) {
  cfg.validate();
  if (q_values.empty()) {
    throw Error(ErrorCode::InvalidValue, "q list must not be empty");
  }
  std::vector<BiasRow> rows(q_values.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].q = q_values[i];
    ScoreModel{q_values[i], q_values[i], cfg.sigma}.validate();
  }
  detail::parallel_for(2 * rows.size(), cfg.threads, [&](std::size_t task) {
    auto& row = rows[task / 2];
    const bool equal = task % 2 == 0;
    const ScoreModel model{row.q, equal ? row.q : 0.0, cfg.sigma};
    auto mc = estimate_from_aggregate(simulate_pair(model, cfg, task));
    auto exact = exact_pair_points(model);
    if (equal) {
      row.equal_mc = mc;
      row.equal_exact = exact;
    } else {
      row.asym_mc = mc;
      row.asym_exact = exact;
    }
  });
  return rows;
}

/// One score model per unordered pair of an ordered team set.
class PairModelSet {
 public:
  PairModelSet() = default;
  explicit PairModelSet(std::vector<TeamId> teams)
      : skeleton_(teams), teams_(std::move(teams)) {}

  const std::vector<TeamId>& teams() const noexcept { return teams_; }

  void set(const TeamId& a, const TeamId& b, const ScoreModel& model) {
    model.validate();
    auto i = skeleton_.index_of(a), j = skeleton_.index_of(b);
    if (i == j) {
      throw Error(ErrorCode::SelfPair,
                  fmt::format("team '{}' cannot play itself", a));
    }
    if (i < j) {
      models_[{i, j}] = model;
    } else {
      models_[{j, i}] = model.swapped();
    }
  }

  std::optional<ScoreModel> find(const TeamId& a, const TeamId& b) const {
    auto i = skeleton_.index_of(a), j = skeleton_.index_of(b);
    auto it = models_.find(i < j ? std::pair{i, j} : std::pair{j, i});
    if (it == models_.end()) return std::nullopt;
    return i < j ? it->second : it->second.swapped();
  }

  std::vector<std::pair<TeamId, TeamId>> missing_pairs() const {
    std::vector<std::pair<TeamId, TeamId>> out;
    for (std::size_t i = 0; i < teams_.size(); ++i) {
      for (std::size_t j = i + 1; j < teams_.size(); ++j) {
        if (!models_.contains({i, j})) out.emplace_back(teams_[i], teams_[j]);
      }
    }
    return out;
  }

 private:
  ScoreMatrix skeleton_;  // team index lookup
  std::vector<TeamId> teams_;
  std::map<std::pair<std::size_t, std::size_t>, ScoreModel> models_;
};

/// Simulates every pairing; pair k in canonical (i < j) order uses stream k,
/// so the result is independent of thread count and evaluation order.
inline ScoreMatrix simulate_round_robin(const PairModelSet& models,
                                        const SimConfig& cfg) {
  cfg.validate();
  auto missing = models.missing_pairs();
  if (!missing.empty()) {
    std::string list;
    for (const auto& [a, b] : missing) {
      if (!list.empty()) list += ", ";
      list += fmt::format("({}, {})", a, b);
    }
    throw Error(ErrorCode::IncompleteModel,
                fmt::format("no score model for {} pair(s): {}",
                            missing.size(), list));
  }
  const auto& teams = models.teams();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    for (std::size_t j = i + 1; j < teams.size(); ++j) pairs.emplace_back(i, j);
  }
  std::vector<PairAggregate> results(pairs.size());
  detail::parallel_for(pairs.size(), cfg.threads, [&](std::size_t k) {
    const auto& a = teams[pairs[k].first];
    const auto& b = teams[pairs[k].second];
    results[k] = simulate_pair(*models.find(a, b), cfg, k, a, b);
  });
  ScoreMatrix matrix(teams);
  for (auto& agg : results) matrix.set_pair(std::move(agg));
  return matrix;
}

}  // namespace leaguelab
