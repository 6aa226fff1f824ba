#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "leaguelab/error.hpp"
#include "leaguelab/model.hpp"

namespace leaguelab {

namespace detail {

inline void require_same_teams(const Ranking& ra, const Ranking& rb) {
  std::vector<TeamId> only_a, only_b;
  for (const auto& t : ra.order()) {
    if (!rb.contains(t)) only_a.push_back(t);
  }
  for (const auto& t : rb.order()) {
    if (!ra.contains(t)) only_b.push_back(t);
  }
  if (only_a.empty() && only_b.empty()) return;
  std::sort(only_a.begin(), only_a.end());
  std::sort(only_b.begin(), only_b.end());
  throw Error(ErrorCode::DomainMismatch,
              fmt::format("rankings cover different teams; only in first: "
                          "[{}]; only in second: [{}]",
                          fmt::join(only_a, ", "), fmt::join(only_b, ", ")));
}

}  // namespace detail

struct RankDelta {
  TeamId team;
  int rank_a = 0;
  int rank_b = 0;
  int abs_diff() const { return std::abs(rank_a - rank_b); }
};

/// Per-team rank differences, listed in the first ranking's order.
inline std::vector<RankDelta> rank_deltas(const Ranking& ra,
                                          const Ranking& rb) {
  detail::require_same_teams(ra, rb);
  std::vector<RankDelta> out;
  out.reserve(ra.size());
  for (const auto& t : ra.order()) {
    out.push_back({t, ra.rank_of(t), rb.rank_of(t)});
  }
  return out;
}

/// Sum over teams of |rank in ra - rank in rb|.
inline int l1_distance(const Ranking& ra, const Ranking& rb) {
  int sum = 0;
  for (const auto& d : rank_deltas(ra, rb)) sum += d.abs_diff();
  return sum;
}

/// L1 distance between `r` and the ranking whose order is `reference`.
inline int chronological_concordance(const Ranking& r,
                                     const std::vector<TeamId>& reference) {
  return l1_distance(r, Ranking(reference));
}

}  // namespace leaguelab
