#pragma once

#include <cstdint>
#include <random>

namespace leaguelab {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream number `stream_index` under `master_seed`.
/// Depends only on the two inputs, never on evaluation order.
constexpr std::uint64_t stream_seed(std::uint64_t master_seed,
                                    std::uint64_t stream_index) noexcept {
  return splitmix64(master_seed ^ splitmix64(stream_index + 1));
}

/// A per-pair Gaussian source.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : engine_(stream_seed(master_seed, stream_index)) {}

  double standard_normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace leaguelab
