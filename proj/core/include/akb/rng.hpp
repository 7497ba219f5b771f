#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace akb {

/// Mixes a master seed with positional keys (problem index, run index, ...)
/// into an independent stream seed. Pure function of its inputs, so results
/// never depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// 64-bit FNV-1a of `text`; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(std::string_view text);

/// Seeded random stream. Identical seeds give identical draw sequences.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream derived(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    return RngStream(derive_seed(master, keys));
  }

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal.
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace akb
