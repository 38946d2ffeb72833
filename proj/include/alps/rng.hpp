#pragma once

#include <cstdint>
#include <random>

namespace alps {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based stream splitting.
///
/// The seed of stream `index` under `master` is
///   splitmix64(master ^ splitmix64(index + 1)).
/// It depends only on the pair, so adding replicas never perturbs the
/// streams of replicas that already existed. Streams nest: a replica's
/// seed can itself be used as the master of its sub-streams.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 1));
}

/// Sub-stream purposes within one replica.
enum class Stream : std::uint64_t { Chain = 0, Clock = 1, Reference = 2, Aux = 3 };

inline Engine make_engine(std::uint64_t seed) { return Engine(seed); }

inline Engine make_engine(std::uint64_t master, Stream purpose) {
  return Engine(stream_seed(master, static_cast<std::uint64_t>(purpose)));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform on (0, 1].
inline double uniform01_open_low(Engine& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

inline bool fair_coin(Engine& rng) { return (rng() >> 63) != 0; }

}  // namespace alps
