#pragma once

#include <compare>
#include <cstdint>

namespace grepair {

using Vertex = std::int32_t;

/// 64-bit avalanche mixer (splitmix64 finalizer). Stateless, portable.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent keyed value streams. Values drawn from different streams (or
/// the same stream with different tags) are unrelated for all arguments.
enum class Stream : std::uint64_t {
  VertexRank = 0x72616e6b,
  EdgeWeight = 0x77656967,
  MisCoin = 0x636f696e,
  Sampling = 0x73616d70,
};

/// A vertex rank: uniform value in (0, 1] plus the vertex id as tiebreak.
/// Comparison is lexicographic, so distinct vertices never compare equal.
struct RankPair {
  double value;
  Vertex id;
  friend auto operator<=>(const RankPair&, const RankPair&) = default;
};

/// Deterministic source of per-object random values, keyed by a 64-bit seed,
/// a stream label, and an optional tag (recursion level, round index).
/// All answers are pure functions of (seed, stream, tag, arguments).
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, Stream stream, std::uint64_t tag = 0);

  /// Uniform in [0, 1).
  double unit(std::uint64_t a, std::uint64_t b = 0) const;

  /// Rank of a vertex: value uniform in (0, 1], id as tiebreak.
  RankPair rank(Vertex v) const;

  /// Weight of an undirected edge, uniform in [0, 1). Symmetric in (a, b).
  double edge_weight(Vertex a, Vertex b) const;

  /// Per-vertex coin for one round of a sieving process, uniform in [0, 1).
  double coin(Vertex v) const;

  std::uint64_t raw(std::uint64_t a, std::uint64_t b = 0) const;

 private:
  std::uint64_t key_;
};

/// Minimal deterministic RNG for generators and samplers (xorshift-free,
/// splitmix-based counter mode; stable across platforms and compilers).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x5bf03635d78ad9e3ULL)) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);

  /// Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi);

  /// Uniform in [0, 1).
  double unit();

 private:
  std::uint64_t state_;
};

}  // namespace grepair
