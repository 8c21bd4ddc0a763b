#include "grepair/random.hpp"

#include "grepair/error.hpp"

namespace grepair {

namespace {

constexpr double kUlp53 = 0x1.0p-53;

std::uint64_t pack_edge(Vertex a, Vertex b) {
  if (a > b) {
    Vertex t = a;
    a = b;
    b = t;
  }
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, Stream stream, std::uint64_t tag)
    : key_(mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(stream))) ^ tag)) {}

std::uint64_t RandomSource::raw(std::uint64_t a, std::uint64_t b) const {
  return mix64(mix64(key_ ^ a) ^ b);
}

double RandomSource::unit(std::uint64_t a, std::uint64_t b) const {
  return static_cast<double>(raw(a, b) >> 11) * kUlp53;
}

RankPair RandomSource::rank(Vertex v) const {
  // (0, 1]: shift the 53-bit numerator by one so zero is excluded.
  double value = static_cast<double>((raw(static_cast<std::uint64_t>(v)) >> 11) + 1) * kUlp53;
  return RankPair{value, v};
}

double RandomSource::edge_weight(Vertex a, Vertex b) const {
  return unit(pack_edge(a, b));
}

double RandomSource::coin(Vertex v) const {
  return unit(static_cast<std::uint64_t>(v), 0x6d69732d636f696eULL);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ParameterError("Rng::below requires n > 0");
  // Rejection sampling below the largest multiple of n keeps the draw unbiased.
  std::uint64_t limit = ~0ULL - ~0ULL % n;
  while (true) {
    std::uint64_t x = next();
    if (x < limit) return x % n;
  }
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ParameterError("Rng::range requires lo <= hi");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * kUlp53;
}

}  // namespace grepair
