#pragma once

#include <cstdint>
#include <random>

namespace congestcut {

// splitmix64 step; the standard finalizer.
inline std::uint64_t hash64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return hash64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

// Stream for one (seed, node, round) triple: reproducible and independent
// across nodes, as the per-node coins of the simulator require.
inline std::uint64_t node_round_word(std::uint64_t seed, std::uint64_t node,
                                     std::uint64_t round, std::uint64_t salt = 0) {
  return hash64(hash_combine(hash_combine(seed, node), hash_combine(round, salt)));
}

// Deterministic engine for generators and sampling.
inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(hash64(seed)); }

// Uniform value in [1, c].
inline int uniform_color(std::uint64_t word, int c) {
  return 1 + static_cast<int>(word % static_cast<std::uint64_t>(c));
}

}  // namespace congestcut
