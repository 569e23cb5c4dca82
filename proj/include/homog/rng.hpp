#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace homog {

/// Seed coordinates of one stochastic sample. macro_seed indexes the slow
/// (macroscopic) realization, micro_seed the fast (RVE / oscillatory) one,
/// and stream_id namespaces a whole experiment so that reruns with a
/// different base seed are decorrelated wholesale.
struct SeedPair {
  std::uint64_t macro_seed = 0;
  std::uint64_t micro_seed = 0;
  std::uint64_t stream_id = 0;
};

namespace rng {

// Counter-based generation: every variate is a pure function of
// (stream_id, domain tag, seed, draw index). No generator state is carried,
// so results are independent of thread count and evaluation order, and the
// same (level, seed) pair always reproduces the same realization. The mixer
// is the splitmix64 finalizer applied as a short sponge over the key words.

inline constexpr std::uint64_t kTagMacro = 0x6d6163726f5f5f31ull;
inline constexpr std::uint64_t kTagMicro = 0x6d6963726f5f5f32ull;
inline constexpr std::uint64_t kTagSetup = 0x73657475705f5f33ull;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t draw_bits(std::uint64_t stream_id, std::uint64_t tag,
                               std::uint64_t seed, std::uint64_t index) {
  std::uint64_t h = mix64(stream_id ^ 0x8000000080000001ull);
  h = mix64(h ^ tag);
  h = mix64(h ^ seed);
  h = mix64(h ^ index);
  return h;
}

// Uniform on [0, 1), 53 mantissa bits.
inline double uniform01(std::uint64_t stream_id, std::uint64_t tag,
                        std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(draw_bits(stream_id, tag, seed, index) >> 11) *
         0x1.0p-53;
}

// Standard normal via Box-Muller; draw k consumes uniform indices 2k, 2k+1.
inline double gaussian(std::uint64_t stream_id, std::uint64_t tag,
                       std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t b1 = draw_bits(stream_id, tag, seed, 2 * index);
  const std::uint64_t b2 = draw_bits(stream_id, tag, seed, 2 * index + 1);
  // Shift into (0, 1] so the log argument never vanishes.
  const double u1 = (static_cast<double>(b1 >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline double macro_uniform(const SeedPair& s, std::uint64_t index) {
  return uniform01(s.stream_id, kTagMacro, s.macro_seed, index);
}
inline double macro_gaussian(const SeedPair& s, std::uint64_t index) {
  return gaussian(s.stream_id, kTagMacro, s.macro_seed, index);
}
inline double micro_uniform(const SeedPair& s, std::uint64_t index) {
  return uniform01(s.stream_id, kTagMicro, s.micro_seed, index);
}
inline double micro_gaussian(const SeedPair& s, std::uint64_t index) {
  return gaussian(s.stream_id, kTagMicro, s.micro_seed, index);
}

// Experiment-setup draws (e.g. fixed random frequencies) depend on the
// stream only, not on any per-sample seed.
inline double setup_uniform(std::uint64_t stream_id, std::uint64_t index) {
  return uniform01(stream_id, kTagSetup, 0, index);
}

}  // namespace rng
}  // namespace homog
