#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

// Deterministic randomness utilities. All sampling in the library goes
// through these helpers instead of the std <random> distributions because
// distribution implementations differ across standard libraries, and the
// evaluation reports must be byte-identical for a given seed everywhere.

namespace relind::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// FNV-1a. Used to fold stream names into seed material.
inline std::uint64_t hash_bytes(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

// Derives an independent stream keyed by (seed, name, index, purpose).
// Work items seeded this way give the same draws no matter which worker
// thread runs them or in what order.
inline Engine derive(std::uint64_t seed, std::string_view name, std::uint64_t index,
                     std::string_view purpose) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ hash_bytes(name));
  h = splitmix64(h ^ (0x9e3779b97f4a7c15ULL + index));
  h = splitmix64(h ^ hash_bytes(purpose));
  return Engine(h);
}

// Uniform in [0, n) by rejection; no modulo bias, bit-stable everywhere.
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<std::uint64_t>(n);
  std::uint64_t x = eng();
  while (x >= limit) x = eng();
  return static_cast<std::size_t>(x % static_cast<std::uint64_t>(n));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform_real(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform_real(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform_real(eng);
}

// Standard normal via Box-Muller, one value per pair of uniforms.
inline double normal(Engine& eng) {
  double u1 = uniform_real(eng);
  while (u1 <= 0.0) u1 = uniform_real(eng);
  const double u2 = uniform_real(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Fisher-Yates with our own index draws.
template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = uniform_index(eng, i);
    std::swap(v[i - 1], v[j]);
  }
}

// k distinct indices out of [0, n), in draw order.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           Engine& eng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k && i < n; ++i) {
    const std::size_t j = i + uniform_index(eng, n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace relind::rng
