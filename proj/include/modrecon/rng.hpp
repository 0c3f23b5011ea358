#ifndef MODRECON_RNG_HPP
#define MODRECON_RNG_HPP

#include <cstdint>

#include "modrecon/errors.hpp"

namespace modrecon {

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, stream_index), so per-scalar loops can run in any order or on any
// number of threads and still produce bit-identical results.

namespace detail {

inline std::uint64_t split_mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t stream_index) {
  return split_mix64(split_mix64(seed) ^
                     split_mix64(stream_index ^ 0xd1b54a32d192ed03ULL));
}

}  // namespace detail

// Disjoint stream namespaces. Each consumer hashes its domain tag into the
// stream index so draws never collide across subsystems.
enum class StreamDomain : std::uint64_t {
  d_gains = 1,
  b_rows = 2,
  b_signs = 3,
  b_dense = 4,
  dequant = 5,
  harness_signal = 6,
  harness_image = 7,
  bench_trial = 8,
  test = 9,
};

inline std::uint64_t stream_of(StreamDomain domain, std::uint64_t index) {
  return (static_cast<std::uint64_t>(domain) << 56) ^ index;
}

// Uniform double in [lo, hi); bit-reproducible given (seed, stream_index).
// Interior draws never hit lo exactly when lo < hi. lo == hi returns lo.
inline double seeded_uniform(std::uint64_t seed, std::uint64_t stream_index,
                             double lo, double hi) {
  if (lo > hi) throw DomainError("seeded_uniform: lo > hi");
  const std::uint64_t word = detail::mix_key(seed, stream_index);
  const double u01 =
      (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;  // (0,1)
  return lo + (hi - lo) * u01;
}

// Standard normal via Box-Muller on two sub-draws of the same stream.
double seeded_normal(std::uint64_t seed, std::uint64_t stream_index);

// Derives a child seed, used to give every bench trial its own seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return detail::mix_key(seed, salt ^ 0xa0761d6478bd642fULL);
}

}  // namespace modrecon

#endif
