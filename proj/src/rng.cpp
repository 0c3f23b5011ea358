#include "modrecon/rng.hpp"

#include <cmath>
#include <numbers>

namespace modrecon {

double seeded_normal(std::uint64_t seed, std::uint64_t stream_index) {
  // Two decorrelated sub-draws from the same logical stream.
  const double u1 = seeded_uniform(seed, stream_index ^ 0x9e3779b97f4a7c15ULL,
                                   0.0, 1.0);
  const double u2 = seeded_uniform(seed, stream_index ^ 0xc2b2ae3d27d4eb4fULL,
                                   0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace modrecon
