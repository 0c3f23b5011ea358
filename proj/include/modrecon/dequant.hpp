#ifndef MODRECON_DEQUANT_HPP
#define MODRECON_DEQUANT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "modrecon/types.hpp"

namespace modrecon {

// The interval [lo, hi) of width delta/k a scalar's bit pattern pins down.
// bin_index counts the 2k equal-width bins tiling [0, 2*delta]: the interval
// is exactly [bin_index, bin_index+1] * delta/k, which gives tests an exact
// rational handle on the partition.
struct DecodedInterval {
  double lo = 0.0;
  double hi = 0.0;
  Index bin_index = 0;                // in [0, 2k)
  std::optional<Index> j_star;        // first flip index, absent if no flip
  std::uint8_t first_bit = 0;
};

// Decodes one scalar's k adaptive looks. Only the first flip counts; later
// bits are ignored, matching the min in the decoding rule. The no-flip
// patterns map to the two edge bins [0, delta/k) and [(2k-1)delta/k, 2delta],
// which complete the equal-width partition.
DecodedInterval decode_interval(const std::vector<std::uint8_t>& bits,
                                double delta, Index k);

enum class PointRule { random, midpoint };

// Stage 1: per scalar, decode the interval and pick the estimate, either a
// seeded uniform draw from the interval (the default; removes bias) or its
// midpoint (deterministic, halves the worst-case error). Handles both
// layouts: non-adaptive looks are reduced to the branch matching the first
// bit. Guarantees |u_hat[i] - u[i]| < delta/k for the true u.
Vec hm_dequantize(const BitMeasurements& y, double delta, PointRule rule,
                  std::uint64_t seed);

// Smallest k with interval width delta/k <= epsilon*delta: ceil(1/epsilon).
Index required_k(double epsilon);

// The k adaptive-equivalent looks of scalar i, extracted from either layout.
std::vector<std::uint8_t> scalar_bits(const BitMeasurements& y, Index i);

const char* to_string(PointRule rule);
PointRule point_rule_from_string(const std::string& s);

}  // namespace modrecon

#endif
