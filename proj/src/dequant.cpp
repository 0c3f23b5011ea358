#include "modrecon/dequant.hpp"

#include <cmath>
#include <sstream>

#include "modrecon/rng.hpp"

namespace modrecon {

DecodedInterval decode_interval(const std::vector<std::uint8_t>& bits,
                                double delta, Index k) {
  if (k < 1) throw DomainError("decode_interval: k must be >= 1");
  if (!(delta > 0.0)) throw DomainError("decode_interval: delta must be > 0");
  if (static_cast<Index>(bits.size()) != k) {
    std::ostringstream msg;
    msg << "decode_interval: got " << bits.size() << " bits, expected k=" << k;
    throw ShapeError(msg.str());
  }
  DecodedInterval out;
  out.first_bit = bits[0];
  const std::uint8_t flip_to = bits[0] == 0 ? 1 : 0;
  for (Index j = 1; j < k; ++j) {
    if (bits[static_cast<std::size_t>(j)] == flip_to) {
      out.j_star = j;
      break;
    }
  }
  if (out.first_bit == 0) {
    out.bin_index = out.j_star ? k - *out.j_star : 0;
  } else {
    out.bin_index = out.j_star ? k + *out.j_star - 1 : 2 * k - 1;
  }
  const double width = delta / static_cast<double>(k);
  out.lo = static_cast<double>(out.bin_index) * width;
  out.hi = static_cast<double>(out.bin_index + 1) * width;
  return out;
}

std::vector<std::uint8_t> scalar_bits(const BitMeasurements& y, Index i) {
  if (i < 0 || i >= y.p) {
    std::ostringstream msg;
    msg << "scalar_bits: index " << i << " out of range (p=" << y.p << ")";
    throw IndexError(msg.str());
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(y.k));
  const std::uint8_t first = y.bits[static_cast<std::size_t>(i)];
  bits[0] = first;
  if (y.mode == MeasureMode::adaptive) {
    for (Index j = 1; j < y.k; ++j)
      bits[static_cast<std::size_t>(j)] =
          y.bits[static_cast<std::size_t>(j * y.p + i)];
  } else {
    // Branch selection: looks 1..k-1 hold the increasing gains, looks
    // k..2k-2 the decreasing ones.
    const Index offset = first == 0 ? 0 : y.k - 1;
    for (Index j = 1; j < y.k; ++j)
      bits[static_cast<std::size_t>(j)] =
          y.bits[static_cast<std::size_t>((offset + j) * y.p + i)];
  }
  return bits;
}

Vec hm_dequantize(const BitMeasurements& y, double delta, PointRule rule,
                  std::uint64_t seed) {
  y.validate();
  if (!(delta > 0.0)) throw DomainError("hm_dequantize: delta must be > 0");
  Vec u_hat(y.p);
  for (Index i = 0; i < y.p; ++i) {
    const DecodedInterval iv = decode_interval(scalar_bits(y, i), delta, y.k);
    u_hat[i] =
        rule == PointRule::midpoint
            ? 0.5 * (iv.lo + iv.hi)
            : seeded_uniform(seed,
                             stream_of(StreamDomain::dequant,
                                       static_cast<std::uint64_t>(i)),
                             iv.lo, iv.hi);
  }
  return u_hat;
}

Index required_k(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw DomainError("required_k: need 0 < epsilon <= 1");
  return static_cast<Index>(std::ceil(1.0 / epsilon));
}

const char* to_string(PointRule rule) {
  return rule == PointRule::random ? "random" : "midpoint";
}

PointRule point_rule_from_string(const std::string& s) {
  if (s == "random") return PointRule::random;
  if (s == "midpoint") return PointRule::midpoint;
  throw DomainError("unknown point rule: " + s);
}

}  // namespace modrecon
