#ifndef MODRECON_FORWARD_HPP
#define MODRECON_FORWARD_HPP

#include <vector>

#include "modrecon/sensing.hpp"
#include "modrecon/types.hpp"

namespace modrecon {

// Elementwise v - range*floor(v/range), always in [0, range).
Vec modulo(const Vec& v, double range);

// 1-bit quantizer: bit = 1 iff value > delta. Defined on [0, 2*delta] and
// extended above 2*delta with the same threshold, which is what the
// harmonic-multiplier floor identities require. Negative input is rejected;
// the modulo stage guarantees nonnegativity.
std::uint8_t quantize_scalar(double v, double delta);
BitMeasurements quantize(const Vec& v, double delta);

// Gain sequence c_0..c_{k-1}: c_0 = 1, then k/(k-j) when the first bit was 0
// (strictly increasing, ends at k) or k/(k+j) when it was 1 (strictly
// decreasing, ends at k/(2k-1)).
std::vector<double> harmonic_multipliers(Index k, std::uint8_t first_bit);

// k looks per scalar, gains chosen per scalar from its own first bit.
// Layout block-major: look j of scalar i at bits[j*p + i].
BitMeasurements measure_adaptive(const Vec& u, Index k, double delta);

// 2k-1 looks per scalar covering both gain branches: look 0 is c_0, looks
// 1..k-1 the increasing branch (j ascending), looks k..2k-2 the decreasing
// branch (j ascending).
BitMeasurements measure_nonadaptive(const Vec& u, Index k, double delta);

BitMeasurements measure(const Vec& u, Index k, double delta, MeasureMode mode);

enum class DKind { random, geometric };

// k' diagonal blocks of size q. random: entries seeded-uniform on [-T, T].
// geometric: block r (1-based) constant 2^(9-r), so k' <= 9 keeps gains >= 1.
BlockDiagStack build_D(const ModelConfig& config, DKind kind, double T);

struct ForwardResult {
  BitMeasurements y;
  // Oracle-only intermediates for test harnesses; the inverse pipeline never
  // reads them.
  Vec u;  // mod(D*B*x, R), length p
  Vec z;  // B*x, length q
};

// y = measure(mod(D*B*x, R), k, delta) in the requested mode.
ForwardResult forward_model(const Vec& x, const ModelConfig& config,
                            const BlockDiagStack& D, const SensingMatrix& B,
                            MeasureMode mode);

}  // namespace modrecon

#endif
