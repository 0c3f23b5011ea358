#ifndef MODRECON_TYPES_HPP
#define MODRECON_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "modrecon/errors.hpp"

namespace modrecon {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// All scheme parameters. p = k_prime * q always; the modulo period is bound
// to the quantizer reference as range = 2 * delta, which makes the quantizer
// domain [0, 2*delta] cover the modulo output range exactly.
struct ModelConfig {
  Index n = 0;         // signal length
  Index q = 0;         // compressed length (rows of B)
  Index k_prime = 1;   // number of D blocks; p = k_prime * q
  Index k = 1;         // quantized looks per scalar
  double delta = 1.0;  // quantizer reference
  Index sparsity = 0;  // s; 0 means no sparsity prior
  std::uint64_t seed = 0;

  Index p() const { return k_prime * q; }
  double range() const { return 2.0 * delta; }

  // Throws DomainError / ShapeError on violated invariants.
  void validate() const;
};

enum class MeasureMode { adaptive, nonadaptive };

// Looks per scalar actually acquired: k (adaptive) or 2k-1 (non-adaptive).
Index looks_for_mode(MeasureMode mode, Index k);

// Binary observations, one byte per bit in memory, block-major: all of look
// j for every scalar precedes look j+1, so look j of scalar l sits at
// bits[j*p + l].
struct BitMeasurements {
  std::vector<std::uint8_t> bits;
  MeasureMode mode = MeasureMode::adaptive;
  Index k = 1;
  Index p = 0;

  Index size() const { return static_cast<Index>(bits.size()); }
  Index looks() const { return looks_for_mode(mode, k); }
  void validate() const;
};

enum class BlockStackKind {
  d_random,
  d_geometric,
  c_harmonic_adaptive,
  c_harmonic_nonadaptive,
};

// A stack of diagonal blocks stored as a dense gain table: gains(r, i) is
// the diagonal entry of block r at position i. The matrix view is never
// materialized; applying the stack is pure per-scalar scaling.
struct BlockDiagStack {
  Index num_blocks = 0;
  Index block_size = 0;
  Mat gains;  // num_blocks x block_size
  BlockStackKind kind = BlockStackKind::d_random;

  void validate() const;
};

// out[r*block_size + i] = gains(r, i) * v[i].
Vec apply_block_stack(const BlockDiagStack& stack, const Vec& v);

// Entries v[start], v[start+stride], ... (count of them). Indices are
// 0-based; the paper's 1-based strided notation x(i:q:(k-1)q+i) maps to
// start = i-1. Throws IndexError naming the offending position.
Vec strided_subvector(const Vec& v, Index start, Index stride, Index count);
std::vector<std::uint8_t> strided_subvector(const std::vector<std::uint8_t>& v,
                                            Index start, Index stride,
                                            Index count);

// The bounded search set Omega, discretized: points lo, lo+resolution, ...
// up to hi (inclusive up to floating-point slack). Always nonempty.
struct FreqGrid {
  double lo = 0.0;
  double hi = 1.0;
  double resolution = 1e-3;

  void validate() const;
  Index size() const;
  double point(Index i) const { return lo + static_cast<double>(i) * resolution; }
  double max_abs() const { return std::max(std::abs(lo), std::abs(hi)); }
};

const char* to_string(MeasureMode mode);
const char* to_string(BlockStackKind kind);
MeasureMode measure_mode_from_string(const std::string& s);

}  // namespace modrecon

#endif
