#ifndef MODRECON_SENSING_HPP
#define MODRECON_SENSING_HPP

#include <cstdint>
#include <vector>

#include "modrecon/types.hpp"

namespace modrecon {

enum class BKind { identity, subsampled_unitary_times_signs, dense_gaussian };

// The q x n compression operator B. The subsampled kind is a real
// orthonormal trigonometric transform (discrete Hartley, rows scaled to unit
// norm) with q distinct seeded rows and a seeded +-1 diagonal applied before
// the transform; both apply directions are matrix-free.
struct SensingMatrix {
  BKind kind = BKind::identity;
  Index rows = 0;  // q
  Index cols = 0;  // n
  std::vector<Index> selected_rows;  // subsampled kind, size q, distinct
  Vec signs;                         // subsampled kind, entries in {-1,+1}
  Mat dense;                         // dense_gaussian kind, q x n

  void validate() const;
};

SensingMatrix build_B(const ModelConfig& config, BKind kind);

Vec apply_B(const SensingMatrix& B, const Vec& x);          // q from n
Vec apply_B_adjoint(const SensingMatrix& B, const Vec& y);  // n from q

const char* to_string(BKind kind);
BKind b_kind_from_string(const std::string& s);

// Orthonormal discrete Hartley transform (its own inverse). Exposed for
// tests; length may be any positive size.
Vec dht_orthonormal(const Vec& x);

}  // namespace modrecon

#endif
