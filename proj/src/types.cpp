#include "modrecon/types.hpp"

#include <cmath>
#include <sstream>

namespace modrecon {

void ModelConfig::validate() const {
  if (delta <= 0.0) throw DomainError("ModelConfig: delta must be > 0");
  if (k < 1) throw DomainError("ModelConfig: k must be >= 1");
  if (k_prime < 1) throw DomainError("ModelConfig: k_prime must be >= 1");
  if (n < 1) throw DomainError("ModelConfig: n must be >= 1");
  if (q < 1 || q > n) throw ShapeError("ModelConfig: need 1 <= q <= n");
  if (sparsity < 0 || sparsity > n)
    throw DomainError("ModelConfig: need 0 <= sparsity <= n");
}

Index looks_for_mode(MeasureMode mode, Index k) {
  return mode == MeasureMode::adaptive ? k : 2 * k - 1;
}

void BitMeasurements::validate() const {
  if (k < 1) throw DomainError("BitMeasurements: k must be >= 1");
  if (p < 1) throw ShapeError("BitMeasurements: p must be >= 1");
  if (size() != looks() * p) {
    std::ostringstream msg;
    msg << "BitMeasurements: have " << size() << " bits, layout requires "
        << looks() * p << " (" << to_string(mode) << ", k=" << k
        << ", p=" << p << ")";
    throw ShapeError(msg.str());
  }
  for (std::uint8_t b : bits)
    if (b > 1) throw DomainError("BitMeasurements: bits must be 0 or 1");
}

void BlockDiagStack::validate() const {
  if (num_blocks < 1 || block_size < 1)
    throw ShapeError("BlockDiagStack: empty stack");
  if (gains.rows() != num_blocks || gains.cols() != block_size)
    throw ShapeError("BlockDiagStack: gain table shape mismatch");
  if (!gains.allFinite())
    throw DomainError("BlockDiagStack: non-finite gain");
}

Vec apply_block_stack(const BlockDiagStack& stack, const Vec& v) {
  stack.validate();
  if (v.size() != stack.block_size) {
    std::ostringstream msg;
    msg << "apply_block_stack: vector length " << v.size()
        << " != block size " << stack.block_size;
    throw ShapeError(msg.str());
  }
  Vec out(stack.num_blocks * stack.block_size);
  for (Index r = 0; r < stack.num_blocks; ++r)
    out.segment(r * stack.block_size, stack.block_size) =
        stack.gains.row(r).transpose().cwiseProduct(v);
  return out;
}

namespace {

void check_strided(Index length, Index start, Index stride, Index count) {
  if (start < 0 || stride < 1 || count < 1)
    throw DomainError("strided_subvector: need start >= 0, stride >= 1, count >= 1");
  const Index last = start + (count - 1) * stride;
  if (last >= length) {
    std::ostringstream msg;
    msg << "strided_subvector: index " << last << " out of range (length "
        << length << ")";
    throw IndexError(msg.str());
  }
}

}  // namespace

Vec strided_subvector(const Vec& v, Index start, Index stride, Index count) {
  check_strided(v.size(), start, stride, count);
  Vec out(count);
  for (Index i = 0; i < count; ++i) out[i] = v[start + i * stride];
  return out;
}

std::vector<std::uint8_t> strided_subvector(const std::vector<std::uint8_t>& v,
                                            Index start, Index stride,
                                            Index count) {
  check_strided(static_cast<Index>(v.size()), start, stride, count);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        v[static_cast<std::size_t>(start + i * stride)];
  return out;
}

void FreqGrid::validate() const {
  if (!(lo < hi)) throw DomainError("FreqGrid: need lo < hi");
  if (!(resolution > 0.0)) throw DomainError("FreqGrid: resolution must be > 0");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(resolution))
    throw DomainError("FreqGrid: non-finite bound");
}

Index FreqGrid::size() const {
  validate();
  const double steps = (hi - lo) / resolution;
  // Relative slack so an exactly divisible span includes its upper endpoint.
  return static_cast<Index>(std::floor(steps * (1.0 + 1e-12) + 1e-9)) + 1;
}

const char* to_string(MeasureMode mode) {
  return mode == MeasureMode::adaptive ? "adaptive" : "nonadaptive";
}

const char* to_string(BlockStackKind kind) {
  switch (kind) {
    case BlockStackKind::d_random: return "d_random";
    case BlockStackKind::d_geometric: return "d_geometric";
    case BlockStackKind::c_harmonic_adaptive: return "c_harmonic_adaptive";
    case BlockStackKind::c_harmonic_nonadaptive: return "c_harmonic_nonadaptive";
  }
  return "unknown";
}

MeasureMode measure_mode_from_string(const std::string& s) {
  if (s == "adaptive") return MeasureMode::adaptive;
  if (s == "nonadaptive") return MeasureMode::nonadaptive;
  throw DomainError("unknown measurement mode: " + s);
}

}  // namespace modrecon
