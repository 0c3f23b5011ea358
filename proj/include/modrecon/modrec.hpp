#ifndef MODRECON_MODREC_HPP
#define MODRECON_MODREC_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "modrecon/types.hpp"

namespace modrecon {

enum class MfVariant { complex_exp, real_sine };

// One scalar's tone-estimation instance: k' unit-magnitude phase samples
// observed at the k' gain values of the scalar's D column. The phase map is
// angle = 2*pi*u_hat/R, which makes exp(i*angle(mod(t*z, R))) equal to
// exp(i*2*pi*t*z/R) for any period R; at R = 2*pi it reduces to exp(i*u_hat).
struct MatchedFilterProblem {
  std::vector<std::complex<double>> phases;  // k' entries, |.| = 1
  std::vector<double> times;                 // k' D gains
  FreqGrid grid;
  MfVariant variant = MfVariant::complex_exp;
  double range = 1.0;  // R

  Index k_prime() const { return static_cast<Index>(times.size()); }
  void validate() const;
};

struct MfOptions {
  FreqGrid grid;
  MfVariant variant = MfVariant::complex_exp;
  // Opt-in coarse-then-fine accelerator; identical to the exhaustive search
  // on noiseless instances only.
  bool refine = false;
  Index refine_factor = 32;
};

// Gathers scalar l's problem: times from the D column, phases from the k'
// strided u_hat entries. l is 0-based.
MatchedFilterProblem build_problem(const Vec& u_hat, const BlockDiagStack& D,
                                   Index l, const ModelConfig& config,
                                   const FreqGrid& grid,
                                   MfVariant variant = MfVariant::complex_exp);

struct MfEstimate {
  double z_hat = 0.0;
  double score = 0.0;  // |<phi, psi>| (complex) or 2|<phi,psi>| - |psi|^2 (sine)
};

// Exhaustive grid search for the best-correlating template; ties go to the
// smallest grid value.
MfEstimate matched_filter(const MatchedFilterProblem& problem,
                          bool refine = false, Index refine_factor = 32);

// Stage 2 over all q scalars (independent, runs in parallel).
Vec recover_z(const Vec& u_hat, const BlockDiagStack& D,
              const ModelConfig& config, const MfOptions& options);

struct MultishotResult {
  Vec z_hat;
  // Per-scalar consistency flags: set when the unwrap chain cannot explain
  // the observed looks (coarsest-look wrap assumption violated or estimate
  // far outside the grid).
  std::vector<std::uint8_t> failed;
};

// Coarse-to-fine unwrapping for geometric gain stacks (largest gain first,
// adjacent ratio 2, all gains positive). The coarsest look must be
// wrap-free over the grid: grid width < R/g_min is required for a unique
// initialization, with slack delta/k for dequantization error.
MultishotResult recover_z_multishot(const Vec& u_hat, const BlockDiagStack& D,
                                    const ModelConfig& config,
                                    const FreqGrid& grid);

const char* to_string(MfVariant variant);

}  // namespace modrecon

#endif
