#ifndef MODRECON_BENCH_HPP
#define MODRECON_BENCH_HPP

#include <string>
#include <vector>

#include "modrecon/image.hpp"
#include "modrecon/run_config.hpp"

namespace modrecon {

struct BenchRow {
  Scenario scenario = Scenario::dequant_only;
  Index k = 1;
  Index k_prime = 1;
  Index trial = 0;
  std::uint64_t seed = 0;
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double err_z = std::numeric_limits<double>::quiet_NaN();
  double err_x = std::numeric_limits<double>::quiet_NaN();
  double runtime_s = 0.0;
};

struct BenchSummary {
  Index k = 1;
  double mean_err = 0.0;  // of the scenario's primary error column
  double std_err = 0.0;
};

struct BenchOutput {
  RunConfig resolved;  // defaults filled in; this is what the sidecar stores
  std::vector<BenchRow> rows;
  std::vector<BenchSummary> summaries;
};

// Fills scenario-dependent defaults (delta, grid, q, s, kinds, k') left at
// their sentinel values, given the test image the sweep will run on.
RunConfig resolve_scenario_defaults(const RunConfig& config, const Mat& image);

// The image a config describes: the PGM at config.image, else the seeded
// synthetic scene of side config.image_side.
Mat bench_image(const RunConfig& config);

// One trial of one scenario at a given k; seed controls all randomness.
BenchRow run_trial(const RunConfig& resolved, const Mat& image, Index k,
                   Index trial, std::uint64_t trial_seed);

// The full sweep over config.k_sweep x config.trials. Trial seeds are
// derived from (seed, k, trial), so rows do not depend on sweep order.
BenchOutput bench_sweep(const RunConfig& config);

// Fixed-layout CSV: '.' decimals, LF endings, one data row per trial plus
// mean/std rows per k. Errors print with full precision so re-runs can be
// compared bit-for-bit.
std::string bench_csv(const BenchOutput& output);

// Row-wise equality ignoring the runtime column (wall time is the one
// legitimately non-reproducible field).
bool csv_equal_ignoring_runtime(const std::string& a, const std::string& b);

// The error column a scenario is judged by (err_u for dequant_only, err_x
// otherwise).
double primary_error(const BenchRow& row);

}  // namespace modrecon

#endif
