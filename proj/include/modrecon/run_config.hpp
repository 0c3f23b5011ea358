#ifndef MODRECON_RUN_CONFIG_HPP
#define MODRECON_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "modrecon/dequant.hpp"
#include "modrecon/forward.hpp"
#include "modrecon/pipeline.hpp"
#include "modrecon/sensing.hpp"
#include "modrecon/types.hpp"

namespace modrecon {

enum class Scenario {
  dequant_only,
  rqm,
  rqm_multishot,
  rqm_sparse,
  rqm_multishot_sparse,
};

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

// One JSON document drives every command; unknown keys are rejected and the
// fully resolved document (defaults included) is written back as the
// sidecar of every output, so a run can be reproduced from its outputs
// alone.
struct RunConfig {
  // Model.
  Index n = 0;
  Index q = 0;
  Index k = 4;
  Index k_prime = 4;
  double delta = 0.0;  // 0 = pick the scenario default
  Index sparsity = 0;
  std::uint64_t seed = 0;
  bool seed_explicit = false;  // whether the document carried a seed key
  // Stage-1 draw seed; measurement randomness stays keyed by `seed` so a
  // re-dequantization with a fresh seed never changes the recorded model.
  std::uint64_t dequant_seed = 0;

  // Measurement design.
  MeasureMode mode = MeasureMode::adaptive;
  DKind d_kind = DKind::random;
  double t_bound = 10.0;
  BKind b_kind = BKind::identity;

  // Reconstruction.
  PointRule point_rule = PointRule::random;
  RecoveryVariant variant = RecoveryVariant::mf_complex;
  double grid_lo = 0.0;
  double grid_hi = 0.0;  // lo == hi = pick the scenario default
  double grid_resolution = 1e-3;
  bool refine = false;
  Index refine_factor = 32;

  // Input handling: "unit" divides pixels by 255, "raw" keeps them.
  std::string input_scale = "unit";
  Index image_side = 64;  // synthetic image when no path is given
  std::string image;      // optional PGM path

  // Bench.
  Scenario scenario = Scenario::dequant_only;
  std::vector<Index> k_sweep;
  Index trials = 5;

  int threads = 0;

  ModelConfig model() const;
  FreqGrid grid() const;

  void validate() const;
  std::string to_json_string() const;
  static RunConfig from_json_string(const std::string& text);
  static RunConfig load(const std::string& path);
  void save(const std::string& path) const;
};

const char* to_string(DKind kind);
DKind d_kind_from_string(const std::string& s);

}  // namespace modrecon

#endif
