#ifndef MODRECON_PIPELINE_HPP
#define MODRECON_PIPELINE_HPP

#include <optional>

#include "modrecon/dequant.hpp"
#include "modrecon/modrec.hpp"
#include "modrecon/sparse.hpp"

namespace modrecon {

enum class RecoveryVariant { mf_complex, mf_sine, multishot };

struct RqmOptions {
  RecoveryVariant variant = RecoveryVariant::mf_complex;
  PointRule point_rule = PointRule::random;
  FreqGrid grid;
  bool refine = false;
  Index refine_factor = 32;
  CosampOptions cosamp;
};

// Oracle-side truth, used only to fill the report's error fields; the
// reconstruction path never reads it.
struct GroundTruth {
  Vec x;
  Vec z;
  Vec u;
};

struct PipelineReport {
  Vec u_hat;
  Vec z_hat;
  Vec x_hat;
  // ||estimate - truth||_2 / ||truth||_2, present iff truth was supplied.
  std::optional<double> err_u;
  std::optional<double> err_z;
  std::optional<double> err_x;
  std::vector<std::uint8_t> multishot_failed;  // empty unless multishot ran
  double seconds_dequant = 0.0;
  double seconds_modrec = 0.0;
  double seconds_sparse = 0.0;
  Index cosamp_iterations = 0;
  bool cosamp_fallback = false;
};

// Full three-stage inversion: dequantize, unwrap, then CoSaMP when the
// config carries a sparsity prior (s > 0); with s = 0 the stage-2 estimate
// is the answer.
PipelineReport rqm(const BitMeasurements& y, const ModelConfig& config,
                   const BlockDiagStack& D, const SensingMatrix& B,
                   const RqmOptions& options,
                   const std::optional<GroundTruth>& truth = std::nullopt);

double normalized_error(const Vec& estimate, const Vec& truth);

const char* to_string(RecoveryVariant variant);
RecoveryVariant recovery_variant_from_string(const std::string& s);

}  // namespace modrecon

#endif
