#include "modrecon/pipeline.hpp"

#include <chrono>

namespace modrecon {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

double normalized_error(const Vec& estimate, const Vec& truth) {
  if (estimate.size() != truth.size())
    throw ShapeError("normalized_error: length mismatch");
  const double denom = truth.norm();
  if (denom == 0.0) return estimate.norm() == 0.0 ? 0.0 : 1.0;
  return (estimate - truth).norm() / denom;
}

PipelineReport rqm(const BitMeasurements& y, const ModelConfig& config,
                   const BlockDiagStack& D, const SensingMatrix& B,
                   const RqmOptions& options,
                   const std::optional<GroundTruth>& truth) {
  config.validate();
  if (y.p != config.p() || y.k != config.k)
    throw ShapeError("rqm: measurement layout does not match config");
  if (options.variant == RecoveryVariant::multishot &&
      D.kind != BlockStackKind::d_geometric)
    throw DomainError("rqm: multishot variant needs a geometric D");

  PipelineReport report;
  auto t0 = std::chrono::steady_clock::now();
  report.u_hat =
      hm_dequantize(y, config.delta, options.point_rule, config.seed);
  report.seconds_dequant = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (options.variant == RecoveryVariant::multishot) {
    MultishotResult ms =
        recover_z_multishot(report.u_hat, D, config, options.grid);
    report.z_hat = std::move(ms.z_hat);
    report.multishot_failed = std::move(ms.failed);
  } else {
    MfOptions mf;
    mf.grid = options.grid;
    mf.variant = options.variant == RecoveryVariant::mf_complex
                     ? MfVariant::complex_exp
                     : MfVariant::real_sine;
    mf.refine = options.refine;
    mf.refine_factor = options.refine_factor;
    report.z_hat = recover_z(report.u_hat, D, config, mf);
  }
  report.seconds_modrec = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  if (config.sparsity > 0) {
    const CosampResult cs =
        cosamp(report.z_hat, B, config.sparsity, options.cosamp);
    report.x_hat = cs.x_hat;
    report.cosamp_iterations = cs.iterations;
    report.cosamp_fallback = cs.regularized_fallback;
  } else {
    report.x_hat = report.z_hat;
  }
  report.seconds_sparse = seconds_since(t0);

  if (truth) {
    report.err_u = normalized_error(report.u_hat, truth->u);
    report.err_z = normalized_error(report.z_hat, truth->z);
    report.err_x = normalized_error(report.x_hat, truth->x);
  }
  return report;
}

const char* to_string(RecoveryVariant variant) {
  switch (variant) {
    case RecoveryVariant::mf_complex: return "complex";
    case RecoveryVariant::mf_sine: return "sine";
    case RecoveryVariant::multishot: return "multishot";
  }
  return "unknown";
}

RecoveryVariant recovery_variant_from_string(const std::string& s) {
  if (s == "complex") return RecoveryVariant::mf_complex;
  if (s == "sine") return RecoveryVariant::mf_sine;
  if (s == "multishot") return RecoveryVariant::multishot;
  throw DomainError("unknown recovery variant: " + s);
}

}  // namespace modrecon
