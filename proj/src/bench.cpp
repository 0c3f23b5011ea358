#include "modrecon/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "modrecon/rng.hpp"

namespace modrecon {

namespace {

bool is_sparse(Scenario s) {
  return s == Scenario::rqm_sparse || s == Scenario::rqm_multishot_sparse;
}

bool is_multishot(Scenario s) {
  return s == Scenario::rqm_multishot || s == Scenario::rqm_multishot_sparse;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Mat bench_image(const RunConfig& config) {
  if (!config.image.empty()) return load_pgm(config.image);
  return make_test_image(config.image_side,
                         derive_seed(config.seed, 0x1347u));
}

RunConfig resolve_scenario_defaults(const RunConfig& config,
                                    const Mat& image) {
  RunConfig r = config;
  const Index n = image.size();
  if (r.n == 0) r.n = n;
  if (r.n != n)
    throw ShapeError("bench: config n does not match the image pixel count");

  switch (r.scenario) {
    case Scenario::dequant_only:
      r.q = r.n;
      r.k_prime = 1;
      r.b_kind = BKind::identity;
      if (r.delta <= 0.0) r.delta = 128.0;  // 8-bit pixels, 2*delta = 256
      r.input_scale = "raw";
      if (r.grid_lo == r.grid_hi) {
        r.grid_lo = 0.0;
        r.grid_hi = 1.0;
      }
      break;
    case Scenario::rqm:
    case Scenario::rqm_multishot:
      r.q = r.n;
      r.b_kind = BKind::identity;
      r.sparsity = 0;
      r.input_scale = "unit";
      if (r.k_prime == 0) r.k_prime = is_multishot(r.scenario) ? 3 : 4;
      if (r.grid_lo == r.grid_hi) {
        r.grid_lo = 0.0;
        r.grid_hi = 1.0;
      }
      break;
    case Scenario::rqm_sparse:
    case Scenario::rqm_multishot_sparse: {
      if (r.q == 0) r.q = r.n / 2;
      r.b_kind = BKind::subsampled_unitary_times_signs;
      r.input_scale = "unit";
      if (r.k_prime == 0) r.k_prime = is_multishot(r.scenario) ? 3 : 4;
      if (r.sparsity == 0) r.sparsity = std::max<Index>(1, r.n / 40);
      if (r.grid_lo == r.grid_hi) {
        // z = Bx entries concentrate within a few standard deviations of
        // ||x||/sqrt(n); the signal-class norm bound gives the grid extent.
        const double sigma = (image / 255.0).norm() /
                             std::sqrt(static_cast<double>(r.n));
        const double c = 5.0 * sigma;
        r.grid_lo = -c;
        r.grid_hi = c;
      }
      break;
    }
  }
  r.d_kind = is_multishot(r.scenario) ? DKind::geometric : DKind::random;
  r.variant = is_multishot(r.scenario) ? RecoveryVariant::multishot
             : r.variant == RecoveryVariant::mf_sine ? RecoveryVariant::mf_sine
                                                     : RecoveryVariant::mf_complex;
  if (r.delta <= 0.0) {
    if (is_multishot(r.scenario)) {
      // The coarsest look must be wrap-free over the grid with slack for
      // the dequantization error: R(1 - 1/k) >= g_min * width, met for all
      // k >= 3 by R = 1.6 * g_min * width.
      const double g_min = std::ldexp(1.0, static_cast<int>(9 - r.k_prime));
      const double width = r.grid_hi - r.grid_lo;
      r.delta = 0.5 * 1.6 * g_min * width;
    } else {
      r.delta = 0.5;  // R = 1
    }
  }

  // Aliasing guard for the matched filter: random gains in [-T, T] with too
  // wide a grid push correlation sidelobes up.
  if (!is_multishot(r.scenario) && r.scenario != Scenario::dequant_only) {
    const double extent =
        r.t_bound * std::max(std::abs(r.grid_lo), std::abs(r.grid_hi));
    if (extent > 50.0 * 2.0 * r.delta)
      std::cerr << "warning: T*max|grid| = " << extent << " exceeds 50*R = "
                << 50.0 * 2.0 * r.delta
                << "; matched-filter sidelobes may alias\n";
  }
  r.validate();
  return r;
}

BenchRow run_trial(const RunConfig& resolved, const Mat& image, Index k,
                   Index trial, std::uint64_t trial_seed) {
  const auto t0 = std::chrono::steady_clock::now();
  BenchRow row;
  row.scenario = resolved.scenario;
  row.k = k;
  row.k_prime = resolved.k_prime;
  row.trial = trial;
  row.seed = trial_seed;

  ModelConfig config = resolved.model();
  config.k = k;
  config.seed = trial_seed;

  if (resolved.scenario == Scenario::dequant_only) {
    const Vec w = flatten(image);
    const BitMeasurements y =
        measure(w, k, config.delta, resolved.mode);
    const Vec u_hat =
        hm_dequantize(y, config.delta, resolved.point_rule, trial_seed);
    row.err_u = normalized_error(u_hat, w);
  } else {
    const Mat scaled = image / 255.0;
    Vec x;
    if (is_sparse(resolved.scenario)) {
      x = sparsify(scaled, config.sparsity);
    } else {
      x = flatten(scaled);
    }
    const BlockDiagStack D =
        build_D(config, resolved.d_kind, resolved.t_bound);
    const SensingMatrix B = build_B(config, resolved.b_kind);
    const ForwardResult fwd = forward_model(x, config, D, B, resolved.mode);

    RqmOptions options;
    options.variant = resolved.variant;
    options.point_rule = resolved.point_rule;
    options.grid = resolved.grid();
    options.refine = resolved.refine;
    options.refine_factor = resolved.refine_factor;
    GroundTruth truth{x, fwd.z, fwd.u};
    const PipelineReport report =
        rqm(fwd.y, config, D, B, options, truth);
    row.err_u = *report.err_u;
    row.err_z = *report.err_z;
    row.err_x = *report.err_x;
  }
  row.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return row;
}

double primary_error(const BenchRow& row) {
  return row.scenario == Scenario::dequant_only ? row.err_u : row.err_x;
}

BenchOutput bench_sweep(const RunConfig& config) {
  BenchOutput out;
  const Mat image = bench_image(config);
  out.resolved = resolve_scenario_defaults(config, image);
  if (out.resolved.k_sweep.empty())
    throw DomainError("bench: empty k_sweep");

  for (Index k : out.resolved.k_sweep) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (Index trial = 0; trial < out.resolved.trials; ++trial) {
      const std::uint64_t trial_seed = derive_seed(
          derive_seed(out.resolved.seed, static_cast<std::uint64_t>(k)),
          static_cast<std::uint64_t>(trial));
      const BenchRow row =
          run_trial(out.resolved, image, k, trial, trial_seed);
      sum += primary_error(row);
      sum_sq += primary_error(row) * primary_error(row);
      out.rows.push_back(row);
    }
    const double count = static_cast<double>(out.resolved.trials);
    BenchSummary summary;
    summary.k = k;
    summary.mean_err = sum / count;
    summary.std_err =
        count > 1.0
            ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / count) /
                                          (count - 1.0)))
            : 0.0;
    out.summaries.push_back(summary);
  }
  return out;
}

std::string bench_csv(const BenchOutput& output) {
  std::ostringstream csv;
  csv << "scenario,k,k_prime,trial,seed,err_u,err_z,err_x,runtime_s\n";
  for (const BenchRow& row : output.rows) {
    csv << to_string(row.scenario) << ',' << row.k << ',' << row.k_prime
        << ',' << row.trial << ',' << row.seed << ','
        << format_double(row.err_u) << ',' << format_double(row.err_z) << ','
        << format_double(row.err_x) << ',' << format_double(row.runtime_s)
        << '\n';
  }
  for (const BenchSummary& s : output.summaries) {
    csv << to_string(output.resolved.scenario) << ',' << s.k << ','
        << output.resolved.k_prime << ",mean,," << format_double(s.mean_err)
        << ",,,\n";
    csv << to_string(output.resolved.scenario) << ',' << s.k << ','
        << output.resolved.k_prime << ",std,," << format_double(s.std_err)
        << ",,,\n";
  }
  return csv.str();
}

bool csv_equal_ignoring_runtime(const std::string& a, const std::string& b) {
  auto strip = [](const std::string& text) {
    std::ostringstream out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const std::size_t cut = line.rfind(',');
      out << (cut == std::string::npos ? line : line.substr(0, cut)) << '\n';
    }
    return out.str();
  };
  return strip(a) == strip(b);
}

}  // namespace modrecon
