#include "modrecon/forward.hpp"

#include <cmath>
#include <sstream>

#include "modrecon/rng.hpp"

namespace modrecon {

Vec modulo(const Vec& v, double range) {
  if (!(range > 0.0)) throw DomainError("modulo: range must be > 0");
  Vec out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double x = v[i];
    if (!std::isfinite(x)) {
      std::ostringstream msg;
      msg << "modulo: non-finite input at index " << i;
      throw DomainError(msg.str());
    }
    double m = x - range * std::floor(x / range);
    // floor rounding can land exactly on range for tiny negative x.
    if (m >= range) m -= range;
    if (m < 0.0) m = 0.0;
    out[i] = m;
  }
  return out;
}

std::uint8_t quantize_scalar(double v, double delta) {
  if (!(delta > 0.0)) throw DomainError("quantize: delta must be > 0");
  if (!(v >= 0.0)) {
    std::ostringstream msg;
    msg << "quantize: negative or non-finite input " << v;
    throw DomainError(msg.str());
  }
  return v > delta ? 1 : 0;
}

BitMeasurements quantize(const Vec& v, double delta) {
  BitMeasurements y;
  y.mode = MeasureMode::adaptive;
  y.k = 1;
  y.p = v.size();
  y.bits.resize(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i)
    y.bits[static_cast<std::size_t>(i)] = quantize_scalar(v[i], delta);
  return y;
}

std::vector<double> harmonic_multipliers(Index k, std::uint8_t first_bit) {
  if (k < 1) throw DomainError("harmonic_multipliers: k must be >= 1");
  std::vector<double> gains(static_cast<std::size_t>(k));
  gains[0] = 1.0;
  const double kd = static_cast<double>(k);
  for (Index j = 1; j < k; ++j)
    gains[static_cast<std::size_t>(j)] =
        first_bit == 0 ? kd / static_cast<double>(k - j)
                       : kd / static_cast<double>(k + j);
  return gains;
}

namespace {

void check_measure_input(const Vec& u, Index k, double delta) {
  if (k < 1) throw DomainError("measure: k must be >= 1");
  if (!(delta > 0.0)) throw DomainError("measure: delta must be > 0");
  for (Index i = 0; i < u.size(); ++i) {
    if (!(u[i] >= 0.0) || u[i] > 2.0 * delta) {
      std::ostringstream msg;
      msg << "measure: u[" << i << "] = " << u[i] << " outside [0, 2*delta]";
      throw DomainError(msg.str());
    }
  }
}

}  // namespace

BitMeasurements measure_adaptive(const Vec& u, Index k, double delta) {
  check_measure_input(u, k, delta);
  const Index p = u.size();
  BitMeasurements y;
  y.mode = MeasureMode::adaptive;
  y.k = k;
  y.p = p;
  y.bits.assign(static_cast<std::size_t>(k * p), 0);
  const double kd = static_cast<double>(k);
  for (Index i = 0; i < p; ++i) {
    const double ui = u[i];
    const std::uint8_t first = ui > delta ? 1 : 0;
    y.bits[static_cast<std::size_t>(i)] = first;
    for (Index j = 1; j < k; ++j) {
      const double c = first == 0 ? kd / static_cast<double>(k - j)
                                  : kd / static_cast<double>(k + j);
      y.bits[static_cast<std::size_t>(j * p + i)] = c * ui > delta ? 1 : 0;
    }
  }
  return y;
}

BitMeasurements measure_nonadaptive(const Vec& u, Index k, double delta) {
  check_measure_input(u, k, delta);
  const Index p = u.size();
  BitMeasurements y;
  y.mode = MeasureMode::nonadaptive;
  y.k = k;
  y.p = p;
  y.bits.assign(static_cast<std::size_t>((2 * k - 1) * p), 0);
  const double kd = static_cast<double>(k);
  for (Index i = 0; i < p; ++i) {
    const double ui = u[i];
    y.bits[static_cast<std::size_t>(i)] = ui > delta ? 1 : 0;
    for (Index j = 1; j < k; ++j) {
      const double up = kd / static_cast<double>(k - j) * ui;
      const double dn = kd / static_cast<double>(k + j) * ui;
      y.bits[static_cast<std::size_t>(j * p + i)] = up > delta ? 1 : 0;
      y.bits[static_cast<std::size_t>((k - 1 + j) * p + i)] =
          dn > delta ? 1 : 0;
    }
  }
  return y;
}

BitMeasurements measure(const Vec& u, Index k, double delta,
                        MeasureMode mode) {
  return mode == MeasureMode::adaptive ? measure_adaptive(u, k, delta)
                                       : measure_nonadaptive(u, k, delta);
}

BlockDiagStack build_D(const ModelConfig& config, DKind kind, double T) {
  config.validate();
  BlockDiagStack D;
  D.num_blocks = config.k_prime;
  D.block_size = config.q;
  D.gains.resize(config.k_prime, config.q);
  if (kind == DKind::random) {
    if (!(T > 0.0)) throw DomainError("build_D: random kind needs T > 0");
    D.kind = BlockStackKind::d_random;
    for (Index r = 0; r < config.k_prime; ++r)
      for (Index i = 0; i < config.q; ++i)
        D.gains(r, i) = seeded_uniform(
            config.seed,
            stream_of(StreamDomain::d_gains,
                      static_cast<std::uint64_t>(r * config.q + i)),
            -T, T);
  } else {
    if (config.k_prime > 9)
      throw DomainError("build_D: geometric kind needs k_prime <= 9");
    D.kind = BlockStackKind::d_geometric;
    for (Index r = 0; r < config.k_prime; ++r)
      D.gains.row(r).setConstant(std::ldexp(1.0, static_cast<int>(8 - r)));
  }
  return D;
}

ForwardResult forward_model(const Vec& x, const ModelConfig& config,
                            const BlockDiagStack& D, const SensingMatrix& B,
                            MeasureMode mode) {
  config.validate();
  if (x.size() != config.n) {
    std::ostringstream msg;
    msg << "forward_model: x has length " << x.size() << ", expected "
        << config.n;
    throw ShapeError(msg.str());
  }
  ForwardResult out;
  out.z = apply_B(B, x);
  out.u = modulo(apply_block_stack(D, out.z), config.range());
  out.y = measure(out.u, config.k, config.delta, mode);
  return out;
}

}  // namespace modrecon
