#include "modrecon/modrec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "modrecon/parallel.hpp"

namespace modrecon {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Incremental template rotation resynchronizes against a direct exp() every
// this many grid steps to keep accumulated rounding far below score gaps.
constexpr Index kResyncStride = 512;

struct BestPoint {
  Index index = -1;
  double key = -1.0;  // |S|^2 (complex) or objective (sine)
};

void take_better(BestPoint& best, Index j, double key) {
  if (key > best.key) {
    best.key = key;
    best.index = j;
  }
}

// Scans grid indices [j_begin, j_end) for the complex-exponential variant.
// Objective key is |<phi, psi_v>|^2.
BestPoint scan_complex(const MatchedFilterProblem& p, Index j_begin,
                       Index j_end) {
  const Index kp = p.k_prime();
  const double w = kTwoPi / p.range;
  std::vector<double> cre(static_cast<std::size_t>(kp));
  std::vector<double> cim(static_cast<std::size_t>(kp));
  std::vector<double> rot_re(static_cast<std::size_t>(kp));
  std::vector<double> rot_im(static_cast<std::size_t>(kp));
  for (Index r = 0; r < kp; ++r) {
    // Per-step rotation of conj(psi): exp(-i*w*t_r*resolution).
    const double a = -w * p.times[static_cast<std::size_t>(r)] *
                     p.grid.resolution;
    rot_re[static_cast<std::size_t>(r)] = std::cos(a);
    rot_im[static_cast<std::size_t>(r)] = std::sin(a);
  }
  BestPoint best;
  for (Index j = j_begin; j < j_end; ++j) {
    if ((j - j_begin) % kResyncStride == 0) {
      const double v = p.grid.point(j);
      for (Index r = 0; r < kp; ++r) {
        const double a = -w * p.times[static_cast<std::size_t>(r)] * v;
        cre[static_cast<std::size_t>(r)] = std::cos(a);
        cim[static_cast<std::size_t>(r)] = std::sin(a);
      }
    }
    double sre = 0.0;
    double sim = 0.0;
    for (Index r = 0; r < kp; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double pre = p.phases[ri].real();
      const double pim = p.phases[ri].imag();
      sre += pre * cre[ri] - pim * cim[ri];
      sim += pre * cim[ri] + pim * cre[ri];
    }
    take_better(best, j, sre * sre + sim * sim);
    for (Index r = 0; r < kp; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double nre = cre[ri] * rot_re[ri] - cim[ri] * rot_im[ri];
      cim[ri] = cre[ri] * rot_im[ri] + cim[ri] * rot_re[ri];
      cre[ri] = nre;
    }
  }
  return best;
}

// Sine-template variant; objective key is 2|<phi,psi_v>| - |psi_v|^2 with
// phi_r = sin(w*u_hat_r) already baked into p.phases[r].real().
BestPoint scan_sine(const MatchedFilterProblem& p, Index j_begin,
                    Index j_end) {
  const Index kp = p.k_prime();
  const double w = kTwoPi / p.range;
  std::vector<double> ere(static_cast<std::size_t>(kp));
  std::vector<double> eim(static_cast<std::size_t>(kp));
  std::vector<double> rot_re(static_cast<std::size_t>(kp));
  std::vector<double> rot_im(static_cast<std::size_t>(kp));
  for (Index r = 0; r < kp; ++r) {
    const double a = w * p.times[static_cast<std::size_t>(r)] *
                     p.grid.resolution;
    rot_re[static_cast<std::size_t>(r)] = std::cos(a);
    rot_im[static_cast<std::size_t>(r)] = std::sin(a);
  }
  BestPoint best;
  for (Index j = j_begin; j < j_end; ++j) {
    if ((j - j_begin) % kResyncStride == 0) {
      const double v = p.grid.point(j);
      for (Index r = 0; r < kp; ++r) {
        const double a = w * p.times[static_cast<std::size_t>(r)] * v;
        ere[static_cast<std::size_t>(r)] = std::cos(a);
        eim[static_cast<std::size_t>(r)] = std::sin(a);
      }
    }
    double dot = 0.0;
    double norm2 = 0.0;
    for (Index r = 0; r < kp; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double s = eim[ri];  // sin(w*t_r*v)
      dot += p.phases[ri].real() * s;
      norm2 += s * s;
    }
    take_better(best, j, 2.0 * std::abs(dot) - norm2);
    for (Index r = 0; r < kp; ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double nre = ere[ri] * rot_re[ri] - eim[ri] * rot_im[ri];
      eim[ri] = ere[ri] * rot_im[ri] + eim[ri] * rot_re[ri];
      ere[ri] = nre;
    }
  }
  return best;
}

BestPoint scan(const MatchedFilterProblem& p, Index j_begin, Index j_end) {
  return p.variant == MfVariant::complex_exp ? scan_complex(p, j_begin, j_end)
                                             : scan_sine(p, j_begin, j_end);
}

double score_at(const MatchedFilterProblem& p, double v) {
  const double w = kTwoPi / p.range;
  if (p.variant == MfVariant::complex_exp) {
    std::complex<double> s{0.0, 0.0};
    for (Index r = 0; r < p.k_prime(); ++r) {
      const auto ri = static_cast<std::size_t>(r);
      const double a = w * p.times[ri] * v;
      s += p.phases[ri] * std::complex<double>(std::cos(a), -std::sin(a));
    }
    return std::abs(s);
  }
  double dot = 0.0;
  double norm2 = 0.0;
  for (Index r = 0; r < p.k_prime(); ++r) {
    const auto ri = static_cast<std::size_t>(r);
    const double s = std::sin(w * p.times[ri] * v);
    dot += p.phases[ri].real() * s;
    norm2 += s * s;
  }
  return 2.0 * std::abs(dot) - norm2;
}

}  // namespace

void MatchedFilterProblem::validate() const {
  if (times.empty() || times.size() != phases.size())
    throw ShapeError("MatchedFilterProblem: times/phases size mismatch");
  if (!(range > 0.0)) throw DomainError("MatchedFilterProblem: range <= 0");
  grid.validate();
  if (variant == MfVariant::complex_exp)
    for (const auto& ph : phases)
      if (std::abs(std::abs(ph) - 1.0) > 1e-12)
        throw DomainError("MatchedFilterProblem: phase off the unit circle");
}

MatchedFilterProblem build_problem(const Vec& u_hat, const BlockDiagStack& D,
                                   Index l, const ModelConfig& config,
                                   const FreqGrid& grid, MfVariant variant) {
  config.validate();
  if (l < 0 || l >= config.q) {
    std::ostringstream msg;
    msg << "build_problem: scalar index " << l << " out of range (q="
        << config.q << ")";
    throw IndexError(msg.str());
  }
  if (u_hat.size() != config.p())
    throw ShapeError("build_problem: u_hat length != k_prime*q");
  if (D.num_blocks != config.k_prime || D.block_size != config.q)
    throw ShapeError("build_problem: D shape mismatch");
  MatchedFilterProblem p;
  p.grid = grid;
  p.variant = variant;
  p.range = config.range();
  const double w = kTwoPi / p.range;
  p.times.resize(static_cast<std::size_t>(config.k_prime));
  p.phases.resize(static_cast<std::size_t>(config.k_prime));
  for (Index r = 0; r < config.k_prime; ++r) {
    const double uh = u_hat[r * config.q + l];
    p.times[static_cast<std::size_t>(r)] = D.gains(r, l);
    p.phases[static_cast<std::size_t>(r)] =
        variant == MfVariant::complex_exp
            ? std::complex<double>(std::cos(w * uh), std::sin(w * uh))
            : std::complex<double>(std::sin(w * uh), 0.0);
  }
  return p;
}

MfEstimate matched_filter(const MatchedFilterProblem& problem, bool refine,
                          Index refine_factor) {
  problem.validate();
  const Index grid_size = problem.grid.size();
  BestPoint best;
  if (!refine || refine_factor <= 1 || grid_size <= 2 * refine_factor) {
    best = scan(problem, 0, grid_size);
  } else {
    // Coarse pass on a decimated copy of the grid, then a fine pass over the
    // winning window, on the original grid points so results stay aligned.
    MatchedFilterProblem coarse = problem;
    coarse.grid.resolution = problem.grid.resolution *
                             static_cast<double>(refine_factor);
    const Index coarse_size = (grid_size - 1) / refine_factor + 1;
    const BestPoint top = scan(coarse, 0, coarse_size);
    const Index center = top.index * refine_factor;
    const Index lo = std::max<Index>(0, center - refine_factor);
    const Index hi = std::min<Index>(grid_size, center + refine_factor + 1);
    best = scan(problem, lo, hi);
  }
  MfEstimate out;
  out.z_hat = problem.grid.point(best.index);
  out.score = score_at(problem, out.z_hat);
  return out;
}

Vec recover_z(const Vec& u_hat, const BlockDiagStack& D,
              const ModelConfig& config, const MfOptions& options) {
  config.validate();
  options.grid.validate();
  Vec z_hat(config.q);
  parallel_for(config.q, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t l = begin; l < end; ++l) {
      const MatchedFilterProblem p = build_problem(
          u_hat, D, static_cast<Index>(l), config, options.grid,
          options.variant);
      z_hat[static_cast<Index>(l)] =
          matched_filter(p, options.refine, options.refine_factor).z_hat;
    }
  });
  return z_hat;
}

MultishotResult recover_z_multishot(const Vec& u_hat, const BlockDiagStack& D,
                                    const ModelConfig& config,
                                    const FreqGrid& grid) {
  config.validate();
  grid.validate();
  if (D.kind != BlockStackKind::d_geometric)
    throw DomainError("recover_z_multishot: needs a geometric D");
  if (D.num_blocks != config.k_prime || D.block_size != config.q)
    throw ShapeError("recover_z_multishot: D shape mismatch");
  if (u_hat.size() != config.p())
    throw ShapeError("recover_z_multishot: u_hat length != k_prime*q");

  const double R = config.range();
  const Index kp = config.k_prime;
  const double g_min = D.gains(kp - 1, 0);
  const double g_max = D.gains(0, 0);
  // Dequantization error bound, also the slack on the init window.
  const double eps_u = config.delta / static_cast<double>(config.k);
  const double margin = eps_u / g_min;
  const double w_abs_max =
      std::ceil(g_max * grid.max_abs() / R) + 1.0;

  MultishotResult out;
  out.z_hat.resize(config.q);
  out.failed.assign(static_cast<std::size_t>(config.q), 0);

  parallel_for(config.q, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t l = begin; l < end; ++l) {
      const Index li = static_cast<Index>(l);
      bool failed = false;

      // Initialize from the coarsest (smallest-gain) look: the unique wrap
      // count whose estimate lands inside the margined grid window.
      const double u_last = u_hat[(kp - 1) * config.q + li];
      const double w_lo =
          std::ceil((g_min * (grid.lo - margin) - u_last) / R - 1e-12);
      const double w_hi =
          std::floor((g_min * (grid.hi + margin) - u_last) / R + 1e-12);
      double w0;
      if (w_lo > w_hi) {
        failed = true;  // no wrap count reaches the grid window
        w0 = std::round((g_min * 0.5 * (grid.lo + grid.hi) - u_last) / R);
      } else if (w_lo < w_hi) {
        failed = true;  // ambiguous: grid wider than R/g_min allows
        w0 = w_lo;
      } else {
        w0 = w_lo;
      }
      double z = (u_last + w0 * R) / g_min;

      // Walk toward larger gains, re-estimating the wrap count each look.
      for (Index r = kp - 2; r >= 0; --r) {
        const double g = D.gains(r, li);
        const double target = u_hat[r * config.q + li];
        double w = std::round((g * z - target) / R);
        w = std::clamp(w, -w_abs_max, w_abs_max);
        z = (target + w * R) / g;
      }
      // Consistency residual across all looks, measured on the R-circle.
      double resid = 0.0;
      for (Index r = 0; r < kp; ++r) {
        const double d = D.gains(r, li) * z - u_hat[r * config.q + li];
        const double frac = std::abs(d - R * std::round(d / R));
        resid = std::max(resid, frac);
      }
      if (resid > 0.25 * R) failed = true;
      out.z_hat[li] = z;
      out.failed[static_cast<std::size_t>(l)] = failed ? 1 : 0;
    }
  });
  return out;
}

const char* to_string(MfVariant variant) {
  return variant == MfVariant::complex_exp ? "complex" : "sine";
}

}  // namespace modrecon
