#include "modrecon/sensing.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "modrecon/rng.hpp"

namespace modrecon {

namespace {

// FFTW planning is not thread-safe; execution through the new-array API is.
// Plans are cached per transform length and created with FFTW_UNALIGNED so
// they accept arbitrary buffers.
class DhtPlans {
 public:
  static DhtPlans& instance() {
    static DhtPlans plans;
    return plans;
  }

  void execute(Index n, double* in, double* out) {
    fftw_plan plan = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(n);
      if (it == cache_.end()) {
        std::vector<double> scratch(static_cast<std::size_t>(n), 0.0);
        plan = fftw_plan_r2r_1d(static_cast<int>(n), scratch.data(),
                                scratch.data(), FFTW_DHT,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache_.emplace(n, plan);
      } else {
        plan = it->second;
      }
    }
    fftw_execute_r2r(plan, in, out);
  }

 private:
  DhtPlans() = default;
  std::mutex mutex_;
  std::unordered_map<Index, fftw_plan> cache_;
};

Vec dht_raw(const Vec& x) {
  Vec in = x;
  Vec out(x.size());
  DhtPlans::instance().execute(x.size(), in.data(), out.data());
  return out;
}

}  // namespace

Vec dht_orthonormal(const Vec& x) {
  if (x.size() < 1) throw ShapeError("dht: empty input");
  return dht_raw(x) / std::sqrt(static_cast<double>(x.size()));
}

void SensingMatrix::validate() const {
  if (rows < 1 || cols < 1) throw ShapeError("SensingMatrix: empty");
  switch (kind) {
    case BKind::identity:
      if (rows != cols) throw ShapeError("SensingMatrix: identity needs q = n");
      break;
    case BKind::subsampled_unitary_times_signs: {
      if (rows > cols) throw ShapeError("SensingMatrix: need q <= n");
      if (static_cast<Index>(selected_rows.size()) != rows ||
          signs.size() != cols)
        throw ShapeError("SensingMatrix: selection data shape mismatch");
      std::vector<std::uint8_t> seen(static_cast<std::size_t>(cols), 0);
      for (Index r : selected_rows) {
        if (r < 0 || r >= cols || seen[static_cast<std::size_t>(r)])
          throw DomainError("SensingMatrix: selected rows must be distinct");
        seen[static_cast<std::size_t>(r)] = 1;
      }
      for (Index i = 0; i < cols; ++i)
        if (signs[i] != 1.0 && signs[i] != -1.0)
          throw DomainError("SensingMatrix: signs must be +-1");
      break;
    }
    case BKind::dense_gaussian:
      if (dense.rows() != rows || dense.cols() != cols)
        throw ShapeError("SensingMatrix: dense payload shape mismatch");
      break;
  }
}

SensingMatrix build_B(const ModelConfig& config, BKind kind) {
  config.validate();
  SensingMatrix B;
  B.kind = kind;
  B.rows = config.q;
  B.cols = config.n;
  switch (kind) {
    case BKind::identity:
      if (config.q != config.n)
        throw ShapeError("build_B: identity needs q = n");
      break;
    case BKind::subsampled_unitary_times_signs: {
      // Partial Fisher-Yates: the first q entries of a seeded permutation.
      std::vector<Index> perm(static_cast<std::size_t>(config.n));
      std::iota(perm.begin(), perm.end(), Index{0});
      for (Index i = 0; i < config.q; ++i) {
        const double u = seeded_uniform(
            config.seed,
            stream_of(StreamDomain::b_rows, static_cast<std::uint64_t>(i)),
            0.0, 1.0);
        const Index j =
            i + static_cast<Index>(u * static_cast<double>(config.n - i));
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(j)]);
      }
      B.selected_rows.assign(perm.begin(), perm.begin() + config.q);
      B.signs.resize(config.n);
      for (Index i = 0; i < config.n; ++i)
        B.signs[i] = seeded_uniform(config.seed,
                                    stream_of(StreamDomain::b_signs,
                                              static_cast<std::uint64_t>(i)),
                                    0.0, 1.0) < 0.5
                         ? -1.0
                         : 1.0;
      break;
    }
    case BKind::dense_gaussian: {
      B.dense.resize(config.q, config.n);
      const double scale = 1.0 / std::sqrt(static_cast<double>(config.q));
      for (Index r = 0; r < config.q; ++r)
        for (Index c = 0; c < config.n; ++c)
          B.dense(r, c) =
              scale * seeded_normal(config.seed,
                                    stream_of(StreamDomain::b_dense,
                                              static_cast<std::uint64_t>(
                                                  r * config.n + c)));
      break;
    }
  }
  B.validate();
  return B;
}

Vec apply_B(const SensingMatrix& B, const Vec& x) {
  if (x.size() != B.cols) {
    std::ostringstream msg;
    msg << "apply_B: x has length " << x.size() << ", expected " << B.cols;
    throw ShapeError(msg.str());
  }
  switch (B.kind) {
    case BKind::identity:
      return x;
    case BKind::subsampled_unitary_times_signs: {
      const Vec h = dht_raw(B.signs.cwiseProduct(x));
      const double scale = 1.0 / std::sqrt(static_cast<double>(B.cols));
      Vec out(B.rows);
      for (Index i = 0; i < B.rows; ++i)
        out[i] = scale * h[B.selected_rows[static_cast<std::size_t>(i)]];
      return out;
    }
    case BKind::dense_gaussian:
      return B.dense * x;
  }
  throw DomainError("apply_B: unknown kind");
}

Vec apply_B_adjoint(const SensingMatrix& B, const Vec& y) {
  if (y.size() != B.rows) {
    std::ostringstream msg;
    msg << "apply_B_adjoint: y has length " << y.size() << ", expected "
        << B.rows;
    throw ShapeError(msg.str());
  }
  switch (B.kind) {
    case BKind::identity:
      return y;
    case BKind::subsampled_unitary_times_signs: {
      Vec scattered = Vec::Zero(B.cols);
      for (Index i = 0; i < B.rows; ++i)
        scattered[B.selected_rows[static_cast<std::size_t>(i)]] = y[i];
      // The Hartley matrix is symmetric, so the adjoint reuses the forward
      // transform.
      const Vec h = dht_raw(scattered);
      const double scale = 1.0 / std::sqrt(static_cast<double>(B.cols));
      return scale * B.signs.cwiseProduct(h);
    }
    case BKind::dense_gaussian:
      return B.dense.transpose() * y;
  }
  throw DomainError("apply_B_adjoint: unknown kind");
}

const char* to_string(BKind kind) {
  switch (kind) {
    case BKind::identity: return "identity";
    case BKind::subsampled_unitary_times_signs:
      return "subsampled_unitary_times_signs";
    case BKind::dense_gaussian: return "dense_gaussian";
  }
  return "unknown";
}

BKind b_kind_from_string(const std::string& s) {
  if (s == "identity") return BKind::identity;
  if (s == "subsampled_unitary_times_signs")
    return BKind::subsampled_unitary_times_signs;
  if (s == "dense_gaussian") return BKind::dense_gaussian;
  throw DomainError("unknown B kind: " + s);
}

}  // namespace modrecon
