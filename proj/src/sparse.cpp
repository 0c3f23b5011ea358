#include "modrecon/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace modrecon {

namespace {

Vec scatter(const std::vector<Index>& support, const Vec& c, Index n) {
  Vec full = Vec::Zero(n);
  for (std::size_t i = 0; i < support.size(); ++i)
    full[support[i]] = c[static_cast<Index>(i)];
  return full;
}

Vec gather(const std::vector<Index>& support, const Vec& full) {
  Vec c(static_cast<Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    c[static_cast<Index>(i)] = full[support[i]];
  return c;
}

// Indices of the m largest |v| entries, ties resolved toward lower index.
std::vector<Index> top_indices(const Vec& v, Index m) {
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  const Index keep = std::min<Index>(m, v.size());
  std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(),
                    [&v](Index a, Index b) {
                      const double fa = std::abs(v[a]);
                      const double fb = std::abs(v[b]);
                      return fa != fb ? fa > fb : a < b;
                    });
  idx.resize(static_cast<std::size_t>(keep));
  return idx;
}

// CG on (B_S^T B_S + lambda I) c = B_S^T z. lambda = 0 is the plain
// normal-equation solve.
struct CgOutcome {
  Vec c;
  Index iterations = 0;
  bool converged = false;
};

CgOutcome cg_normal(const SensingMatrix& B, const std::vector<Index>& support,
                    const Vec& z_hat, double lambda) {
  const Index m = static_cast<Index>(support.size());
  const Index n = B.cols;
  const auto apply_normal = [&](const Vec& c) -> Vec {
    const Vec bz = apply_B(B, scatter(support, c, n));
    Vec out = gather(support, apply_B_adjoint(B, bz));
    if (lambda > 0.0) out += lambda * c;
    return out;
  };
  const Vec rhs = gather(support, apply_B_adjoint(B, z_hat));
  const double rhs_norm = rhs.norm();
  CgOutcome out;
  out.c = Vec::Zero(m);
  if (rhs_norm == 0.0) {
    out.converged = true;
    return out;
  }
  Vec residual = rhs;
  Vec direction = residual;
  double rr = residual.squaredNorm();
  const double tol = 1e-13 * rhs_norm;
  const Index max_iters = std::max<Index>(200, 4 * m);
  for (Index it = 0; it < max_iters; ++it) {
    const Vec ad = apply_normal(direction);
    const double dad = direction.dot(ad);
    if (!(dad > 0.0)) break;  // numerically rank-deficient direction
    const double alpha = rr / dad;
    out.c += alpha * direction;
    residual -= alpha * ad;
    const double rr_next = residual.squaredNorm();
    out.iterations = it + 1;
    if (std::sqrt(rr_next) <= tol) {
      out.converged = true;
      break;
    }
    direction = residual + (rr_next / rr) * direction;
    rr = rr_next;
  }
  return out;
}

}  // namespace

LsReport least_squares_on_support(const SensingMatrix& B,
                                  const std::vector<Index>& support,
                                  const Vec& z_hat) {
  B.validate();
  if (z_hat.size() != B.rows)
    throw ShapeError("least_squares_on_support: z_hat length != q");
  if (support.empty())
    throw ShapeError("least_squares_on_support: empty support");
  if (static_cast<Index>(support.size()) > B.rows)
    throw ShapeError("least_squares_on_support: support larger than q");
  for (Index i : support)
    if (i < 0 || i >= B.cols) {
      std::ostringstream msg;
      msg << "least_squares_on_support: column " << i << " out of range (n="
          << B.cols << ")";
      throw IndexError(msg.str());
    }

  LsReport report;
  CgOutcome plain = cg_normal(B, support, z_hat, 0.0);
  report.iterations = plain.iterations;
  if (plain.converged) {
    report.coefficients = std::move(plain.c);
    return report;
  }
  // Rank-deficient or stalled: re-solve with a small ridge tied to the
  // average squared column norm.
  double col_scale = 0.0;
  for (Index i : support) {
    Vec e = Vec::Zero(B.cols);
    e[i] = 1.0;
    col_scale += apply_B(B, e).squaredNorm();
  }
  col_scale /= static_cast<double>(support.size());
  const double lambda = 1e-10 * std::max(col_scale, 1e-30);
  CgOutcome ridge = cg_normal(B, support, z_hat, lambda);
  report.coefficients = std::move(ridge.c);
  report.iterations += ridge.iterations;
  report.regularized_fallback = true;
  return report;
}

CosampResult cosamp(const Vec& z_hat, const SensingMatrix& B, Index s,
                    const CosampOptions& options) {
  B.validate();
  if (z_hat.size() != B.rows) throw ShapeError("cosamp: z_hat length != q");
  if (s < 1 || s > B.rows)
    throw DomainError("cosamp: need 1 <= s <= q");
  if (options.max_iters < 1) throw DomainError("cosamp: max_iters >= 1");

  const Index n = B.cols;
  CosampResult result;
  result.x_hat = Vec::Zero(n);
  const double z_norm = z_hat.norm();
  const double stop = options.tol * z_norm;
  Vec residual = z_hat;

  for (Index it = 0; it < options.max_iters; ++it) {
    if (residual.norm() <= stop) break;

    const Vec proxy = apply_B_adjoint(B, residual);
    std::vector<Index> merged = top_indices(proxy, 2 * s);
    merged.insert(merged.end(), result.support.begin(), result.support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    const LsReport ls = least_squares_on_support(B, merged, z_hat);
    result.regularized_fallback |= ls.regularized_fallback;

    const std::vector<Index> keep = top_indices(ls.coefficients, s);
    result.x_hat.setZero();
    std::vector<Index> new_support;
    new_support.reserve(static_cast<std::size_t>(s));
    for (Index pos : keep) {
      const Index col = merged[static_cast<std::size_t>(pos)];
      result.x_hat[col] = ls.coefficients[pos];
      new_support.push_back(col);
    }
    std::sort(new_support.begin(), new_support.end());
    result.support = std::move(new_support);

    residual = z_hat - apply_B(B, result.x_hat);
    result.residual_norms.push_back(residual.norm());
    result.iterations = it + 1;
  }
  return result;
}

Mat haar2d_forward(const Mat& image) {
  const Index side = image.rows();
  if (side != image.cols() || side < 1 || (side & (side - 1)) != 0)
    throw ShapeError("haar2d: image must be square with power-of-two side");
  Mat a = image;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec buf(side);
  for (Index m = side; m >= 2; m /= 2) {
    for (Index r = 0; r < m; ++r) {  // rows of the active block
      for (Index i = 0; i < m / 2; ++i) {
        buf[i] = (a(r, 2 * i) + a(r, 2 * i + 1)) * inv_sqrt2;
        buf[m / 2 + i] = (a(r, 2 * i) - a(r, 2 * i + 1)) * inv_sqrt2;
      }
      a.row(r).head(m) = buf.head(m).transpose();
    }
    for (Index c = 0; c < m; ++c) {  // columns
      for (Index i = 0; i < m / 2; ++i) {
        buf[i] = (a(2 * i, c) + a(2 * i + 1, c)) * inv_sqrt2;
        buf[m / 2 + i] = (a(2 * i, c) - a(2 * i + 1, c)) * inv_sqrt2;
      }
      a.col(c).head(m) = buf.head(m);
    }
  }
  return a;
}

Mat haar2d_inverse(const Mat& coefficients) {
  const Index side = coefficients.rows();
  if (side != coefficients.cols() || side < 1 || (side & (side - 1)) != 0)
    throw ShapeError("haar2d: coefficients must be square power-of-two");
  Mat a = coefficients;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vec buf(side);
  for (Index m = 2; m <= side; m *= 2) {
    for (Index c = 0; c < m; ++c) {
      for (Index i = 0; i < m / 2; ++i) {
        buf[2 * i] = (a(i, c) + a(m / 2 + i, c)) * inv_sqrt2;
        buf[2 * i + 1] = (a(i, c) - a(m / 2 + i, c)) * inv_sqrt2;
      }
      a.col(c).head(m) = buf.head(m);
    }
    for (Index r = 0; r < m; ++r) {
      for (Index i = 0; i < m / 2; ++i) {
        buf[2 * i] = (a(r, i) + a(r, m / 2 + i)) * inv_sqrt2;
        buf[2 * i + 1] = (a(r, i) - a(r, m / 2 + i)) * inv_sqrt2;
      }
      a.row(r).head(m) = buf.head(m).transpose();
    }
  }
  return a;
}

Vec sparsify(const Mat& image, Index s) {
  if (s < 0 || s > image.size())
    throw DomainError("sparsify: need 0 <= s <= pixel count");
  const Vec coeffs = flatten(haar2d_forward(image));
  Vec out = Vec::Zero(coeffs.size());
  for (Index i : top_indices(coeffs, s)) out[i] = coeffs[i];
  return out;
}

Mat unflatten(const Vec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw ShapeError("unflatten: size mismatch");
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  return m;
}

Vec flatten(const Mat& m) {
  Vec v(m.size());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) v[r * m.cols() + c] = m(r, c);
  return v;
}

}  // namespace modrecon
