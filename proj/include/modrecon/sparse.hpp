#ifndef MODRECON_SPARSE_HPP
#define MODRECON_SPARSE_HPP

#include <vector>

#include "modrecon/sensing.hpp"
#include "modrecon/types.hpp"

namespace modrecon {

struct LsReport {
  Vec coefficients;
  Index iterations = 0;
  bool regularized_fallback = false;
};

// Minimizes ||z_hat - B_support * c||_2 with conjugate gradients on the
// normal equations, matrix-free (two operator applications per iteration).
// Falls back to a Tikhonov-regularized solve when CG stalls; the fallback is
// reported, not thrown.
LsReport least_squares_on_support(const SensingMatrix& B,
                                  const std::vector<Index>& support,
                                  const Vec& z_hat);

struct CosampOptions {
  Index max_iters = 50;
  double tol = 1e-6;  // relative residual
};

struct CosampResult {
  Vec x_hat;                          // exactly s-sparse, length n
  std::vector<Index> support;         // final support, size <= s
  std::vector<double> residual_norms; // one entry per completed iteration
  Index iterations = 0;
  bool regularized_fallback = false;
};

// Canonical CoSaMP: proxy B^T r, merge the top-2s proxy support with the
// current one, least squares on the merged support, prune to the top s,
// recompute the residual; stops at tol*||z_hat|| or max_iters.
CosampResult cosamp(const Vec& z_hat, const SensingMatrix& B, Index s,
                    const CosampOptions& options = {});

// Orthonormal multi-level 2D Haar transform on a square power-of-two image;
// forward and inverse are mutual inverses and preserve the 2-norm.
Mat haar2d_forward(const Mat& image);
Mat haar2d_inverse(const Mat& coefficients);

// Keeps the s largest-magnitude Haar coefficients of the image (ties to the
// lower row-major index) and returns them as a flattened row-major vector.
Vec sparsify(const Mat& image, Index s);

Mat unflatten(const Vec& v, Index rows, Index cols);
Vec flatten(const Mat& m);

}  // namespace modrecon

#endif
