#pragma once

#include <Eigen/Dense>

#include "pbd/errors.hpp"

namespace pbd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Eigenvalues down to -kPsdTolerance are treated as zero when repairing a
// covariance; anything more negative is rejected as genuinely indefinite.
inline constexpr double kPsdTolerance = 1e-10;

inline Matrix symmetrize(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

// Repairs a nominally-PSD covariance: symmetrize, then clamp eigenvalue dust
// in [-kPsdTolerance, 0) to zero. Throws SingularCovariance if any eigenvalue
// is below -kPsdTolerance.
Matrix make_psd(const Matrix& m);

// Square root factor A with m = A * A^T. Uses Cholesky when the matrix is
// positive definite and an eigendecomposition otherwise (PSD case).
Matrix psd_sqrt(const Matrix& m);

// True if m is symmetric PSD within kPsdTolerance.
bool is_psd(const Matrix& m);

} // namespace pbd
