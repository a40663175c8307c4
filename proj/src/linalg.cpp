#include "pbd/linalg.hpp"

namespace pbd {

Matrix make_psd(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("make_psd: matrix must be square");
    }
    const Matrix s = symmetrize(m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("make_psd: eigendecomposition failed");
    }
    Vector evals = es.eigenvalues();
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] < -kPsdTolerance) {
            throw SingularCovariance("make_psd: eigenvalue " + std::to_string(evals[i]) +
                                     " below tolerance");
        }
        if (evals[i] < 0.0) {
            evals[i] = 0.0;
        }
    }
    return es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().transpose();
}

Matrix psd_sqrt(const Matrix& m) {
    Eigen::LLT<Matrix> llt(symmetrize(m));
    if (llt.info() == Eigen::Success) {
        return llt.matrixL();
    }
    // Semi-definite: fall back to eigendecomposition.
    const Matrix repaired = make_psd(m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(repaired);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("psd_sqrt: eigendecomposition failed");
    }
    Vector roots = es.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        roots[i] = std::sqrt(std::max(0.0, roots[i]));
    }
    return es.eigenvectors() * roots.asDiagonal();
}

bool is_psd(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
    if (es.info() != Eigen::Success) return false;
    return es.eigenvalues().minCoeff() >= -kPsdTolerance;
}

} // namespace pbd
