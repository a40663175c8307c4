#include "pbd/filters.hpp"

namespace pbd {

namespace {

Matrix solve_spd(const Matrix& m, const Matrix& rhs, const char* what) {
    Eigen::LLT<Matrix> llt(symmetrize(m));
    if (llt.info() != Eigen::Success) {
        throw SingularCovariance(std::string(what) + ": matrix not positive definite");
    }
    return llt.solve(rhs);
}

} // namespace

GaussianBelief kalman_predict(const GaussianBelief& b, const Vector& action,
                              const LinearDynamics& dyn) {
    if (dyn.A.cols() != b.mean.size() || dyn.B.rows() != dyn.A.rows() ||
        dyn.B.cols() != action.size() || dyn.P.rows() != dyn.A.rows()) {
        throw DimensionError("kalman_predict: model dimensions disagree");
    }
    GaussianBelief out;
    out.mean = dyn.A * b.mean + dyn.B * action;
    out.cov = symmetrize(dyn.A * b.cov * dyn.A.transpose() + dyn.P);
    return out;
}

Matrix kalman_gain(const Matrix& pred_cov, const LinearGaussianObservation& obs) {
    const Matrix innovation_cov = obs.C * pred_cov * obs.C.transpose() + obs.Q;
    // K^T = (C Sigma C^T + Q)^{-1} C Sigma
    const Matrix kt = solve_spd(innovation_cov, obs.C * pred_cov, "kalman_gain");
    return kt.transpose();
}

Matrix kalman_posterior_cov(const Matrix& pred_cov, const LinearGaussianObservation& obs) {
    // Information form; requires invertible predicted covariance.
    Eigen::LLT<Matrix> pred_llt(symmetrize(pred_cov));
    if (pred_llt.info() == Eigen::Success) {
        const Matrix qinv_c = solve_spd(obs.Q, obs.C, "kalman_update(Q)");
        const Matrix info = obs.C.transpose() * qinv_c +
                            pred_llt.solve(Matrix::Identity(pred_cov.rows(), pred_cov.cols()));
        Eigen::LLT<Matrix> info_llt(symmetrize(info));
        if (info_llt.info() == Eigen::Success) {
            return symmetrize(info_llt.solve(Matrix::Identity(info.rows(), info.cols())));
        }
    }
    // Joseph form handles a singular predicted covariance.
    const Matrix k = kalman_gain(pred_cov, obs);
    const Matrix ikc = Matrix::Identity(pred_cov.rows(), pred_cov.cols()) - k * obs.C;
    return symmetrize(ikc * pred_cov * ikc.transpose() + k * obs.Q * k.transpose());
}

GaussianBelief kalman_update(const GaussianBelief& predicted, const Vector& z,
                             const LinearGaussianObservation& obs) {
    if (obs.C.cols() != predicted.mean.size() || obs.C.rows() != z.size() ||
        obs.Q.rows() != z.size()) {
        throw DimensionError("kalman_update: model dimensions disagree");
    }
    const Matrix k = kalman_gain(predicted.cov, obs);
    GaussianBelief out;
    out.mean = predicted.mean + k * (z - obs.C * predicted.mean);
    out.cov = kalman_posterior_cov(predicted.cov, obs);
    return out;
}

EfkfLinearization efkf_linearize(const Matrix& pred_cov, const Vector& lin_mean,
                                 const ExpFamilyObservation& obs) {
    EfkfLinearization lin;
    lin.theta_hat = obs.link(lin_mean);
    lin.jacobian = obs.link_jacobian(lin_mean);
    lin.beta_dot = obs.beta_dot(lin.theta_hat);
    lin.beta_ddot = obs.beta_ddot(lin.theta_hat);

    Eigen::LLT<Matrix> bdd_llt(symmetrize(lin.beta_ddot));
    if (bdd_llt.info() != Eigen::Success) {
        throw LinkEvaluationError("efkf: beta_ddot not positive definite at linearization point");
    }
    const Matrix bdd_inv =
        bdd_llt.solve(Matrix::Identity(lin.beta_ddot.rows(), lin.beta_ddot.cols()));

    const Matrix& y = lin.jacobian;
    const Matrix innovation_cov = y * pred_cov * y.transpose() + bdd_inv;
    Eigen::LLT<Matrix> inn_llt(symmetrize(innovation_cov));
    if (inn_llt.info() != Eigen::Success) {
        throw NumericalFailure("efkf: innovation covariance not positive definite");
    }
    lin.gain = inn_llt.solve(y * pred_cov).transpose();

    // Posterior covariance, information form with Joseph-style fallback.
    Eigen::LLT<Matrix> pred_llt(symmetrize(pred_cov));
    if (pred_llt.info() == Eigen::Success) {
        const Matrix info = y.transpose() * lin.beta_ddot * y +
                            pred_llt.solve(Matrix::Identity(pred_cov.rows(), pred_cov.cols()));
        Eigen::LLT<Matrix> info_llt(symmetrize(info));
        if (info_llt.info() != Eigen::Success) {
            throw NumericalFailure("efkf: information matrix not positive definite");
        }
        lin.posterior_cov = symmetrize(info_llt.solve(Matrix::Identity(info.rows(), info.cols())));
    } else {
        const Matrix iky = Matrix::Identity(pred_cov.rows(), pred_cov.cols()) - lin.gain * y;
        lin.posterior_cov = symmetrize(iky * pred_cov * iky.transpose() +
                                       lin.gain * bdd_inv * lin.gain.transpose());
    }
    return lin;
}

GaussianBelief efkf_update(const GaussianBelief& predicted, const Vector& z,
                           const ExpFamilyObservation& obs) {
    const EfkfLinearization lin = efkf_linearize(predicted.cov, predicted.mean, obs);

    Eigen::LLT<Matrix> bdd_llt(symmetrize(lin.beta_ddot));
    const Vector z_tilde = lin.theta_hat - bdd_llt.solve(lin.beta_dot - z);

    GaussianBelief out;
    out.mean = predicted.mean + lin.gain * (z_tilde - lin.theta_hat);
    out.cov = lin.posterior_cov;
    return out;
}

} // namespace pbd
