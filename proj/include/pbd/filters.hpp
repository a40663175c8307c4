#pragma once

#include "pbd/belief.hpp"
#include "pbd/models.hpp"

namespace pbd {

// Process update: N(A mu + B a, A Sigma A^T + P).
GaussianBelief kalman_predict(const GaussianBelief& b, const Vector& action,
                              const LinearDynamics& dyn);

// Kalman gain K = Sigma_bar C^T (C Sigma_bar C^T + Q)^{-1}.
Matrix kalman_gain(const Matrix& pred_cov, const LinearGaussianObservation& obs);

// Measurement update of a predicted belief. The posterior covariance uses
// the information form (C^T Q^{-1} C + Sigma_bar^{-1})^{-1}, falling back to
// the Joseph form when Sigma_bar is singular. The covariance never depends
// on z.
GaussianBelief kalman_update(const GaussianBelief& predicted, const Vector& z,
                             const LinearGaussianObservation& obs);

// Posterior covariance of kalman_update without the mean work.
Matrix kalman_posterior_cov(const Matrix& pred_cov, const LinearGaussianObservation& obs);

// Exponential-family measurement update, linearized at the predicted mean:
//   theta_hat = W(mu_bar), Y = dW/ds|mu_bar, beta_dot/beta_ddot at theta_hat
//   z_tilde   = theta_hat - beta_ddot^{-1} (beta_dot - z)
//   K         = Sigma_bar Y^T (Y Sigma_bar Y^T + beta_ddot^{-1})^{-1}
//   mu        = mu_bar + K (z_tilde - theta_hat)
//   Sigma     = (Sigma_bar^{-1} + Y^T beta_ddot Y)^{-1}
GaussianBelief efkf_update(const GaussianBelief& predicted, const Vector& z,
                           const ExpFamilyObservation& obs);

// Posterior covariance and gain pieces of the exponential-family update,
// linearized at `lin_mean` (shared by efkf_update and the posterior-belief
// propagation, which linearizes at the mean of the mean distribution).
struct EfkfLinearization {
    Vector theta_hat;
    Matrix jacobian;     // Y
    Vector beta_dot;
    Matrix beta_ddot;
    Matrix gain;         // K tilde for the given predicted covariance
    Matrix posterior_cov;
};
EfkfLinearization efkf_linearize(const Matrix& pred_cov, const Vector& lin_mean,
                                 const ExpFamilyObservation& obs);

} // namespace pbd
