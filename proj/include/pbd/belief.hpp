#pragma once

#include "pbd/gaussian.hpp"

namespace pbd {

// A single Gaussian belief over the hidden state.
using GaussianBelief = Gaussian;

// Gaussian-over-Gaussians posterior after a (partial) macro-action: belief
// means are distributed N(mean_of_means, cov_of_means) and every belief in
// the distribution shares the same covariance belief_cov (the covariance
// component is a Dirac delta, since it is observation-independent).
struct BeliefDistribution {
    Vector mean_of_means;
    Matrix cov_of_means;
    Matrix belief_cov;

    Eigen::Index dim() const { return mean_of_means.size(); }

    // Marginal state covariance: a state drawn through the distribution of
    // beliefs is N(mean_of_means, belief_cov + cov_of_means).
    Matrix total_cov() const { return belief_cov + cov_of_means; }

    // Degenerate distribution concentrated on one belief.
    static BeliefDistribution from_belief(const GaussianBelief& b) {
        return BeliefDistribution{b.mean, Matrix::Zero(b.dim(), b.dim()), b.cov};
    }
};

} // namespace pbd
