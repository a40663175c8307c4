#pragma once

#include <vector>

#include "pbd/belief.hpp"
#include "pbd/filters.hpp"

namespace pbd {

// Model and control supplied by the domain for one primitive step of a
// macro-action. Parameters may depend on fully-observable context (agent
// pose), which is why they are fixed per step rather than global.
struct StepModel {
    LinearDynamics dyn;
    ObservationModel obs;
    Vector control;
};

// One-step propagation of the posterior distribution over beliefs:
//   m'        = A m + B a
//   Sigma_bar = A Sigma A^T + P
//   Sigma^mu' = A Sigma^mu A^T + Sigma_bar C^T K^T
//   Sigma'    = posterior covariance of the measurement update
// For an exponential-family observation the update linearizes at the
// propagated mean of the mean distribution, and the mean-spread increment is
// Sigma_bar Y^T K~^T. Every output is independent of the observation.
BeliefDistribution propagate_pbd_step(const BeliefDistribution& bd, const Vector& action,
                                      const LinearDynamics& dyn, const ObservationModel& obs);

// Propagation along a whole macro-action from a single belief; returns the
// distribution after each primitive step (result.size() == steps.size()).
std::vector<BeliefDistribution> propagate_pbd_macro(const GaussianBelief& b0,
                                                    const std::vector<StepModel>& steps);

// Draws beliefs from a posterior distribution: means sampled from
// N(mean_of_means, cov_of_means), covariance shared across all samples.
std::vector<GaussianBelief> sample_posterior_beliefs(const BeliefDistribution& bd,
                                                     int num_samples, Rng& rng);

} // namespace pbd
