#include "pbd/propagation.hpp"

namespace pbd {

BeliefDistribution propagate_pbd_step(const BeliefDistribution& bd, const Vector& action,
                                      const LinearDynamics& dyn, const ObservationModel& obs) {
    BeliefDistribution out;
    out.mean_of_means = dyn.A * bd.mean_of_means + dyn.B * action;
    const Matrix pred_cov = symmetrize(dyn.A * bd.belief_cov * dyn.A.transpose() + dyn.P);
    const Matrix pushed_spread = dyn.A * bd.cov_of_means * dyn.A.transpose();

    if (const auto* lg = std::get_if<LinearGaussianObservation>(&obs)) {
        const Matrix k = kalman_gain(pred_cov, *lg);
        out.cov_of_means =
            symmetrize(pushed_spread + pred_cov * lg->C.transpose() * k.transpose());
        out.belief_cov = kalman_posterior_cov(pred_cov, *lg);
    } else {
        const auto& ef = std::get<ExpFamilyObservation>(obs);
        const EfkfLinearization lin = efkf_linearize(pred_cov, out.mean_of_means, ef);
        out.cov_of_means =
            symmetrize(pushed_spread + pred_cov * lin.jacobian.transpose() * lin.gain.transpose());
        out.belief_cov = lin.posterior_cov;
    }
    return out;
}

std::vector<BeliefDistribution> propagate_pbd_macro(const GaussianBelief& b0,
                                                    const std::vector<StepModel>& steps) {
    if (steps.empty()) {
        throw InvalidInput("propagate_pbd_macro: macro-action must be nonempty");
    }
    std::vector<BeliefDistribution> out;
    out.reserve(steps.size());
    BeliefDistribution bd = BeliefDistribution::from_belief(b0);
    for (const StepModel& step : steps) {
        bd = propagate_pbd_step(bd, step.control, step.dyn, step.obs);
        out.push_back(bd);
    }
    return out;
}

std::vector<GaussianBelief> sample_posterior_beliefs(const BeliefDistribution& bd,
                                                     int num_samples, Rng& rng) {
    if (num_samples < 1) {
        throw InvalidInput("sample_posterior_beliefs: need at least one sample");
    }
    const Matrix root = psd_sqrt(bd.cov_of_means);
    std::vector<GaussianBelief> out;
    out.reserve(static_cast<std::size_t>(num_samples));
    Vector q(bd.dim());
    for (int i = 0; i < num_samples; ++i) {
        for (Eigen::Index d = 0; d < q.size(); ++d) {
            q[d] = rng.gaussian();
        }
        out.push_back(GaussianBelief{bd.mean_of_means + root * q, bd.belief_cov});
    }
    return out;
}

} // namespace pbd
