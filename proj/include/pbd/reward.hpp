#pragma once

#include <functional>

#include "pbd/propagation.hpp"

namespace pbd {

// Reward model r(s) = sum_j w_j N(s | center_j, spread_j).
struct GaussianMixtureReward {
    struct Component {
        double weight;
        Vector center;
        Matrix spread;
    };
    std::vector<Component> components;
};

// Reward model r(s) = sum_j coeff_j * prod_i s_i^{exponents_j[i]}.
struct PolynomialReward {
    struct Term {
        double coeff;
        std::vector<int> exponents;
    };
    std::vector<Term> terms;
};

// Black-box reward, evaluated by averaging over sampled states.
struct SampledReward {
    std::function<double(const Vector&)> fn;
    int num_samples = 1000;
};

// Closed-form expectation of a Gaussian-mixture reward under a distribution
// of beliefs: sum_j w_j N(center_j | m, spread_j + Sigma + Sigma^mu).
double expected_reward_gmm(const BeliefDistribution& bd, const GaussianMixtureReward& r);

// Closed-form expectation of a polynomial reward: moments of
// N(m, Sigma + Sigma^mu), with non-central moments reduced to central ones
// by binomial expansion about the mean.
double expected_reward_poly(const BeliefDistribution& bd, const PolynomialReward& r,
                            int order_cap = kDefaultMomentOrderCap);

// Sampled expectation of an arbitrary reward over states drawn from the
// marginal N(m, Sigma + Sigma^mu).
double expected_reward_sampled(const BeliefDistribution& bd, const SampledReward& r, Rng& rng);

// Per-step expected reward along a macro, queried with the distribution of
// beliefs in force before the step and the step index (0-based).
using StepRewardFn = std::function<double(const BeliefDistribution&, int)>;

// Expected discounted reward of a macro-action from a single belief:
//   r(bd_0, a_1) + sum_{i=2..L} gamma^{i-1} r(bd_{i-1}, a_i)
// where bd_0 is the degenerate distribution at b0 and bd_i comes from the
// posterior-belief propagation.
double macro_expected_reward(const GaussianBelief& b0, const std::vector<StepModel>& steps,
                             const StepRewardFn& reward, double gamma);

// Same computation, also exposing the end-of-macro distribution so a planner
// does not have to re-propagate before sampling.
struct MacroRollout {
    double expected_reward = 0.0;
    BeliefDistribution final_distribution;
};
MacroRollout rollout_macro(const GaussianBelief& b0, const std::vector<StepModel>& steps,
                           const StepRewardFn& reward, double gamma);

} // namespace pbd
