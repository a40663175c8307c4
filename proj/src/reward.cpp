#include "pbd/reward.hpp"

#include <cmath>

namespace pbd {

double expected_reward_gmm(const BeliefDistribution& bd, const GaussianMixtureReward& r) {
    const Matrix marginal = bd.total_cov();
    double total = 0.0;
    for (const auto& comp : r.components) {
        if (comp.weight == 0.0) continue;
        if (comp.center.size() != bd.dim()) {
            throw DimensionError("expected_reward_gmm: component dimension mismatch");
        }
        const Gaussian g{bd.mean_of_means, comp.spread + marginal};
        total += comp.weight * gaussian_pdf(g, comp.center);
    }
    return total;
}

namespace {

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return out;
}

// E[prod_i s_i^{alpha_i}] for s ~ N(mean, cov), by expanding each factor
// about the mean and summing central moments over all sub-indices.
double raw_moment(const Vector& mean, const Matrix& cov, const std::vector<int>& alpha,
                  int order_cap) {
    const std::size_t dims = alpha.size();
    std::vector<int> beta(dims, 0);
    double total = 0.0;
    // Odometer enumeration of all beta <= alpha.
    while (true) {
        int beta_order = 0;
        for (std::size_t i = 0; i < dims; ++i) beta_order += beta[i];
        if (beta_order % 2 == 0) {
            double coeff = 1.0;
            for (std::size_t i = 0; i < dims; ++i) {
                coeff *= binomial(alpha[i], beta[i]) *
                         std::pow(mean[static_cast<Eigen::Index>(i)], alpha[i] - beta[i]);
            }
            if (coeff != 0.0) {
                total += coeff * central_moment(cov, beta, order_cap);
            }
        }
        std::size_t pos = 0;
        while (pos < dims && beta[pos] == alpha[pos]) {
            beta[pos] = 0;
            ++pos;
        }
        if (pos == dims) break;
        ++beta[pos];
    }
    return total;
}

} // namespace

double expected_reward_poly(const BeliefDistribution& bd, const PolynomialReward& r,
                            int order_cap) {
    const Matrix marginal = bd.total_cov();
    double total = 0.0;
    for (const auto& term : r.terms) {
        if (static_cast<Eigen::Index>(term.exponents.size()) != bd.dim()) {
            throw DimensionError("expected_reward_poly: exponent vector dimension mismatch");
        }
        if (term.coeff == 0.0) continue;
        total += term.coeff * raw_moment(bd.mean_of_means, marginal, term.exponents, order_cap);
    }
    return total;
}

double expected_reward_sampled(const BeliefDistribution& bd, const SampledReward& r, Rng& rng) {
    if (r.num_samples < 1) {
        throw InvalidInput("expected_reward_sampled: need at least one sample");
    }
    const Gaussian marginal{bd.mean_of_means, bd.total_cov()};
    double total = 0.0;
    for (int i = 0; i < r.num_samples; ++i) {
        total += r.fn(sample_gaussian(marginal, rng));
    }
    return total / static_cast<double>(r.num_samples);
}

MacroRollout rollout_macro(const GaussianBelief& b0, const std::vector<StepModel>& steps,
                           const StepRewardFn& reward, double gamma) {
    if (steps.empty()) {
        throw InvalidInput("rollout_macro: macro-action must be nonempty");
    }
    MacroRollout out;
    BeliefDistribution bd = BeliefDistribution::from_belief(b0);
    double discount = 1.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        out.expected_reward += discount * reward(bd, static_cast<int>(i));
        bd = propagate_pbd_step(bd, steps[i].control, steps[i].dyn, steps[i].obs);
        discount *= gamma;
    }
    out.final_distribution = std::move(bd);
    return out;
}

double macro_expected_reward(const GaussianBelief& b0, const std::vector<StepModel>& steps,
                             const StepRewardFn& reward, double gamma) {
    return rollout_macro(b0, steps, reward, gamma).expected_reward;
}

} // namespace pbd
