#pragma once

#include "pbd/planner.hpp"

namespace pbd::isrs {

struct GridPos {
    int x = 0;
    int y = 0;

    bool operator==(const GridPos&) const = default;
};

// Primitive actions: single steps in the four cardinal directions plus the
// rock sampling action. East increases x; the exit sidebar lies beyond the
// east edge.
enum Action : int { North = 0, South = 1, East = 2, West = 3, Sample = 4 };
inline constexpr int kActionCount = 5;

struct IsrsSpec {
    int grid = 8;                 // n x n world
    std::vector<GridPos> rocks;   // k rock positions
    std::vector<GridPos> beacons; // one information beacon per rock
    GridPos start{0, 0};
    double d0 = 2.0;              // sensor range constant (default n/4)
    double reward_good = 10.0;
    double reward_bad = -10.0;
    double reward_exit = 5.0;
    double gamma = 0.99;
    // Optional fixed rock values (0/1); drawn uniformly per episode when empty.
    std::vector<int> rock_values;

    int rock_count() const { return static_cast<int>(rocks.size()); }
    void validate() const;
};

// Per-rock belief, kept in both representations: a Gaussian over the [0,1]
// value (parametric planning) and the exact Bernoulli probability (discrete
// planning). Rocks are independent, so beliefs stay fully factored.
struct RockBelief {
    double mean = 0.5;
    double var = 0.25;
    double p = 0.5;
};

// True world state (simulator side).
struct IsrsState {
    GridPos agent;
    std::vector<int> rock_values;
    std::uint32_t collected = 0; // bitmask over rocks
    bool terminated = false;
};

// Binary value observation for every rock, received each time step.
struct IsrsObservation {
    std::vector<int> z;
};

// Bernoulli observation channel for one rock as an exponential-family model
// (1-D): theta = ln(p1/(1-p1)) with p1 = 0.5 + (s - 0.5) * attenuation,
// normalizer beta = ln(e^theta + 1). The linearization mean is clamped away
// from {0,1}, where the link diverges at zero beacon distance.
ExpFamilyObservation bernoulli_links(double attenuation);

// Probability of observing z=1 given rock value `s` in [0,1].
inline double bernoulli_obs_prob(double s, double attenuation) {
    return 0.5 + (s - 0.5) * attenuation;
}

class IsrsDomain final : public DomainAdapter {
public:
    explicit IsrsDomain(IsrsSpec spec);

    const IsrsSpec& spec() const { return spec_; }

    struct IsrsNode : Node {
        GridPos agent;
        std::uint32_t collected = 0;
        bool terminated = false;
        std::vector<RockBelief> rocks;
    };

    struct RockDistribution {
        double mean_of_means = 0.5;
        double mean_spread = 0.0; // covariance of the belief means
        double var = 0.25;        // shared belief covariance
    };
    struct IsrsEnd : EndDistribution {
        GridPos agent;
        std::uint32_t collected = 0;
        bool terminated = false;
        std::vector<RockDistribution> rocks;
    };

    NodeRef initial_node() const;

    // --- DomainAdapter ---
    bool is_terminal(const Node& node) const override;
    std::vector<MacroAction> generate_macros(const Node& node) const override;
    std::vector<int> required_first_actions(const Node& node) const override;
    DistOutcome propagate_distribution(const Node& node, const MacroAction& macro,
                                       bool include_mean_spread) const override;
    NodeRef sample_posterior(const EndDistribution& end, Rng& rng) const override;
    NodeRef nominal_node(const EndDistribution& end) const override;
    TrajectoryOutcome sample_trajectory(const Node& node, const MacroAction& macro, Rng& rng,
                                        BeliefRepr repr) const override;
    std::vector<PrimitiveAction> greedy_candidates(const Node& node) const override;
    double one_step_expected_reward(const Node& node, const PrimitiveAction& action) const override;
    int factor_count() const override { return spec_.rock_count(); }
    double factor_uncertainty(const Node& node, int factor) const override;
    MacroAction approach_macro(const Node& node, int factor) const override;
    bool factor_reached(const Node& node, int factor) const override;

    // --- simulator side (harness) ---
    IsrsState initial_state(Rng& rng) const;
    struct StepResult {
        IsrsState state;
        double reward = 0.0;
    };
    StepResult step(const IsrsState& state, const PrimitiveAction& action, Rng& rng) const;
    IsrsObservation observe(const IsrsState& state, Rng& rng) const;
    // Execution-time belief update after taking `action` and receiving `obs`;
    // updates both the Gaussian and the exact Bernoulli representation.
    NodeRef execute_update(const Node& node, const PrimitiveAction& action,
                           const IsrsObservation& obs) const;

    // 2^(-d/D0) for the agent at `pos` and the beacon of rock `rock`.
    double attenuation(GridPos pos, int rock) const;

    // Shortest path that interleaves axis moves to stay maximally diagonal,
    // starting with the axis of larger remaining displacement (x on ties).
    std::vector<Action> shortest_path(GridPos from, GridPos to) const;

    // Exact Bernoulli posterior for one rock after observing z.
    static double bernoulli_posterior(double prior, int z, double attenuation);

    // One parametric (Gaussian) rock-belief update; mirrors the
    // exponential-family measurement update specialized to this 1-D channel.
    static void gaussian_rock_update(double& mean, double& var, int z, double attenuation);

private:
    struct RockPbd; // scalar posterior-distribution state, defined in .cpp

    GridPos apply_move(GridPos pos, Action a, bool& exited) const;
    MacroAction goto_macro(GridPos from, GridPos to, const std::string& label) const;
    int rock_at(GridPos pos) const;

    IsrsSpec spec_;
    std::vector<double> att_table_; // [cell * k + rock]
    std::vector<int> rock_at_cell_; // rock index or -1 per cell
};

} // namespace pbd::isrs
