#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pbd/reward.hpp"

namespace pbd {

// A primitive action: a small integer code for discrete domains and/or a
// control vector for continuous ones.
struct PrimitiveAction {
    int id = -1;
    Vector control;
};

// Finite open-loop sequence of primitive actions, executed without
// conditioning on observations received along the way.
struct MacroAction {
    std::vector<PrimitiveAction> actions;
    std::string label; // generator provenance

    int length() const { return static_cast<int>(actions.size()); }
};

enum class PlannerKind { PBD, MAC, MAD, NBO, Greedy, WtSingle, WtMacro };

struct PlannerConfig {
    double gamma = 0.99;
    int depth = 1;   // macro-action search depth
    int samples = 1; // posterior-belief / trajectory samples per macro
    PlannerKind kind = PlannerKind::PBD;
    std::uint64_t seed = 0;

    void validate() const;
};

const char* planner_kind_name(PlannerKind kind);
PlannerKind planner_kind_from_name(const std::string& name);

// Which belief representation a sampled-trajectory search updates:
// parametric Gaussian filtering, or the domain's exact discrete factored
// belief (only available where the underlying state space is discrete).
enum class BeliefRepr { Parametric, Discrete };

// Everything a domain supplies to the forward-search planners. All methods
// must be pure and read-only so branches can be evaluated concurrently;
// nodes are immutable snapshots of (fully-observable context, beliefs).
class DomainAdapter {
public:
    struct Node {
        virtual ~Node() = default;
    };
    using NodeRef = std::shared_ptr<const Node>;

    // Posterior distribution over beliefs at the end of a macro-action,
    // together with the evolved fully-observable context.
    struct EndDistribution {
        virtual ~EndDistribution() = default;
    };
    using EndRef = std::shared_ptr<const EndDistribution>;

    struct DistOutcome {
        double expected_reward = 0.0; // discounted along the macro
        EndRef end;
    };
    struct TrajectoryOutcome {
        double discounted_reward = 0.0;
        NodeRef end;
    };

    virtual ~DomainAdapter() = default;

    virtual bool is_terminal(const Node& node) const = 0;

    // Macro-actions available from a node; must be nonempty for
    // non-terminal nodes.
    virtual std::vector<MacroAction> generate_macros(const Node& node) const = 0;

    // Primitive-action ids that must appear as the first action of some
    // macro at this node. Empty when the generator intentionally restricts
    // the policy space (hand-coded goto-style macros).
    virtual std::vector<int> required_first_actions(const Node& node) const { return {}; }

    // Exact propagation of the posterior distribution over beliefs along the
    // macro. With include_mean_spread=false the mean-spread term is dropped,
    // which yields the single most-likely (zero innovation) belief path.
    virtual DistOutcome propagate_distribution(const Node& node, const MacroAction& macro,
                                               bool include_mean_spread) const = 0;

    // Draw one concrete belief node from an end-of-macro distribution.
    virtual NodeRef sample_posterior(const EndDistribution& end, Rng& rng) const = 0;

    // The node holding the distribution's mean belief (zero-innovation path).
    virtual NodeRef nominal_node(const EndDistribution& end) const = 0;

    // One sampled observation trajectory along the macro with explicit
    // per-step belief updates; observations are drawn from the predictive
    // distribution of the current belief.
    virtual TrajectoryOutcome sample_trajectory(const Node& node, const MacroAction& macro,
                                                Rng& rng, BeliefRepr repr) const = 0;

    // One-step lookahead support for the greedy baseline.
    virtual std::vector<PrimitiveAction> greedy_candidates(const Node& node) const = 0;
    virtual double one_step_expected_reward(const Node& node,
                                            const PrimitiveAction& action) const = 0;

    // Per-factor uncertainty support for the worst-target baselines.
    virtual int factor_count() const = 0;
    virtual double factor_uncertainty(const Node& node, int factor) const = 0;
    virtual MacroAction approach_macro(const Node& node, int factor) const = 0;
    virtual bool factor_reached(const Node& node, int factor) const = 0;
};

// Q-value of a macro-action by posterior-belief-distribution search:
// expected macro reward plus gamma^L times the average over sampled
// posterior beliefs of the best next-macro value at depth-1.
double expand_pbd(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth,
                  const Rng& stream);

// Q-value by sampled observation trajectories with explicit belief updates.
// repr selects parametric filtering (MAC) or exact discrete beliefs (MAD).
double expand_mac(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth,
                  const Rng& stream, BeliefRepr repr = BeliefRepr::Parametric);

inline double expand_mad(const DomainAdapter& dom, const DomainAdapter::Node& node,
                         const MacroAction& macro, const PlannerConfig& cfg, int depth,
                         const Rng& stream) {
    return expand_mac(dom, node, macro, cfg, depth, stream, BeliefRepr::Discrete);
}

// Q-value by propagating only the most likely posterior belief (zero
// innovation); branches over macros but never over observations.
double expand_nbo(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth);

// Runs the configured search from `node` and returns the first primitive
// action of the argmax macro; exact ties go to the lowest macro index.
// Deterministic given (node, cfg, rng stream).
PrimitiveAction select_action(const DomainAdapter& dom, const DomainAdapter::Node& node,
                              const PlannerConfig& cfg, const Rng& stream);

// Largest one-step expected reward among the domain's candidate primitives;
// ties go to the lowest candidate index.
PrimitiveAction greedy_policy(const DomainAdapter& dom, const DomainAdapter::Node& node);

// Travel toward the factor (target) with the largest belief uncertainty.
// Single mode re-picks every step; Macro mode commits to the chosen factor
// until it is reached.
class WtPolicy {
public:
    enum class Mode { Single, Macro };

    explicit WtPolicy(Mode mode) : mode_(mode) {}

    PrimitiveAction act(const DomainAdapter& dom, const DomainAdapter::Node& node);

    int committed_factor() const { return committed_; }

private:
    Mode mode_;
    int committed_ = -1;
};

// Inputs of the sampling-error bound on values computed by the
// posterior-belief search.
struct BoundInputs {
    double gamma = 0.99;     // in (0,1)
    int depth = 1;           // macro-action search depth
    double samples = 1;      // posterior-belief samples per macro
    double macro_count = 1;  // maximum number of macro-actions
    double delta = 0.05;     // failure probability, in (0,1)
    double v_max = 0.0;      // bound on the maximum value
};

// gamma^depth * v_max
//   + (1/(1-gamma)) * sqrt((v_max^2/samples) * log((macro_count*samples)^depth / delta)).
double epsilon_bound(const BoundInputs& in);

// v_max derived from a per-step reward bound: max_r / (1 - gamma).
double v_max_from_step_reward(double max_step_reward, double gamma);

} // namespace pbd
