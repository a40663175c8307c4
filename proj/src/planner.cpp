#include "pbd/planner.hpp"

#include <cmath>
#include <limits>

namespace pbd {

void PlannerConfig::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw InvalidInput("PlannerConfig: discount must be in (0, 1]");
    }
    if (depth < 1) throw InvalidInput("PlannerConfig: depth must be >= 1");
    if (samples < 1) throw InvalidInput("PlannerConfig: samples must be >= 1");
}

const char* planner_kind_name(PlannerKind kind) {
    switch (kind) {
        case PlannerKind::PBD: return "pbd";
        case PlannerKind::MAC: return "mac";
        case PlannerKind::MAD: return "mad";
        case PlannerKind::NBO: return "nbo";
        case PlannerKind::Greedy: return "greedy";
        case PlannerKind::WtSingle: return "wt-single";
        case PlannerKind::WtMacro: return "wt-macro";
    }
    return "unknown";
}

PlannerKind planner_kind_from_name(const std::string& name) {
    if (name == "pbd") return PlannerKind::PBD;
    if (name == "mac") return PlannerKind::MAC;
    if (name == "mad") return PlannerKind::MAD;
    if (name == "nbo") return PlannerKind::NBO;
    if (name == "greedy") return PlannerKind::Greedy;
    if (name == "wt-single") return PlannerKind::WtSingle;
    if (name == "wt-macro") return PlannerKind::WtMacro;
    throw InvalidInput("unknown planner kind: " + name);
}

namespace {

// Salt separating child-macro streams from sample streams under one fork.
constexpr std::uint64_t kMacroStreamSalt = 0x6d6163726f000000ULL;

std::vector<MacroAction> macros_checked(const DomainAdapter& dom,
                                        const DomainAdapter::Node& node) {
    std::vector<MacroAction> macros = dom.generate_macros(node);
    if (macros.empty()) {
        throw GeneratorContractViolation("macro generator returned an empty set");
    }
    for (const MacroAction& m : macros) {
        if (m.actions.empty()) {
            throw GeneratorContractViolation("macro-action '" + m.label + "' is empty");
        }
    }
    return macros;
}

void check_first_action_coverage(const DomainAdapter& dom, const DomainAdapter::Node& node,
                                 const std::vector<MacroAction>& macros) {
    for (int required : dom.required_first_actions(node)) {
        bool covered = false;
        for (const MacroAction& m : macros) {
            if (m.actions.front().id == required) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw GeneratorContractViolation("primitive action " + std::to_string(required) +
                                             " is not the first action of any macro-action");
        }
    }
}

} // namespace

double expand_pbd(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth,
                  const Rng& stream) {
    if (depth <= 0) return 0.0;
    const DomainAdapter::DistOutcome outcome =
        dom.propagate_distribution(node, macro, /*include_mean_spread=*/true);
    if (depth == 1) return outcome.expected_reward;

    const double macro_discount = std::pow(cfg.gamma, macro.length());
    double future = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        Rng sample_rng = stream.fork(static_cast<std::uint64_t>(i));
        const DomainAdapter::NodeRef child = dom.sample_posterior(*outcome.end, sample_rng);
        double best = 0.0;
        if (!dom.is_terminal(*child)) {
            const std::vector<MacroAction> next = macros_checked(dom, *child);
            best = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < next.size(); ++j) {
                const double q = expand_pbd(dom, *child, next[j], cfg, depth - 1,
                                            sample_rng.fork(kMacroStreamSalt + j));
                if (q > best) best = q;
            }
        }
        future += best;
    }
    return outcome.expected_reward + macro_discount * future / static_cast<double>(cfg.samples);
}

double expand_mac(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth,
                  const Rng& stream, BeliefRepr repr) {
    if (depth <= 0) return 0.0;
    const double macro_discount = std::pow(cfg.gamma, macro.length());
    double total = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        Rng sample_rng = stream.fork(static_cast<std::uint64_t>(i));
        const DomainAdapter::TrajectoryOutcome traj =
            dom.sample_trajectory(node, macro, sample_rng, repr);
        double best = 0.0;
        if (depth > 1 && !dom.is_terminal(*traj.end)) {
            const std::vector<MacroAction> next = macros_checked(dom, *traj.end);
            best = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < next.size(); ++j) {
                const double q = expand_mac(dom, *traj.end, next[j], cfg, depth - 1,
                                            sample_rng.fork(kMacroStreamSalt + j), repr);
                if (q > best) best = q;
            }
        }
        total += traj.discounted_reward + macro_discount * best;
    }
    return total / static_cast<double>(cfg.samples);
}

double expand_nbo(const DomainAdapter& dom, const DomainAdapter::Node& node,
                  const MacroAction& macro, const PlannerConfig& cfg, int depth) {
    if (depth <= 0) return 0.0;
    const DomainAdapter::DistOutcome outcome =
        dom.propagate_distribution(node, macro, /*include_mean_spread=*/false);
    if (depth == 1) return outcome.expected_reward;

    const DomainAdapter::NodeRef child = dom.nominal_node(*outcome.end);
    double best = 0.0;
    if (!dom.is_terminal(*child)) {
        const std::vector<MacroAction> next = macros_checked(dom, *child);
        best = -std::numeric_limits<double>::infinity();
        for (const MacroAction& m : next) {
            const double q = expand_nbo(dom, *child, m, cfg, depth - 1);
            if (q > best) best = q;
        }
    }
    return outcome.expected_reward + std::pow(cfg.gamma, macro.length()) * best;
}

PrimitiveAction select_action(const DomainAdapter& dom, const DomainAdapter::Node& node,
                              const PlannerConfig& cfg, const Rng& stream) {
    cfg.validate();
    if (cfg.kind == PlannerKind::Greedy) return greedy_policy(dom, node);
    if (cfg.kind == PlannerKind::WtSingle || cfg.kind == PlannerKind::WtMacro) {
        throw InvalidInput("select_action: worst-target planners keep state; use WtPolicy");
    }

    const std::vector<MacroAction> macros = macros_checked(dom, node);
    check_first_action_coverage(dom, node, macros);

    double best_q = -std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t j = 0; j < macros.size(); ++j) {
        const Rng macro_stream = stream.fork(kMacroStreamSalt + j);
        double q = 0.0;
        switch (cfg.kind) {
            case PlannerKind::PBD:
                q = expand_pbd(dom, node, macros[j], cfg, cfg.depth, macro_stream);
                break;
            case PlannerKind::MAC:
                q = expand_mac(dom, node, macros[j], cfg, cfg.depth, macro_stream,
                               BeliefRepr::Parametric);
                break;
            case PlannerKind::MAD:
                q = expand_mac(dom, node, macros[j], cfg, cfg.depth, macro_stream,
                               BeliefRepr::Discrete);
                break;
            case PlannerKind::NBO:
                q = expand_nbo(dom, node, macros[j], cfg, cfg.depth);
                break;
            default:
                break;
        }
        if (q > best_q) {
            best_q = q;
            best_idx = j;
        }
    }
    return macros[best_idx].actions.front();
}

PrimitiveAction greedy_policy(const DomainAdapter& dom, const DomainAdapter::Node& node) {
    const std::vector<PrimitiveAction> candidates = dom.greedy_candidates(node);
    if (candidates.empty()) {
        throw GeneratorContractViolation("greedy: no candidate primitive actions");
    }
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double r = dom.one_step_expected_reward(node, candidates[i]);
        if (r > best) {
            best = r;
            best_idx = i;
        }
    }
    return candidates[best_idx];
}

PrimitiveAction WtPolicy::act(const DomainAdapter& dom, const DomainAdapter::Node& node) {
    const int factors = dom.factor_count();
    if (factors < 1) throw InvalidInput("WtPolicy: domain has no factors");
    if (mode_ == Mode::Single || committed_ < 0 || dom.factor_reached(node, committed_)) {
        double worst = -std::numeric_limits<double>::infinity();
        int pick = 0;
        for (int f = 0; f < factors; ++f) {
            const double u = dom.factor_uncertainty(node, f);
            if (u > worst) {
                worst = u;
                pick = f;
            }
        }
        committed_ = pick;
    }
    const MacroAction approach = dom.approach_macro(node, committed_);
    if (approach.actions.empty()) {
        throw GeneratorContractViolation("WtPolicy: approach macro is empty");
    }
    return approach.actions.front();
}

double epsilon_bound(const BoundInputs& in) {
    if (!(in.delta > 0.0 && in.delta < 1.0)) {
        throw InvalidInput("epsilon_bound: delta must be in (0, 1)");
    }
    if (!(in.gamma > 0.0 && in.gamma < 1.0)) {
        throw InvalidInput("epsilon_bound: discount must be in (0, 1)");
    }
    if (in.depth < 1) throw InvalidInput("epsilon_bound: depth must be >= 1");
    if (in.samples < 1.0) throw InvalidInput("epsilon_bound: samples must be >= 1");
    if (in.macro_count < 1.0) throw InvalidInput("epsilon_bound: macro count must be >= 1");
    if (in.v_max < 0.0) throw InvalidInput("epsilon_bound: v_max must be >= 0");

    const double horizon_term = std::pow(in.gamma, in.depth) * in.v_max;
    const double log_term =
        static_cast<double>(in.depth) * std::log(in.macro_count * in.samples) -
        std::log(in.delta);
    const double sampling_term =
        std::sqrt(in.v_max * in.v_max / in.samples * log_term) / (1.0 - in.gamma);
    return horizon_term + sampling_term;
}

double v_max_from_step_reward(double max_step_reward, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw InvalidInput("v_max_from_step_reward: discount must be in (0, 1)");
    }
    return max_step_reward / (1.0 - gamma);
}

} // namespace pbd
