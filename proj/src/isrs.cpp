#include "pbd/isrs.hpp"

#include <algorithm>
#include <cmath>

namespace pbd::isrs {

namespace {

constexpr double kLinkMeanClamp = 1e-4;

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

double clamp_link_mean(double v) {
    return std::clamp(v, kLinkMeanClamp, 1.0 - kLinkMeanClamp);
}

} // namespace

void IsrsSpec::validate() const {
    if (grid < 1) throw InvalidInput("IsrsSpec: grid side must be >= 1");
    if (rocks.empty()) throw InvalidInput("IsrsSpec: need at least one rock");
    if (beacons.size() != rocks.size()) {
        throw InvalidInput("IsrsSpec: one beacon per rock required");
    }
    if (rocks.size() > 32) throw InvalidInput("IsrsSpec: at most 32 rocks");
    if (!(d0 > 0.0)) throw InvalidInput("IsrsSpec: d0 must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidInput("IsrsSpec: gamma must be in (0,1]");
    auto inside = [&](GridPos p) { return p.x >= 0 && p.x < grid && p.y >= 0 && p.y < grid; };
    for (const GridPos& p : rocks) {
        if (!inside(p)) throw InvalidInput("IsrsSpec: rock outside grid");
    }
    for (const GridPos& p : beacons) {
        if (!inside(p)) throw InvalidInput("IsrsSpec: beacon outside grid");
    }
    if (!inside(start)) throw InvalidInput("IsrsSpec: start outside grid");
    if (!rock_values.empty()) {
        if (rock_values.size() != rocks.size()) {
            throw InvalidInput("IsrsSpec: rock_values size must match rock count");
        }
        for (int v : rock_values) {
            if (v != 0 && v != 1) throw InvalidInput("IsrsSpec: rock values must be 0 or 1");
        }
    }
}

ExpFamilyObservation bernoulli_links(double attenuation) {
    const double att = attenuation;
    ExpFamilyObservation obs;
    obs.link = [att](const Vector& s) {
        const double m = clamp_link_mean(s[0]);
        const double p1 = bernoulli_obs_prob(m, att);
        Vector theta(1);
        theta[0] = std::log(p1 / (1.0 - p1));
        return theta;
    };
    obs.link_jacobian = [att](const Vector& s) {
        const double m = clamp_link_mean(s[0]);
        const double p1 = bernoulli_obs_prob(m, att);
        Matrix y(1, 1);
        y(0, 0) = att / (p1 * (1.0 - p1));
        return y;
    };
    obs.beta_dot = [](const Vector& theta) {
        Vector b(1);
        b[0] = 1.0 / (1.0 + std::exp(-theta[0]));
        return b;
    };
    obs.beta_ddot = [](const Vector& theta) {
        const double p = 1.0 / (1.0 + std::exp(-theta[0]));
        Matrix b(1, 1);
        b(0, 0) = p * (1.0 - p);
        return b;
    };
    return obs;
}

IsrsDomain::IsrsDomain(IsrsSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const int n = spec_.grid;
    const int k = spec_.rock_count();
    att_table_.resize(static_cast<std::size_t>(n) * n * k);
    rock_at_cell_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            for (int i = 0; i < k; ++i) {
                const double dx = x - spec_.beacons[i].x;
                const double dy = y - spec_.beacons[i].y;
                const double d = std::sqrt(dx * dx + dy * dy);
                att_table_[(static_cast<std::size_t>(y) * n + x) * k + i] =
                    std::exp2(-d / spec_.d0);
            }
        }
    }
    for (int i = 0; i < k; ++i) {
        rock_at_cell_[static_cast<std::size_t>(spec_.rocks[i].y) * n + spec_.rocks[i].x] = i;
    }
}

double IsrsDomain::attenuation(GridPos pos, int rock) const {
    return att_table_[(static_cast<std::size_t>(pos.y) * spec_.grid + pos.x) * spec_.rock_count() +
                      rock];
}

int IsrsDomain::rock_at(GridPos pos) const {
    return rock_at_cell_[static_cast<std::size_t>(pos.y) * spec_.grid + pos.x];
}

DomainAdapter::NodeRef IsrsDomain::initial_node() const {
    auto node = std::make_shared<IsrsNode>();
    node->agent = spec_.start;
    node->rocks.assign(spec_.rock_count(), RockBelief{});
    return node;
}

bool IsrsDomain::is_terminal(const Node& node) const {
    return static_cast<const IsrsNode&>(node).terminated;
}

GridPos IsrsDomain::apply_move(GridPos pos, Action a, bool& exited) const {
    exited = false;
    GridPos out = pos;
    switch (a) {
        case North: out.y += 1; break;
        case South: out.y -= 1; break;
        case East: out.x += 1; break;
        case West: out.x -= 1; break;
        case Sample: return pos;
    }
    if (out.x >= spec_.grid) {
        exited = true;
        return pos;
    }
    // Wall collisions clip in place.
    out.x = std::max(out.x, 0);
    out.y = std::clamp(out.y, 0, spec_.grid - 1);
    return out;
}

std::vector<Action> IsrsDomain::shortest_path(GridPos from, GridPos to) const {
    int rem_x = std::abs(to.x - from.x);
    int rem_y = std::abs(to.y - from.y);
    const Action step_x = to.x >= from.x ? East : West;
    const Action step_y = to.y >= from.y ? North : South;
    std::vector<Action> path;
    path.reserve(static_cast<std::size_t>(rem_x + rem_y));
    // Strict alternation while both axes have remaining displacement keeps
    // the path maximally diagonal; the longer axis moves first (x on ties).
    bool take_x = rem_x >= rem_y;
    while (rem_x > 0 || rem_y > 0) {
        if (rem_x == 0) take_x = false;
        if (rem_y == 0) take_x = true;
        if (take_x) {
            path.push_back(step_x);
            --rem_x;
        } else {
            path.push_back(step_y);
            --rem_y;
        }
        take_x = !take_x;
    }
    return path;
}

namespace {

PrimitiveAction make_action(Action a) {
    PrimitiveAction out;
    out.id = a;
    return out;
}

} // namespace

MacroAction IsrsDomain::goto_macro(GridPos from, GridPos to, const std::string& label) const {
    MacroAction m;
    m.label = label;
    for (Action a : shortest_path(from, to)) {
        m.actions.push_back(make_action(a));
    }
    if (m.actions.empty()) {
        // Already at the destination; a macro must contain at least one
        // primitive, and sampling in place is the only stationary action.
        m.actions.push_back(make_action(Sample));
    }
    return m;
}

std::vector<MacroAction> IsrsDomain::generate_macros(const Node& n) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    std::vector<MacroAction> out;
    if (node.terminated) {
        MacroAction idle;
        idle.label = "idle";
        idle.actions.push_back(make_action(Sample));
        out.push_back(std::move(idle));
        return out;
    }
    const int k = spec_.rock_count();
    out.reserve(static_cast<std::size_t>(2 * (2 * k + 1)));
    for (int i = 0; i < k; ++i) {
        out.push_back(goto_macro(node.agent, spec_.rocks[i], "rock" + std::to_string(i)));
    }
    for (int i = 0; i < k; ++i) {
        out.push_back(goto_macro(node.agent, spec_.beacons[i], "beacon" + std::to_string(i)));
    }
    MacroAction exit_macro;
    exit_macro.label = "exit";
    for (int x = node.agent.x; x < spec_.grid; ++x) {
        exit_macro.actions.push_back(make_action(East));
    }
    out.push_back(std::move(exit_macro));

    const int here = rock_at(node.agent);
    if (here >= 0 && (node.collected & (1u << here)) == 0) {
        const std::size_t base = out.size();
        for (std::size_t i = 0; i < base; ++i) {
            MacroAction with_sample;
            with_sample.label = "sample+" + out[i].label;
            with_sample.actions.reserve(out[i].actions.size() + 1);
            with_sample.actions.push_back(make_action(Sample));
            with_sample.actions.insert(with_sample.actions.end(), out[i].actions.begin(),
                                       out[i].actions.end());
            out.push_back(std::move(with_sample));
        }
    }
    return out;
}

std::vector<int> IsrsDomain::required_first_actions(const Node& n) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    const int here = rock_at(node.agent);
    if (!node.terminated && here >= 0 && (node.collected & (1u << here)) == 0) {
        return {Sample};
    }
    return {};
}

// Shared posterior-covariance / mean-spread arithmetic of the 1-D Bernoulli
// channel, linearized at the clamped mean `lin_mean`.
struct IsrsDomain::RockPbd {
    double gain = 0.0;
    double spread_inc = 0.0;
    double posterior_var = 0.0;
    double lik = 0.0;      // p(z=1) at the linearization point
    double beta_ddot = 0.0;

    RockPbd(double pred_var, double lin_mean, double att) {
        lik = bernoulli_obs_prob(clamp_link_mean(lin_mean), att);
        beta_ddot = lik * (1.0 - lik);
        const double y = att / beta_ddot;
        const double denom = y * y * pred_var + 1.0 / beta_ddot;
        gain = pred_var * y / denom;
        spread_inc = pred_var * y * gain;
        posterior_var = 1.0 / (1.0 / pred_var + y * y * beta_ddot);
    }
};

DomainAdapter::DistOutcome IsrsDomain::propagate_distribution(const Node& n,
                                                              const MacroAction& macro,
                                                              bool include_mean_spread) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    auto end = std::make_shared<IsrsEnd>();
    end->agent = node.agent;
    end->collected = node.collected;
    end->terminated = node.terminated;
    end->rocks.resize(node.rocks.size());
    for (std::size_t i = 0; i < node.rocks.size(); ++i) {
        end->rocks[i] = RockDistribution{node.rocks[i].mean, 0.0, node.rocks[i].var};
    }

    DistOutcome out;
    double discount = 1.0;
    for (const PrimitiveAction& pa : macro.actions) {
        if (end->terminated) break;
        const auto a = static_cast<Action>(pa.id);
        double reward = 0.0;
        if (a == Sample) {
            const int here = rock_at(end->agent);
            if (here >= 0 && (end->collected & (1u << here)) == 0) {
                reward = spec_.reward_bad +
                         (spec_.reward_good - spec_.reward_bad) * end->rocks[here].mean_of_means;
                end->collected |= 1u << here;
            }
        } else {
            bool exited = false;
            end->agent = apply_move(end->agent, a, exited);
            if (exited) {
                reward = spec_.reward_exit;
                end->terminated = true;
            }
        }
        out.expected_reward += discount * reward;
        discount *= spec_.gamma;
        if (end->terminated) break;

        for (int i = 0; i < spec_.rock_count(); ++i) {
            if (end->collected & (1u << i)) continue;
            RockDistribution& rock = end->rocks[i];
            const RockPbd upd(rock.var, rock.mean_of_means, attenuation(end->agent, i));
            rock.var = upd.posterior_var;
            if (include_mean_spread) {
                rock.mean_spread += upd.spread_inc;
            }
        }
    }
    out.end = std::move(end);
    return out;
}

DomainAdapter::NodeRef IsrsDomain::sample_posterior(const EndDistribution& e, Rng& rng) const {
    const auto& end = static_cast<const IsrsEnd&>(e);
    auto node = std::make_shared<IsrsNode>();
    node->agent = end.agent;
    node->collected = end.collected;
    node->terminated = end.terminated;
    node->rocks.resize(end.rocks.size());
    for (std::size_t i = 0; i < end.rocks.size(); ++i) {
        const RockDistribution& rd = end.rocks[i];
        double mean = rd.mean_of_means;
        if (rd.mean_spread > 0.0) {
            mean = clamp01(mean + std::sqrt(rd.mean_spread) * rng.gaussian());
        }
        node->rocks[i] = RockBelief{mean, rd.var, mean};
    }
    return node;
}

DomainAdapter::NodeRef IsrsDomain::nominal_node(const EndDistribution& e) const {
    const auto& end = static_cast<const IsrsEnd&>(e);
    auto node = std::make_shared<IsrsNode>();
    node->agent = end.agent;
    node->collected = end.collected;
    node->terminated = end.terminated;
    node->rocks.resize(end.rocks.size());
    for (std::size_t i = 0; i < end.rocks.size(); ++i) {
        const double mean = clamp01(end.rocks[i].mean_of_means);
        node->rocks[i] = RockBelief{mean, end.rocks[i].var, mean};
    }
    return node;
}

double IsrsDomain::bernoulli_posterior(double prior, int z, double attenuation) {
    const double l_good = z == 1 ? 0.5 + 0.5 * attenuation : 0.5 - 0.5 * attenuation;
    const double l_bad = z == 1 ? 0.5 - 0.5 * attenuation : 0.5 + 0.5 * attenuation;
    const double denom = prior * l_good + (1.0 - prior) * l_bad;
    if (denom <= 0.0) return prior;
    return prior * l_good / denom;
}

void IsrsDomain::gaussian_rock_update(double& mean, double& var, int z, double attenuation) {
    const RockPbd upd(var, mean, attenuation);
    // z_tilde - theta_hat = (z - beta_dot) / beta_ddot with beta_dot = lik.
    mean = clamp01(mean + upd.gain * (static_cast<double>(z) - upd.lik) / upd.beta_ddot);
    var = upd.posterior_var;
}

DomainAdapter::TrajectoryOutcome IsrsDomain::sample_trajectory(const Node& n,
                                                               const MacroAction& macro, Rng& rng,
                                                               BeliefRepr repr) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    auto cur = std::make_shared<IsrsNode>(node);

    TrajectoryOutcome out;
    double discount = 1.0;
    for (const PrimitiveAction& pa : macro.actions) {
        if (cur->terminated) break;
        const auto a = static_cast<Action>(pa.id);
        double reward = 0.0;
        if (a == Sample) {
            const int here = rock_at(cur->agent);
            if (here >= 0 && (cur->collected & (1u << here)) == 0) {
                const double value = repr == BeliefRepr::Discrete ? cur->rocks[here].p
                                                                  : clamp01(cur->rocks[here].mean);
                reward = spec_.reward_bad + (spec_.reward_good - spec_.reward_bad) * value;
                cur->collected |= 1u << here;
            }
        } else {
            bool exited = false;
            cur->agent = apply_move(cur->agent, a, exited);
            if (exited) {
                reward = spec_.reward_exit;
                cur->terminated = true;
            }
        }
        out.discounted_reward += discount * reward;
        discount *= spec_.gamma;
        if (cur->terminated) break;

        for (int i = 0; i < spec_.rock_count(); ++i) {
            if (cur->collected & (1u << i)) continue;
            RockBelief& rock = cur->rocks[i];
            const double att = attenuation(cur->agent, i);
            if (repr == BeliefRepr::Discrete) {
                const double predictive = bernoulli_obs_prob(rock.p, att);
                const int z = rng.uniform() < predictive ? 1 : 0;
                rock.p = bernoulli_posterior(rock.p, z, att);
                rock.mean = rock.p;
            } else {
                const double predictive = bernoulli_obs_prob(clamp01(rock.mean), att);
                const int z = rng.uniform() < predictive ? 1 : 0;
                gaussian_rock_update(rock.mean, rock.var, z, att);
                rock.p = rock.mean;
            }
        }
    }
    out.end = std::move(cur);
    return out;
}

std::vector<PrimitiveAction> IsrsDomain::greedy_candidates(const Node&) const {
    std::vector<PrimitiveAction> out;
    out.reserve(kActionCount);
    for (int a = 0; a < kActionCount; ++a) {
        out.push_back(make_action(static_cast<Action>(a)));
    }
    return out;
}

double IsrsDomain::one_step_expected_reward(const Node& n, const PrimitiveAction& pa) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    if (node.terminated) return 0.0;
    const auto a = static_cast<Action>(pa.id);
    if (a == Sample) {
        const int here = rock_at(node.agent);
        if (here >= 0 && (node.collected & (1u << here)) == 0) {
            return spec_.reward_bad +
                   (spec_.reward_good - spec_.reward_bad) * clamp01(node.rocks[here].mean);
        }
        return 0.0;
    }
    if (a == East && node.agent.x == spec_.grid - 1) return spec_.reward_exit;
    return 0.0;
}

double IsrsDomain::factor_uncertainty(const Node& n, int factor) const {
    return static_cast<const IsrsNode&>(n).rocks[static_cast<std::size_t>(factor)].var;
}

MacroAction IsrsDomain::approach_macro(const Node& n, int factor) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    return goto_macro(node.agent, spec_.rocks[static_cast<std::size_t>(factor)],
                      "rock" + std::to_string(factor));
}

bool IsrsDomain::factor_reached(const Node& n, int factor) const {
    return static_cast<const IsrsNode&>(n).agent == spec_.rocks[static_cast<std::size_t>(factor)];
}

IsrsState IsrsDomain::initial_state(Rng& rng) const {
    IsrsState state;
    state.agent = spec_.start;
    if (!spec_.rock_values.empty()) {
        state.rock_values = spec_.rock_values;
    } else {
        state.rock_values.resize(spec_.rocks.size());
        for (int& v : state.rock_values) {
            v = rng.uniform() < 0.5 ? 1 : 0;
        }
    }
    return state;
}

IsrsDomain::StepResult IsrsDomain::step(const IsrsState& state, const PrimitiveAction& pa,
                                        Rng&) const {
    StepResult out;
    out.state = state;
    if (state.terminated) return out;
    const auto a = static_cast<Action>(pa.id);
    if (a == Sample) {
        const int here = rock_at(state.agent);
        if (here >= 0 && (state.collected & (1u << here)) == 0) {
            out.reward = state.rock_values[here] == 1 ? spec_.reward_good : spec_.reward_bad;
            out.state.collected |= 1u << here;
        }
    } else {
        bool exited = false;
        out.state.agent = apply_move(state.agent, a, exited);
        if (exited) {
            out.reward = spec_.reward_exit;
            out.state.terminated = true;
        }
    }
    return out;
}

IsrsObservation IsrsDomain::observe(const IsrsState& state, Rng& rng) const {
    IsrsObservation obs;
    obs.z.resize(state.rock_values.size());
    for (std::size_t i = 0; i < state.rock_values.size(); ++i) {
        const double p1 = bernoulli_obs_prob(static_cast<double>(state.rock_values[i]),
                                             attenuation(state.agent, static_cast<int>(i)));
        obs.z[i] = rng.uniform() < p1 ? 1 : 0;
    }
    return obs;
}

DomainAdapter::NodeRef IsrsDomain::execute_update(const Node& n, const PrimitiveAction& pa,
                                                  const IsrsObservation& obs) const {
    const auto& node = static_cast<const IsrsNode&>(n);
    auto cur = std::make_shared<IsrsNode>(node);
    if (cur->terminated) return cur;
    const auto a = static_cast<Action>(pa.id);
    if (a == Sample) {
        const int here = rock_at(cur->agent);
        if (here >= 0 && (cur->collected & (1u << here)) == 0) {
            cur->collected |= 1u << here;
        }
    } else {
        bool exited = false;
        cur->agent = apply_move(cur->agent, a, exited);
        if (exited) {
            cur->terminated = true;
            return cur;
        }
    }
    for (int i = 0; i < spec_.rock_count(); ++i) {
        if (cur->collected & (1u << i)) continue;
        RockBelief& rock = cur->rocks[i];
        const double att = attenuation(cur->agent, i);
        gaussian_rock_update(rock.mean, rock.var, obs.z[static_cast<std::size_t>(i)], att);
        rock.p = bernoulli_posterior(rock.p, obs.z[static_cast<std::size_t>(i)], att);
    }
    return cur;
}

} // namespace pbd::isrs
