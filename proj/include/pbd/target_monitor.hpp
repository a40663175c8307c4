#pragma once

#include "pbd/planner.hpp"

namespace pbd::tm {

struct Rect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

// One ground target: noisy unicycle with fixed nominal velocities. The
// per-step noise is specified directly as position/heading covariance
// (diagonal), which is also the process noise the planning model uses.
struct TargetSpec {
    double x = 0, y = 0, theta = 0; // initial pose
    double speed = 1.0;             // nominal translational velocity per step
    double turn_rate = 0.0;         // nominal rotational velocity per step
    double noise_xy = 0.3;          // std of translational noise per axis
    double noise_theta = 0.05;      // std of heading noise
};

struct TmSpec {
    double world_x = 100.0, world_y = 100.0;
    double min_alt = 1.0, max_alt = 20.0;
    std::vector<Rect> regions;
    std::vector<TargetSpec> targets;

    // Agent (helicopter).
    double agent_x = 50.0, agent_y = 50.0, agent_h = 10.0;
    double max_step = 5.0;    // maximum primitive displacement length
    double agent_noise = 0.1; // std of motion noise per axis
    std::vector<double> altitudes = {5.0, 15.0};
    int hover_steps = 4;

    // Sensor: observation noise covariance grows with altitude (c1), with
    // belief-relative target offset (c2/h), plus a floor (c3); the camera
    // footprint is a disc of radius fov_slope * altitude.
    double c1 = 0.02;
    double c2 = 0.05;
    double c3 = 0.01;
    double fov_slope = 1.5;
    double theta_obs_var = 0.1; // heading observation noise variance

    // Rewards.
    double reward_correct = 10.0;
    double reward_wrong = -10.0;
    double motion_cost = 0.1; // per meter of commanded motion
    double gamma = 0.99;

    int target_count() const { return static_cast<int>(targets.size()); }
    void validate() const;
};

// True world state (simulator side).
struct TmState {
    Eigen::Vector3d agent;                // x, y, h
    std::vector<Eigen::Vector3d> targets; // x, y, theta
};

struct TmObservation {
    struct TargetObs {
        bool seen = false;
        Eigen::Vector3d z;   // observed x, y, theta
        Eigen::Matrix3d cov; // realized observation noise covariance
    };
    Eigen::Vector3d agent_pose; // the agent's own pose is fully observable
    std::vector<TargetObs> targets;
};

// Expected translational observation covariance under the predicted belief:
//   (c1*h + c3) I + (c2/h) ((mu_xy - p_a)(mu_xy - p_a)^T + Sigma_xy).
Matrix expected_obs_cov_xy(const Vector& belief_mean_xy, const Matrix& belief_cov_xy,
                           const Eigen::Vector3d& agent, const TmSpec& spec);

// Realized translational observation covariance at a known target position.
Eigen::Matrix2d obs_cov_at(const Eigen::Vector2d& target_xy, const Eigen::Vector3d& agent,
                           const TmSpec& spec);

// Probability mass of a bivariate Gaussian inside an axis-aligned rectangle
// (conditional-CDF quadrature; exact product form when the covariance is
// diagonal).
double rect_mass(const Vector& mean_xy, const Matrix& cov_xy, const Rect& rect);

// Report rule for one target: report "in region" iff the expected report
// reward is positive; reporting "out" is worth exactly zero.
struct ReportDecision {
    bool report_in = false;
    double p_in = 0.0;
    double expected_reward = 0.0;
};
ReportDecision report_decision(const Vector& mean_xy, const Matrix& cov_xy, const TmSpec& spec);

double wrap_angle(double theta); // to (-pi, pi]

class TmDomain final : public DomainAdapter {
public:
    explicit TmDomain(TmSpec spec);

    const TmSpec& spec() const { return spec_; }

    struct TargetBelief {
        Eigen::Vector3d mean;
        Eigen::Matrix3d cov;
    };
    struct TmNode : Node {
        Eigen::Vector3d agent;
        std::vector<TargetBelief> targets;
    };
    struct TargetDistribution {
        Eigen::Vector3d mean_of_means;
        Eigen::Matrix3d mean_spread;
        Eigen::Matrix3d var;
    };
    struct TmEnd : EndDistribution {
        Eigen::Vector3d agent;
        std::vector<TargetDistribution> targets;
    };

    NodeRef initial_node() const;

    // --- DomainAdapter ---
    bool is_terminal(const Node& node) const override { return false; }
    std::vector<MacroAction> generate_macros(const Node& node) const override;
    DistOutcome propagate_distribution(const Node& node, const MacroAction& macro,
                                       bool include_mean_spread) const override;
    NodeRef sample_posterior(const EndDistribution& end, Rng& rng) const override;
    NodeRef nominal_node(const EndDistribution& end) const override;
    TrajectoryOutcome sample_trajectory(const Node& node, const MacroAction& macro, Rng& rng,
                                        BeliefRepr repr) const override;
    std::vector<PrimitiveAction> greedy_candidates(const Node& node) const override;
    double one_step_expected_reward(const Node& node, const PrimitiveAction& action) const override;
    int factor_count() const override { return spec_.target_count(); }
    double factor_uncertainty(const Node& node, int factor) const override;
    MacroAction approach_macro(const Node& node, int factor) const override;
    bool factor_reached(const Node& node, int factor) const override;

    // --- simulator side (harness) ---
    TmState initial_state() const;
    struct StepResult {
        TmState state;
        double reward = 0.0; // motion cost; report reward is added after the
                             // post-observation belief update
    };
    StepResult step(const TmState& state, const PrimitiveAction& action, Rng& rng) const;
    TmObservation observe(const TmState& state, Rng& rng) const;
    NodeRef execute_update(const Node& node, const PrimitiveAction& action,
                           const TmObservation& obs) const;
    // Realized report reward for the current belief against the true state.
    double report_reward(const Node& node, const TmState& state) const;

    bool in_fov(const Eigen::Vector3d& agent, const Eigen::Vector2d& xy) const;

private:
    Eigen::Vector3d clip_agent(Eigen::Vector3d pose) const;
    Eigen::Vector3d unicycle_mean_step(const Eigen::Vector3d& pose, const TargetSpec& t) const;
    Eigen::Matrix3d process_noise(const TargetSpec& t) const;
    MacroAction path_macro(const Eigen::Vector3d& from, const Eigen::Vector3d& to,
                           const std::string& label) const;
    double report_term(const Eigen::Vector2d& mean_xy, const Eigen::Matrix2d& cov_xy) const;

    TmSpec spec_;
};

} // namespace pbd::tm
