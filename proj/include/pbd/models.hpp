#pragma once

#include <functional>
#include <variant>

#include "pbd/linalg.hpp"

namespace pbd {

// Linear-Gaussian dynamics s' = A s + B a + eps, eps ~ N(0, P).
struct LinearDynamics {
    Matrix A;
    Matrix B;
    Matrix P;

    Eigen::Index state_dim() const { return A.rows(); }
};

// Linear-Gaussian observation z = C s + delta, delta ~ N(0, Q), Q positive
// definite.
struct LinearGaussianObservation {
    Matrix C;
    Matrix Q;
};

// Exponential-family observation model p(z|theta) with canonical parameter
// theta = link(s). The carrier term kappa(z) cancels out of every belief
// update, so it is never represented.
struct ExpFamilyObservation {
    // Canonical link W: state -> canonical parameter theta.
    std::function<Vector(const Vector&)> link;
    // Jacobian Y(s) = d theta / d s, evaluated at the linearization state.
    std::function<Matrix(const Vector&)> link_jacobian;
    // First derivative of the normalizer at theta: E[z | theta].
    std::function<Vector(const Vector&)> beta_dot;
    // Second derivative of the normalizer at theta: Var[z | theta], must be
    // symmetric positive definite wherever evaluated.
    std::function<Matrix(const Vector&)> beta_ddot;
};

using ObservationModel = std::variant<LinearGaussianObservation, ExpFamilyObservation>;

} // namespace pbd
