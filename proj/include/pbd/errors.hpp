#pragma once

#include <stdexcept>
#include <string>

namespace pbd {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Covariance matrix is singular (or not positive definite) where a strictly
// positive definite matrix is required.
class SingularCovariance : public Error {
public:
    explicit SingularCovariance(const std::string& what) : Error(what) {}
};

// A matrix decomposition or linear solve failed beyond repair.
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what) : Error(what) {}
};

// Requested Gaussian moment order exceeds the configured cap.
class UnsupportedOrder : public Error {
public:
    explicit UnsupportedOrder(const std::string& what) : Error(what) {}
};

// Operand dimensions do not agree.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Exponential-family link functions could not be evaluated at the
// linearization point (e.g. beta_ddot not positive definite).
class LinkEvaluationError : public Error {
public:
    explicit LinkEvaluationError(const std::string& what) : Error(what) {}
};

// A macro-action generator broke its contract (empty set, or missing
// required first actions).
class GeneratorContractViolation : public Error {
public:
    explicit GeneratorContractViolation(const std::string& what) : Error(what) {}
};

// A planner variant was applied to a domain that cannot support it
// (e.g. discrete-belief search on a continuous domain).
class UnsupportedDomain : public Error {
public:
    explicit UnsupportedDomain(const std::string& what) : Error(what) {}
};

// Agent pose outside the valid workspace (e.g. nonpositive altitude).
class InvalidPose : public Error {
public:
    explicit InvalidPose(const std::string& what) : Error(what) {}
};

// Generic invalid argument (bad config value, out-of-range parameter).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

} // namespace pbd
