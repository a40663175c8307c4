#pragma once

#include <vector>

#include "pbd/linalg.hpp"
#include "pbd/rng.hpp"

namespace pbd {

// Multivariate Gaussian N(mean, cov). cov must be symmetric PSD.
struct Gaussian {
    Vector mean;
    Matrix cov;

    Eigen::Index dim() const { return mean.size(); }
};

// Density of g at x. Requires a strictly positive definite covariance.
double gaussian_pdf(const Gaussian& g, const Vector& x);
double gaussian_log_pdf(const Gaussian& g, const Vector& x);

// One draw from g: mean + A*q with cov = A*A^T and q i.i.d. standard normal.
Vector sample_gaussian(const Gaussian& g, Rng& rng);

// Standard normal CDF.
double normal_cdf(double x);

// Default cap on the total order accepted by central_moment; the pairing sum
// has (N-1)!! terms, which grows factorially.
inline constexpr int kDefaultMomentOrderCap = 10;

// Central moment E[prod_i (s_i - mu_i)^{index_i}] of a zero-mean Gaussian
// with covariance cov, via the pairing (Isserlis) expansion: zero for odd
// total order, otherwise the sum over all perfect matchings of products of
// covariance entries.
double central_moment(const Matrix& cov, const std::vector<int>& index,
                      int order_cap = kDefaultMomentOrderCap);

} // namespace pbd
