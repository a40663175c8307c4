#include "pbd/gaussian.hpp"

#include <cmath>
#include <unordered_map>

namespace pbd {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
} // namespace

double gaussian_log_pdf(const Gaussian& g, const Vector& x) {
    if (x.size() != g.mean.size() || g.cov.rows() != g.mean.size()) {
        throw DimensionError("gaussian_pdf: dimension mismatch");
    }
    Eigen::LLT<Matrix> llt(symmetrize(g.cov));
    if (llt.info() != Eigen::Success) {
        throw SingularCovariance("gaussian_pdf: covariance not positive definite");
    }
    const Vector diff = x - g.mean;
    const Vector half = llt.matrixL().solve(diff);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < g.cov.rows(); ++i) {
        log_det += 2.0 * std::log(llt.matrixL()(i, i));
    }
    return -0.5 * (half.squaredNorm() + log_det + kLog2Pi * static_cast<double>(x.size()));
}

double gaussian_pdf(const Gaussian& g, const Vector& x) {
    return std::exp(gaussian_log_pdf(g, x));
}

Vector sample_gaussian(const Gaussian& g, Rng& rng) {
    if (g.cov.rows() != g.mean.size()) {
        throw DimensionError("sample_gaussian: dimension mismatch");
    }
    const Matrix a = psd_sqrt(g.cov);
    Vector q(g.mean.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) {
        q[i] = rng.gaussian();
    }
    return g.mean + a * q;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

namespace {

// Coordinates packed 6 bits each; total order is capped at 10 so the key
// always fits one 64-bit word.
std::uint64_t pack_key(const std::vector<int>& coords) {
    std::uint64_t key = 1;
    for (int c : coords) {
        key = (key << 6) | static_cast<std::uint64_t>(c + 1);
    }
    return key;
}

double pairing_sum(std::vector<int>& coords, const Matrix& cov,
                   std::unordered_map<std::uint64_t, double>& memo) {
    if (coords.empty()) return 1.0;
    const bool memoizable = coords.size() <= 10; // key packs 6 bits per coord
    const std::uint64_t key = memoizable ? pack_key(coords) : 0;
    if (memoizable) {
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    // Pair the first coordinate with each remaining one in turn.
    const int first = coords.front();
    double total = 0.0;
    for (std::size_t j = 1; j < coords.size(); ++j) {
        const double sigma = cov(first, coords[j]);
        std::vector<int> rest;
        rest.reserve(coords.size() - 2);
        for (std::size_t k = 1; k < coords.size(); ++k) {
            if (k != j) rest.push_back(coords[k]);
        }
        total += sigma * pairing_sum(rest, cov, memo);
    }
    if (memoizable) memo.emplace(key, total);
    return total;
}

} // namespace

double central_moment(const Matrix& cov, const std::vector<int>& index, int order_cap) {
    if (cov.rows() != cov.cols()) {
        throw DimensionError("central_moment: covariance must be square");
    }
    if (static_cast<Eigen::Index>(index.size()) != cov.rows()) {
        throw DimensionError("central_moment: index size must match covariance dimension");
    }
    int order = 0;
    for (int e : index) {
        if (e < 0) throw InvalidInput("central_moment: negative exponent");
        order += e;
    }
    if (order > order_cap) {
        throw UnsupportedOrder("central_moment: total order " + std::to_string(order) +
                               " exceeds cap " + std::to_string(order_cap));
    }
    if (order == 0) return 1.0;
    if (order % 2 == 1) return 0.0;

    std::vector<int> coords;
    coords.reserve(order);
    for (std::size_t d = 0; d < index.size(); ++d) {
        for (int r = 0; r < index[d]; ++r) {
            coords.push_back(static_cast<int>(d));
        }
    }
    std::unordered_map<std::uint64_t, double> memo;
    return pairing_sum(coords, cov, memo);
}

} // namespace pbd
