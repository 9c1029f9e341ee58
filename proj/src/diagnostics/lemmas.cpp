#include "tsrsr/diagnostics/lemmas.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/linalg.hpp"
#include "tsrsr/parallel.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::diagnostics {

namespace {

constexpr int kFactors = 5;

Eigen::MatrixXd correlation(int dim, CovarianceKind kind, RngStream& rng) {
    switch (kind) {
        case CovarianceKind::Diagonal: return Eigen::MatrixXd::Identity(dim, dim);
        case CovarianceKind::Correlated: {
            Eigen::MatrixXd r = Eigen::MatrixXd::Constant(dim, dim, 0.9);
            r.diagonal().setOnes();
            return r;
        }
        case CovarianceKind::Random: break;
    }
    Eigen::MatrixXd loadings(dim, kFactors);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < kFactors; ++k) loadings(i, k) = rng.gaussian();
    Eigen::MatrixXd cov = loadings * loadings.transpose();
    for (int i = 0; i < dim; ++i) cov(i, i) += 0.1 + rng.uniform();
    const Eigen::VectorXd inv_sd = cov.diagonal().cwiseSqrt().cwiseInverse();
    return inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
}

Eigen::MatrixXd lower_factor(const Eigen::MatrixXd& cov) {
    gp::JitterPolicy policy;
    policy.try_without = true;
    return gp::robust_cholesky(cov, policy).lower;
}

void check(int dim, int n_draws) {
    if (dim < 1) throw InvalidArgument("lemma check: dimension must be positive");
    if (n_draws < 1) throw InvalidArgument("lemma check: need at least one draw");
}

}  // namespace

double verify_max_ratio_lemma(int dim, double delta, int n_draws, std::uint64_t seed, CovarianceKind kind,
                              int workers) {
    check(dim, n_draws);
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    const double threshold = std::sqrt(2.0 * std::log(static_cast<double>(dim) / delta));
    std::vector<char> violated(static_cast<std::size_t>(n_draws), 0);
    parallel_for(static_cast<std::size_t>(n_draws), static_cast<std::size_t>(std::max(workers, 1)), [&](std::size_t k) {
        RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        Eigen::VectorXd mean(dim), sd(dim);
        for (int i = 0; i < dim; ++i) mean[i] = rng.gaussian();
        for (int i = 0; i < dim; ++i) sd[i] = std::sqrt(0.05 + 0.95 * rng.uniform());
        const Eigen::MatrixXd cov = sd.asDiagonal() * correlation(dim, kind, rng) * sd.asDiagonal();
        const Eigen::VectorXd y = mean + lower_factor(cov).triangularView<Eigen::Lower>() * rng.gaussian_vector(dim);
        Eigen::Index top = 0;
        y.maxCoeff(&top);
        violated[k] = (y[top] - mean[top]) / sd[top] > threshold;
    });
    double count = 0.0;
    for (char v : violated) count += v;
    return count / n_draws;
}

MaxSquareEstimate verify_max_square_lemma(int dim, int n_draws, std::uint64_t seed, double variance_scale,
                                          CovarianceKind kind, int workers) {
    check(dim, n_draws);
    if (!(variance_scale > 0.0)) throw InvalidArgument("variance scale must be positive");
    std::vector<double> samples(static_cast<std::size_t>(n_draws), 0.0);
    parallel_for(static_cast<std::size_t>(n_draws), static_cast<std::size_t>(std::max(workers, 1)), [&](std::size_t k) {
        RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
        const Eigen::MatrixXd cov = variance_scale * correlation(dim, kind, rng);
        const Eigen::VectorXd y = lower_factor(cov).triangularView<Eigen::Lower>() * rng.gaussian_vector(dim);
        samples[k] = y.cwiseAbs2().maxCoeff();
    });
    const Eigen::Map<const Eigen::VectorXd> s(samples.data(), n_draws);
    MaxSquareEstimate out;
    out.mean = s.mean();
    const double var = n_draws > 1 ? (s.array() - out.mean).square().sum() / (n_draws - 1) : 0.0;
    out.standard_error = std::sqrt(var / n_draws);
    out.bound = 6.0 * std::log(static_cast<double>(dim));
    return out;
}

}  // namespace tsrsr::diagnostics
