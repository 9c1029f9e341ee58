#pragma once

// Test-side reference implementations. Nothing here calls into the library's
// kernels or factorizations; everything is a dense, textbook evaluation.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

using Kernel = std::function<double(const VectorXd&, const VectorXd&)>;

inline double scaled_distance(const VectorXd& a, const VectorXd& b, const VectorXd& ell) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = (a[i] - b[i]) / ell[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// k = s exp(-r^2 / 2)
inline Kernel squared_exponential(VectorXd ell, double s = 1.0) {
    return [ell, s](const VectorXd& a, const VectorXd& b) {
        const double r = scaled_distance(a, b, ell);
        return s * std::exp(-0.5 * r * r);
    };
}

// General Matern through the modified Bessel function of the second kind:
// k = s 2^{1-nu} / Gamma(nu) (sqrt(2 nu) r)^nu K_nu(sqrt(2 nu) r).
inline double matern_profile(double nu, double r) {
    if (r == 0.0) return 1.0;
    const double z = std::sqrt(2.0 * nu) * r;
    return std::pow(2.0, 1.0 - nu) / std::tgamma(nu) * std::pow(z, nu) * std::cyl_bessel_k(nu, z);
}

inline Kernel matern(double nu, VectorXd ell, double s = 1.0) {
    return [nu, ell, s](const VectorXd& a, const VectorXd& b) { return s * matern_profile(nu, scaled_distance(a, b, ell)); };
}

inline MatrixXd gram(const Kernel& k, const MatrixXd& a, const MatrixXd& b) {
    MatrixXd out(a.rows(), b.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.rows(); ++j) out(i, j) = k(a.row(i).transpose(), b.row(j).transpose());
    return out;
}

inline VectorXd column(const Kernel& k, const MatrixXd& a, const VectorXd& x) {
    VectorXd out(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) out[i] = k(a.row(i).transpose(), x);
    return out;
}

struct MeanVar {
    double mean;
    double variance;
};

// Posterior through an explicit inverse of K + noise^2 I.
inline MeanVar dense_posterior(const Kernel& k, const MatrixXd& X, const VectorXd& y, double noise,
                               const VectorXd& x) {
    if (X.rows() == 0) return {0.0, k(x, x)};
    MatrixXd system = gram(k, X, X);
    system.diagonal().array() += noise * noise;
    const MatrixXd inv = system.fullPivLu().inverse();
    const VectorXd kx = column(k, X, x);
    return {kx.dot(inv * y), k(x, x) - kx.dot(inv * kx)};
}

// Variance after observing X and the pending rows P, all with noise: the
// block matrix [[K_XX, K_XP], [K_PX, K_PP]] + noise^2 I inverted densely.
inline double block_conditional_variance(const Kernel& k, const MatrixXd& X, const MatrixXd& P, double noise,
                                         const VectorXd& x) {
    MatrixXd Z(X.rows() + P.rows(), std::max(X.cols(), P.cols()));
    if (X.rows()) Z.topRows(X.rows()) = X;
    if (P.rows()) Z.bottomRows(P.rows()) = P;
    if (Z.rows() == 0) return k(x, x);
    MatrixXd system = gram(k, Z, Z);
    system.diagonal().array() += noise * noise;
    const VectorXd kz = column(k, Z, x);
    return k(x, x) - kz.dot(system.fullPivLu().solve(kz));
}

// 1/2 log det(I + noise^-2 K_A), through the LU determinant.
inline double logdet_information_gain(const Kernel& k, const MatrixXd& A, double noise) {
    MatrixXd m = gram(k, A, A) / (noise * noise);
    m.diagonal().array() += 1.0;
    return 0.5 * std::log(m.fullPivLu().determinant());
}

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
inline double normal_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::numbers::sqrt2)); }

inline double expected_improvement(double mean, double sigma, double best) {
    if (sigma <= 0.0) return std::max(mean - best, 0.0);
    const double z = (mean - best) / sigma;
    return (mean - best) * normal_cdf(z) + sigma * normal_pdf(z);
}

// Random points in [lo, hi]^d from a test-owned engine.
inline MatrixXd random_points(std::mt19937_64& gen, Eigen::Index n, Eigen::Index d, double lo = 0.0,
                              double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    MatrixXd out(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out(i, j) = u(gen);
    return out;
}

inline VectorXd random_vector(std::mt19937_64& gen, Eigen::Index n) {
    std::normal_distribution<double> g;
    VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = g(gen);
    return out;
}

// Joint Gaussian sampler with its own engine and an eigen-decomposition
// square root (deliberately not a Cholesky factor).
class IndependentSampler {
public:
    IndependentSampler(VectorXd mean, const MatrixXd& cov, std::uint64_t seed) : mean_(std::move(mean)), gen_(seed) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
        root_ = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }
    VectorXd draw() {
        std::normal_distribution<double> g;
        VectorXd z(mean_.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = g(gen_);
        return mean_ + root_ * z;
    }

private:
    VectorXd mean_;
    MatrixXd root_;
    std::mt19937_64 gen_;
};

// Dense posterior covariance over candidate rows C.
inline MatrixXd dense_posterior_covariance(const Kernel& k, const MatrixXd& X, double noise, const MatrixXd& C) {
    const MatrixXd kcc = gram(k, C, C);
    if (X.rows() == 0) return kcc;
    MatrixXd system = gram(k, X, X);
    system.diagonal().array() += noise * noise;
    const MatrixXd kxc = gram(k, X, C);
    return kcc - kxc.transpose() * system.fullPivLu().solve(kxc);
}

}  // namespace oracle
