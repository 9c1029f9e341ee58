#include "tsrsr/gp/posterior.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/linalg.hpp"

namespace tsrsr::gp {

Dataset::Dataset(Eigen::Index dim, double noise_stddev)
    : inputs_(0, dim), targets_(0), noise_stddev_(noise_stddev) {
    if (dim < 1) throw InvalidArgument("dataset dimension must be positive");
    if (!(noise_stddev > 0.0) || !std::isfinite(noise_stddev))
        throw InvalidArgument("noise standard deviation must be positive");
}

Dataset::Dataset(Eigen::MatrixXd inputs, Eigen::VectorXd targets, double noise_stddev)
    : inputs_(std::move(inputs)), targets_(std::move(targets)), noise_stddev_(noise_stddev) {
    if (inputs_.cols() < 1) throw InvalidArgument("dataset dimension must be positive");
    if (inputs_.rows() != targets_.size()) throw InvalidArgument("dataset inputs and targets differ in length");
    if (!inputs_.allFinite() || !targets_.allFinite()) throw InvalidArgument("dataset contains non-finite values");
    if (!(noise_stddev > 0.0) || !std::isfinite(noise_stddev))
        throw InvalidArgument("noise standard deviation must be positive");
}

void Dataset::add(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
    if (x.size() != dimension()) throw InvalidArgument("dataset add: dimension mismatch");
    if (!x.allFinite() || !std::isfinite(y)) throw InvalidArgument("dataset add: non-finite value");
    const Eigen::Index n = size();
    inputs_.conservativeResize(n + 1, Eigen::NoChange);
    inputs_.row(n) = x.transpose();
    targets_.conservativeResize(n + 1);
    targets_[n] = y;
}

PosteriorState::PosteriorState(const Dataset& data, const KernelSpec& kernel) {
    if (data.dimension() != kernel.dimension())
        throw InvalidArgument("fit_posterior: data dimension does not match kernel dimension");
    auto impl = std::make_shared<Impl>(Impl{data, kernel, Eigen::MatrixXd(0, 0), Eigen::VectorXd(0), 0.0});
    if (data.size() > 0) {
        Eigen::MatrixXd system = kernel.gram(data.inputs());
        system.diagonal().array() += data.noise_stddev() * data.noise_stddev();
        JitterPolicy policy;
        policy.try_without = true;
        CholeskyFactor chol = robust_cholesky(system, policy);
        impl->factor = std::move(chol.lower);
        impl->jitter = chol.jitter;
        const Eigen::MatrixXd& l = impl->factor;
        impl->alpha = l.triangularView<Eigen::Lower>().solve(data.targets());
        l.triangularView<Eigen::Lower>().transpose().solveInPlace(impl->alpha);
    }
    impl_ = std::move(impl);
}

MeanVar PosteriorState::mean_var(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    const KernelSpec& k = impl_->kernel;
    if (x.size() != k.dimension()) throw InvalidArgument("posterior_mean_var: dimension mismatch");
    const double prior = k(x, x);
    if (impl_->data.size() == 0) return {0.0, prior};
    const Eigen::VectorXd kx = k.cross(impl_->data.inputs(), x);
    const Eigen::VectorXd v = impl_->factor.triangularView<Eigen::Lower>().solve(kx);
    return {kx.dot(impl_->alpha), std::max(0.0, prior - v.squaredNorm())};
}

Eigen::MatrixXd PosteriorState::whitened_cross(const Eigen::MatrixXd& points) const {
    const Eigen::MatrixXd kxp = impl_->kernel.gram(impl_->data.inputs(), points);
    return impl_->factor.triangularView<Eigen::Lower>().solve(kxp);
}

Prediction PosteriorState::predict(const Eigen::MatrixXd& points) const {
    const KernelSpec& k = impl_->kernel;
    if (points.cols() != k.dimension()) throw InvalidArgument("predict: dimension mismatch");
    Prediction out{Eigen::VectorXd::Zero(points.rows()),
                   Eigen::VectorXd::Constant(points.rows(), k.signal_variance())};
    if (impl_->data.size() == 0) return out;
    const Eigen::MatrixXd kxp = k.gram(impl_->data.inputs(), points);
    const Eigen::MatrixXd w = impl_->factor.triangularView<Eigen::Lower>().solve(kxp);
    out.mean = kxp.transpose() * impl_->alpha;
    out.variance = (out.variance - w.colwise().squaredNorm().transpose()).cwiseMax(0.0);
    return out;
}

Eigen::MatrixXd PosteriorState::covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
    Eigen::MatrixXd prior = impl_->kernel.gram(a, b);
    if (impl_->data.size() == 0) return prior;
    return prior - whitened_cross(a).transpose() * whitened_cross(b);
}

PosteriorState fit_posterior(const Dataset& data, const KernelSpec& spec) { return PosteriorState(data, spec); }

MeanVar posterior_mean_var(const PosteriorState& state, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return state.mean_var(x);
}

}  // namespace tsrsr::gp
