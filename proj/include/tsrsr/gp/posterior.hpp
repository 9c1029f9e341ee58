#pragma once

#include <memory>

#include <Eigen/Core>

#include "tsrsr/gp/kernel.hpp"

namespace tsrsr::gp {

/// Noisy observations (one input per row).
class Dataset {
public:
    explicit Dataset(Eigen::Index dim, double noise_stddev);
    Dataset(Eigen::MatrixXd inputs, Eigen::VectorXd targets, double noise_stddev);

    void add(const Eigen::Ref<const Eigen::VectorXd>& x, double y);

    const Eigen::MatrixXd& inputs() const noexcept { return inputs_; }
    const Eigen::VectorXd& targets() const noexcept { return targets_; }
    double noise_stddev() const noexcept { return noise_stddev_; }
    Eigen::Index size() const noexcept { return inputs_.rows(); }
    Eigen::Index dimension() const noexcept { return inputs_.cols(); }

    bool operator==(const Dataset&) const = default;

private:
    Eigen::MatrixXd inputs_;
    Eigen::VectorXd targets_;
    double noise_stddev_;
};

struct MeanVar {
    double mean;
    double variance;
};

struct Prediction {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
};

/// Exact GP posterior given a Dataset. Immutable; copies share the factorized
/// system, so a state can be handed to many readers cheaply.
class PosteriorState {
public:
    PosteriorState(const Dataset& data, const KernelSpec& kernel);

    const KernelSpec& kernel() const noexcept { return impl_->kernel; }
    const Dataset& data() const noexcept { return impl_->data; }
    double noise_variance() const noexcept {
        return impl_->data.noise_stddev() * impl_->data.noise_stddev();
    }
    /// Lower factor of K + noise^2 I (plus any jitter reported by jitter()).
    const Eigen::MatrixXd& factor() const noexcept { return impl_->factor; }
    const Eigen::VectorXd& weights() const noexcept { return impl_->alpha; }
    double jitter() const noexcept { return impl_->jitter; }

    MeanVar mean_var(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    /// Mean and clamped variance at each row of `points`.
    Prediction predict(const Eigen::MatrixXd& points) const;

    /// L^{-1} K(X, points): the whitened cross-covariance, n x P.
    Eigen::MatrixXd whitened_cross(const Eigen::MatrixXd& points) const;

    /// Posterior cross-covariance k_t(a_i, b_j).
    Eigen::MatrixXd covariance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;

private:
    struct Impl {
        Dataset data;
        KernelSpec kernel;
        Eigen::MatrixXd factor;
        Eigen::VectorXd alpha;
        double jitter = 0.0;
    };
    std::shared_ptr<const Impl> impl_;
};

PosteriorState fit_posterior(const Dataset& data, const KernelSpec& spec);

MeanVar posterior_mean_var(const PosteriorState& state, const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace tsrsr::gp
