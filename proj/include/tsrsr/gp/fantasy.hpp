#pragma once

#include <vector>

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/posterior.hpp"

namespace tsrsr::gp {

/// Posterior variance after additionally observing a list of pending points
/// whose values are unknown. Only locations matter, so no targets are held.
///
/// Internally keeps the lower factor of C_t(P, P) + noise^2 I, C_t being the
/// posterior covariance of `base`. Extending by one point appends one row to
/// that factor.
class FantasyState {
public:
    explicit FantasyState(PosteriorState base);
    /// Built in one shot from the whole pending list.
    FantasyState(PosteriorState base, const Eigen::MatrixXd& pending);

    const PosteriorState& base() const noexcept { return base_; }
    const Eigen::MatrixXd& pending() const noexcept { return pending_; }
    Eigen::Index pending_count() const noexcept { return pending_.rows(); }
    const Eigen::MatrixXd& pending_factor() const noexcept { return factor_; }

    FantasyState extended(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    double conditional_variance(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    double conditional_sigma(const Eigen::Ref<const Eigen::VectorXd>& x) const;

private:
    PosteriorState base_;
    Eigen::MatrixXd pending_;
    Eigen::MatrixXd factor_;
};

FantasyState extend_fantasy(const FantasyState& fantasy, const Eigen::Ref<const Eigen::VectorXd>& x_new);

double conditional_sigma(const FantasyState& fantasy, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Fantasy conditioning specialised to a fixed candidate set: tracks
/// mu_t and sigma_t^2(x | picks) for every candidate, and conditions on
/// candidates by index in O(D (n + B)) per pick.
class CandidateVariance {
public:
    CandidateVariance(const PosteriorState& state, const CandidateSet& candidates);

    const Eigen::VectorXd& means() const noexcept { return mean_; }
    const Eigen::VectorXd& base_variances() const noexcept { return base_var_; }
    const Eigen::VectorXd& variances() const noexcept { return var_; }
    double sigma(Eigen::Index i) const;
    Eigen::Index size() const noexcept { return var_.size(); }
    Eigen::Index picks() const noexcept { return static_cast<Eigen::Index>(picked_.size()); }
    const std::vector<Eigen::Index>& picked() const noexcept { return picked_; }

    void condition_on(Eigen::Index candidate);

private:
    Eigen::MatrixXd points_;
    KernelSpec kernel_;
    double noise_var_;
    Eigen::MatrixXd whitened_;  // L^{-1} K(X, candidates), n x D
    Eigen::VectorXd mean_;
    Eigen::VectorXd base_var_;  // unclamped k(x,x) - |w|^2
    Eigen::VectorXd var_;       // clamped conditional variance
    Eigen::VectorXd raw_var_;
    Eigen::MatrixXd rows_;      // L_P^{-1} C_t(P, candidates), B x D
    Eigen::MatrixXd pending_factor_;
    std::vector<Eigen::Index> picked_;
};

}  // namespace tsrsr::gp
