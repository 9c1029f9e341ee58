#include "tsrsr/gp/fantasy.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/linalg.hpp"

namespace tsrsr::gp {

namespace {

Eigen::MatrixXd as_row(const Eigen::Ref<const Eigen::VectorXd>& x) { return x.transpose(); }

[[noreturn]] void extension_failure(double pivot_sq) {
    std::ostringstream os;
    os << "fantasy extension produced non-positive pivot " << pivot_sq;
    throw NumericalFailure(os.str());
}

}  // namespace

FantasyState::FantasyState(PosteriorState base)
    : base_(std::move(base)), pending_(0, base_.kernel().dimension()), factor_(0, 0) {}

FantasyState::FantasyState(PosteriorState base, const Eigen::MatrixXd& pending)
    : base_(std::move(base)), pending_(pending) {
    if (pending_.cols() != base_.kernel().dimension())
        throw InvalidArgument("fantasy: pending point dimension mismatch");
    Eigen::MatrixXd system = base_.covariance(pending_, pending_);
    system.diagonal().array() += base_.noise_variance();
    JitterPolicy policy;
    policy.try_without = true;
    factor_ = robust_cholesky(system, policy).lower;
}

FantasyState FantasyState::extended(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != base_.kernel().dimension()) throw InvalidArgument("extend_fantasy: dimension mismatch");
    const Eigen::Index b = pending_count();
    const Eigen::MatrixXd xr = as_row(x);

    FantasyState next(*this);
    next.pending_.conservativeResize(b + 1, Eigen::NoChange);
    next.pending_.row(b) = x.transpose();

    const double self = base_.covariance(xr, xr)(0, 0) + base_.noise_variance();
    Eigen::VectorXd link = Eigen::VectorXd::Zero(b);
    if (b > 0) {
        const Eigen::VectorXd c = base_.covariance(pending_, xr).col(0);
        link = factor_.triangularView<Eigen::Lower>().solve(c);
    }
    const double pivot_sq = self - link.squaredNorm();
    if (!(pivot_sq > 0.0)) extension_failure(pivot_sq);

    next.factor_ = Eigen::MatrixXd::Zero(b + 1, b + 1);
    next.factor_.topLeftCorner(b, b) = factor_;
    next.factor_.row(b).head(b) = link.transpose();
    next.factor_(b, b) = std::sqrt(pivot_sq);
    return next;
}

double FantasyState::conditional_variance(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    const double base_var = base_.mean_var(x).variance;
    if (pending_count() == 0) return base_var;
    const Eigen::VectorXd c = base_.covariance(pending_, as_row(x)).col(0);
    const Eigen::VectorXd v = factor_.triangularView<Eigen::Lower>().solve(c);
    return std::max(0.0, base_var - v.squaredNorm());
}

double FantasyState::conditional_sigma(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return std::sqrt(conditional_variance(x));
}

FantasyState extend_fantasy(const FantasyState& fantasy, const Eigen::Ref<const Eigen::VectorXd>& x_new) {
    return fantasy.extended(x_new);
}

double conditional_sigma(const FantasyState& fantasy, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return fantasy.conditional_sigma(x);
}

CandidateVariance::CandidateVariance(const PosteriorState& state, const CandidateSet& candidates)
    : points_(candidates.points()), kernel_(state.kernel()), noise_var_(state.noise_variance()) {
    if (candidates.dimension() != kernel_.dimension())
        throw InvalidArgument("candidate dimension does not match posterior");
    const Eigen::Index d_count = candidates.size();
    const Eigen::Index n = state.data().size();
    if (n > 0) {
        const Eigen::MatrixXd kxp = kernel_.gram(state.data().inputs(), points_);
        whitened_ = state.factor().triangularView<Eigen::Lower>().solve(kxp);
        mean_ = kxp.transpose() * state.weights();
        base_var_ = Eigen::VectorXd::Constant(d_count, kernel_.signal_variance()) -
                    whitened_.colwise().squaredNorm().transpose();
    } else {
        whitened_ = Eigen::MatrixXd(0, d_count);
        mean_ = Eigen::VectorXd::Zero(d_count);
        base_var_ = Eigen::VectorXd::Constant(d_count, kernel_.signal_variance());
    }
    raw_var_ = base_var_;
    var_ = raw_var_.cwiseMax(0.0);
    rows_ = Eigen::MatrixXd(0, d_count);
    pending_factor_ = Eigen::MatrixXd(0, 0);
}

double CandidateVariance::sigma(Eigen::Index i) const { return std::sqrt(var_[i]); }

void CandidateVariance::condition_on(Eigen::Index candidate) {
    if (candidate < 0 || candidate >= size()) throw InvalidArgument("condition_on: candidate index out of range");
    const Eigen::Index b = picks();
    Eigen::VectorXd cov = kernel_.cross(points_, points_.row(candidate).transpose());
    if (whitened_.rows() > 0) cov.noalias() -= whitened_.transpose() * whitened_.col(candidate);

    const Eigen::VectorXd link = rows_.col(candidate);
    const double pivot_sq = cov[candidate] + noise_var_ - link.squaredNorm();
    if (!(pivot_sq > 0.0)) extension_failure(pivot_sq);
    const double pivot = std::sqrt(pivot_sq);

    Eigen::VectorXd row = cov;
    if (b > 0) row.noalias() -= rows_.transpose() * link;
    row /= pivot;

    rows_.conservativeResize(b + 1, Eigen::NoChange);
    rows_.row(b) = row.transpose();
    Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(b + 1, b + 1);
    grown.topLeftCorner(b, b) = pending_factor_;
    grown.row(b).head(b) = link.transpose();
    grown(b, b) = pivot;
    pending_factor_ = std::move(grown);

    raw_var_ -= row.cwiseAbs2();
    var_ = raw_var_.cwiseMax(0.0);
    picked_.push_back(candidate);
}

}  // namespace tsrsr::gp
