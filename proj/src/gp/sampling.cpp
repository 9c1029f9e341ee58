#include "tsrsr/gp/sampling.hpp"

#include <Eigen/Dense>

#include "tsrsr/error.hpp"

namespace tsrsr::gp {

JointSampler::JointSampler(const PosteriorState& state, const CandidateSet& candidates,
                           const JitterPolicy& policy) {
    const KernelSpec& kernel = state.kernel();
    if (candidates.dimension() != kernel.dimension())
        throw InvalidArgument("joint sampler: candidate dimension does not match posterior");
    const Eigen::MatrixXd& pts = candidates.points();
    Eigen::MatrixXd cov = kernel.gram(pts);
    if (state.data().size() > 0) {
        const Eigen::MatrixXd kxp = kernel.gram(state.data().inputs(), pts);
        const Eigen::MatrixXd w = state.factor().triangularView<Eigen::Lower>().solve(kxp);
        mean_ = kxp.transpose() * state.weights();
        // Only the lower triangle is read by the factorization.
        cov.selfadjointView<Eigen::Lower>().rankUpdate(w.transpose(), -1.0);
    } else {
        mean_ = Eigen::VectorXd::Zero(pts.rows());
    }
    factor_ = robust_cholesky(cov, policy);
}

Eigen::VectorXd JointSampler::draw(RngStream& rng) const {
    const Eigen::VectorXd z = rng.gaussian_vector(mean_.size());
    return mean_ + factor_.lower.triangularView<Eigen::Lower>() * z;
}

SampledMax max_of_draw(const Eigen::VectorXd& draw, const CandidateSet& candidates) {
    if (draw.size() != candidates.size() || draw.size() == 0)
        throw InvalidArgument("max_of_draw: draw length does not match candidate set");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < draw.size(); ++i)
        if (draw[i] > draw[best]) best = i;
    return {draw[best], best, candidates.point(best)};
}

Eigen::VectorXd sample_posterior_joint(const PosteriorState& state, const CandidateSet& candidates,
                                       RngStream& rng) {
    return JointSampler(state, candidates).draw(rng);
}

SampledMax sample_max(const PosteriorState& state, const CandidateSet& candidates, RngStream& rng) {
    return max_of_draw(sample_posterior_joint(state, candidates, rng), candidates);
}

}  // namespace tsrsr::gp
