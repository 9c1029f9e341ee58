#pragma once

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/linalg.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::gp {

/// Joint posterior Gaussian over a candidate set, factorized once and
/// reusable for any number of draws.
class JointSampler {
public:
    JointSampler(const PosteriorState& state, const CandidateSet& candidates,
                 const JitterPolicy& policy = {});

    Eigen::VectorXd draw(RngStream& rng) const;

    const Eigen::VectorXd& mean() const noexcept { return mean_; }
    const Eigen::MatrixXd& factor() const noexcept { return factor_.lower; }
    double jitter() const noexcept { return factor_.jitter; }
    Eigen::Index size() const noexcept { return mean_.size(); }

private:
    Eigen::VectorXd mean_;
    CholeskyFactor factor_;
};

struct SampledMax {
    double value;
    Eigen::Index index;  // lowest index on ties
    Eigen::VectorXd point;
};

Eigen::VectorXd sample_posterior_joint(const PosteriorState& state, const CandidateSet& candidates,
                                       RngStream& rng);

SampledMax sample_max(const PosteriorState& state, const CandidateSet& candidates, RngStream& rng);

/// Max and argmax (lowest index on ties) of one drawn vector.
SampledMax max_of_draw(const Eigen::VectorXd& draw, const CandidateSet& candidates);

}  // namespace tsrsr::gp
