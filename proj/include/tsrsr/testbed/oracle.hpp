#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/rng.hpp"
#include "tsrsr/testbed/objectives.hpp"

namespace tsrsr::testbed {

/// y = f(x) + eps with eps ~ N(0, noise^2). Single owner per trial.
class NoisyOracle {
public:
    NoisyOracle(Objective objective, double noise_stddev, std::uint64_t seed);

    /// Throws InvalidArgument for points outside the domain box.
    double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x);

    const Objective& objective() const noexcept { return objective_; }
    double noise_stddev() const noexcept { return noise_stddev_; }
    std::int64_t evaluations() const noexcept { return count_; }

private:
    Objective objective_;
    double noise_stddev_;
    RngStream noise_;
    std::int64_t count_ = 0;
};

double evaluate(NoisyOracle& oracle, const Eigen::Ref<const Eigen::VectorXd>& x);

struct InitialDesign {
    std::vector<Eigen::Index> indices;
    gp::Dataset data;
};

/// n_init distinct candidates drawn without replacement, each evaluated once.
/// The dataset's noise level is `model_noise` (the GP likelihood noise).
InitialDesign initial_design(NoisyOracle& oracle, const gp::CandidateSet& candidates, Eigen::Index n_init,
                             RngStream& rng, double model_noise);

}  // namespace tsrsr::testbed
