#include "tsrsr/testbed/oracle.hpp"

#include <cmath>
#include <numeric>

#include "tsrsr/error.hpp"

namespace tsrsr::testbed {

NoisyOracle::NoisyOracle(Objective objective, double noise_stddev, std::uint64_t seed)
    : objective_(std::move(objective)), noise_stddev_(noise_stddev), noise_(seed) {
    if (!(noise_stddev >= 0.0) || !std::isfinite(noise_stddev))
        throw InvalidArgument("oracle noise must be non-negative");
}

double NoisyOracle::evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (!objective_.domain.contains(x)) throw InvalidArgument("oracle: point outside the domain box");
    const double value = objective_(x);
    // The stream advances even when noise is zero, keeping positions aligned.
    const double eps = noise_.gaussian();
    ++count_;
    return value + noise_stddev_ * eps;
}

double evaluate(NoisyOracle& oracle, const Eigen::Ref<const Eigen::VectorXd>& x) { return oracle.evaluate(x); }

InitialDesign initial_design(NoisyOracle& oracle, const gp::CandidateSet& candidates, Eigen::Index n_init,
                             RngStream& rng, double model_noise) {
    if (n_init < 0 || n_init > candidates.size())
        throw InvalidArgument("initial design size must lie in [0, D]");
    std::vector<Eigen::Index> order(static_cast<std::size_t>(candidates.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first n_init entries are a uniform sample without replacement.
    for (Eigen::Index i = 0; i < n_init; ++i) {
        const auto j = static_cast<Eigen::Index>(i + static_cast<Eigen::Index>(rng.index(
                                                         static_cast<std::size_t>(candidates.size() - i))));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    InitialDesign design{{}, gp::Dataset(candidates.dimension(), model_noise)};
    for (Eigen::Index i = 0; i < n_init; ++i) {
        const Eigen::Index idx = order[static_cast<std::size_t>(i)];
        design.indices.push_back(idx);
        const Eigen::VectorXd x = candidates.point(idx);
        design.data.add(x, oracle.evaluate(x));
    }
    return design;
}

}  // namespace tsrsr::testbed
