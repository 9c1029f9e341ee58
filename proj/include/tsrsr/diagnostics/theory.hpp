#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "tsrsr/diagnostics/regret.hpp"
#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::diagnostics {

/// 1/2 sum log(1 + sigma^2 / noise^2) over a chain of conditional standard
/// deviations.
double information_gain(double noise_stddev, std::span<const double> sigmas);

inline constexpr double kSigmaFloor = 1e-8;

struct RhoEstimate {
    double value = 1.0;  // Monte-Carlo lower bound on rho_m; always >= 1
    std::int64_t floored = 0;  // ratio denominators raised to kSigmaFloor
    int subsets = 0;
};

/// max over n_subsets random size-m subsets X and all candidates x of
/// sigma(x) / sigma(x | X). Subset k depends only on (rng seed, k), so the
/// estimate is a running max in n_subsets.
RhoEstimate rho_m_estimate(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                           int n_subsets, RngStream& rng);

/// sqrt(2 log(2 D T m / delta)) * rho.
double rsr_bound(Eigen::Index candidate_count, int m, int iterations, double delta, double rho);

/// Fraction of slots whose recorded ratio exceeds rsr_bound(...). Throws
/// InvalidArgument when the trace carries no ratio diagnostics.
double rsr_bound_check(const RegretTrace& trace, Eigen::Index candidate_count, int m, int iterations,
                       double delta, double rho_hat);

struct TheoryReport {
    double rho_hat = 1.0;
    std::int64_t rho_floored = 0;
    double gamma_hat = 0.0;
    double max_psi = 0.0;
    double bound = 0.0;
    double delta = 0.05;
    double violation_fraction = 0.0;
    std::vector<int> violations;  // per iteration: 1 if any slot exceeded the bound
};

TheoryReport make_theory_report(const RegretTrace& trace, double noise_stddev, Eigen::Index candidate_count,
                                double delta, const RhoEstimate& rho);

}  // namespace tsrsr::diagnostics
