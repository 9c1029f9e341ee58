#include "tsrsr/diagnostics/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/fantasy.hpp"

namespace tsrsr::diagnostics {

using Eigen::Index;

double information_gain(double noise_stddev, std::span<const double> sigmas) {
    if (!(noise_stddev > 0.0)) throw InvalidArgument("information_gain: noise must be positive");
    const double inv_noise_var = 1.0 / (noise_stddev * noise_stddev);
    double total = 0.0;
    for (double s : sigmas) {
        if (!(s >= 0.0)) throw InvalidArgument("information_gain: sigmas must be non-negative");
        total += std::log1p(inv_noise_var * s * s);
    }
    return 0.5 * total;
}

RhoEstimate rho_m_estimate(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                           int n_subsets, RngStream& rng) {
    RhoEstimate out;
    if (m <= 0 || n_subsets <= 0) return out;
    const gp::CandidateVariance base(state, candidates);
    const Eigen::VectorXd sigma = base.variances().cwiseSqrt();
    const Index d_count = candidates.size();
    const Index subset_size = std::min<Index>(m, d_count);
    const std::uint64_t root = rng.next_seed();

    std::vector<Index> order(static_cast<std::size_t>(d_count));
    for (int k = 0; k < n_subsets; ++k) {
        RngStream sub(derive_seed(root, static_cast<std::uint64_t>(k)));
        std::iota(order.begin(), order.end(), Index{0});
        gp::CandidateVariance cv = base;
        for (Index i = 0; i < subset_size; ++i) {
            const auto j = i + static_cast<Index>(sub.index(static_cast<std::size_t>(d_count - i)));
            std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
            cv.condition_on(order[static_cast<std::size_t>(i)]);
        }
        for (Index x = 0; x < d_count; ++x) {
            double cond = std::sqrt(cv.variances()[x]);
            if (cond < kSigmaFloor) {
                cond = kSigmaFloor;
                ++out.floored;
            }
            out.value = std::max(out.value, sigma[x] / cond);
        }
        ++out.subsets;
    }
    return out;
}

double rsr_bound(Index candidate_count, int m, int iterations, double delta, double rho) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    const double arg = 2.0 * static_cast<double>(candidate_count) * iterations * m / delta;
    return std::sqrt(2.0 * std::log(arg)) * rho;
}

double rsr_bound_check(const RegretTrace& trace, Index candidate_count, int m, int iterations, double delta,
                       double rho_hat) {
    if (trace.records().empty()) return 0.0;
    if (!trace.has_rsr()) throw InvalidArgument("rsr_bound_check: trace has no ratio diagnostics");
    const double bound = rsr_bound(candidate_count, m, iterations, delta, rho_hat);
    const auto over = std::count_if(trace.records().begin(), trace.records().end(),
                                    [&](const SlotRecord& r) { return std::isfinite(r.rsr) && r.rsr > bound; });
    return static_cast<double>(over) / static_cast<double>(trace.records().size());
}

TheoryReport make_theory_report(const RegretTrace& trace, double noise_stddev, Index candidate_count, double delta,
                                const RhoEstimate& rho) {
    TheoryReport report;
    report.rho_hat = rho.value;
    report.rho_floored = rho.floored;
    report.delta = delta;
    report.bound = rsr_bound(candidate_count, trace.batch_size(), trace.iterations(), delta, rho.value);

    std::vector<double> sigmas;
    report.max_psi = -std::numeric_limits<double>::infinity();
    report.violations.assign(static_cast<std::size_t>(trace.iterations()), 0);
    for (const auto& r : trace.records()) {
        if (std::isfinite(r.sigma)) sigmas.push_back(r.sigma);
        if (std::isfinite(r.rsr)) {
            report.max_psi = std::max(report.max_psi, r.rsr);
            if (r.rsr > report.bound) report.violations[static_cast<std::size_t>(r.iteration - 1)] = 1;
        }
    }
    if (!std::isfinite(report.max_psi)) report.max_psi = 0.0;
    report.gamma_hat = information_gain(noise_stddev, sigmas);
    report.violation_fraction =
        trace.has_rsr() ? rsr_bound_check(trace, candidate_count, trace.batch_size(), trace.iterations(), delta,
                                          rho.value)
                        : 0.0;
    return report;
}

}  // namespace tsrsr::diagnostics
