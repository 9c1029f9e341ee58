#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/kernel.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::testbed {

/// A maximization objective over a box. Classic minimization benchmarks are
/// negated, so their optimum value is the negated minimum.
struct Objective {
    std::string name;
    gp::Box domain;
    std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)> rule;
    std::optional<double> optimum_value;            // maximized sense
    std::optional<Eigen::VectorXd> optimum_point;
    /// Regret reference is the best candidate value rather than optimum_value.
    bool per_candidate_optimum = false;

    Eigen::Index dimension() const noexcept { return domain.dimension(); }
    double operator()(const Eigen::Ref<const Eigen::VectorXd>& x) const { return rule(x); }
};

/// Supported (name, d): ackley (2, 3), bird (2), rosenbrock (2), hartmann (6),
/// griewank (8), michalewicz (10). Throws InvalidArgument otherwise.
Objective make_objective(std::string_view name, Eigen::Index dim);

/// Names usable in experiment configs: "ackley2", "ackley3", "bird",
/// "rosenbrock", "hartmann6", "griewank8", "michalewicz10". The GP-prior
/// identifiers are handled by the bench layer.
Objective objective_by_id(std::string_view id);
bool is_gp_prior_id(std::string_view id);

/// Raw (minimization-sense) benchmark formulas.
namespace formulas {
double ackley(const Eigen::Ref<const Eigen::VectorXd>& x);
double bird(const Eigen::Ref<const Eigen::VectorXd>& x);
double rosenbrock(const Eigen::Ref<const Eigen::VectorXd>& x);
double hartmann6(const Eigen::Ref<const Eigen::VectorXd>& x);
double griewank(const Eigen::Ref<const Eigen::VectorXd>& x);
double michalewicz(const Eigen::Ref<const Eigen::VectorXd>& x);
}  // namespace formulas

/// Minimum values located by scripts/compute_optima.py (dense grid or
/// multi-start search, then local refinement).
namespace optima {
inline constexpr double kBirdMin = -106.76453674926472;
inline constexpr double kHartmann6Min = -3.3223680114155139;
inline constexpr double kGriewankMin = 0.0;
inline constexpr double kMichalewicz10Min = -9.6601517156412946;
}  // namespace optima

/// Values of one function tabulated on a candidate set.
class TabulatedFunction {
public:
    TabulatedFunction(gp::CandidateSet candidates, Eigen::VectorXd values);

    const gp::CandidateSet& candidates() const noexcept { return candidates_; }
    const Eigen::VectorXd& values() const noexcept { return values_; }

    /// Value at a member point; InvalidArgument for any other point.
    double lookup(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    double max_value() const { return values_.maxCoeff(); }

    /// Objective view whose optimum is the best tabulated value.
    Objective as_objective(std::string name) const;

private:
    gp::CandidateSet candidates_;
    Eigen::VectorXd values_;
};

/// One exact joint draw from GP(0, k) restricted to the candidates.
TabulatedFunction sample_prior_function(const gp::KernelSpec& spec, const gp::CandidateSet& candidates,
                                        RngStream& rng);

}  // namespace tsrsr::testbed
