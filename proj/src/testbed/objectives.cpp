#include "tsrsr/testbed/objectives.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/sampling.hpp"

namespace tsrsr::testbed {

using Eigen::Index;
using Eigen::VectorXd;
using std::numbers::pi;

namespace formulas {

double ackley(const Eigen::Ref<const VectorXd>& x) {
    constexpr double a = 20.0, b = 0.2, c = 2.0 * pi;
    const double d = static_cast<double>(x.size());
    const double sq = x.squaredNorm() / d;
    const double cs = (c * x.array()).cos().sum() / d;
    return -a * std::exp(-b * std::sqrt(sq)) - std::exp(cs) + a + std::numbers::e;
}

double bird(const Eigen::Ref<const VectorXd>& x) {
    const double u = x[0], v = x[1];
    const double e1 = 1.0 - std::cos(v), e2 = 1.0 - std::sin(u);
    return std::sin(u) * std::exp(e1 * e1) + std::cos(v) * std::exp(e2 * e2) + (u - v) * (u - v);
}

double rosenbrock(const Eigen::Ref<const VectorXd>& x) {
    double total = 0.0;
    for (Index i = 0; i + 1 < x.size(); ++i) {
        const double r = x[i + 1] - x[i] * x[i];
        total += 100.0 * r * r + (1.0 - x[i]) * (1.0 - x[i]);
    }
    return total;
}

double hartmann6(const Eigen::Ref<const VectorXd>& x) {
    static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
    static const double a[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                   {0.05, 10, 17, 0.1, 8, 14},
                                   {3, 3.5, 1.7, 10, 17, 8},
                                   {17, 8, 0.05, 10, 0.1, 14}};
    static const double p[4][6] = {{1312, 1696, 5569, 124, 8283, 5886},
                                   {2329, 4135, 8307, 3736, 1004, 9991},
                                   {2348, 1451, 3522, 2883, 3047, 6650},
                                   {4047, 8828, 8732, 5743, 1091, 381}};
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 6; ++j) {
            const double diff = x[j] - 1e-4 * p[i][j];
            inner += a[i][j] * diff * diff;
        }
        total += alpha[i] * std::exp(-inner);
    }
    return -total;
}

double griewank(const Eigen::Ref<const VectorXd>& x) {
    double prod = 1.0;
    for (Index i = 0; i < x.size(); ++i) prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    return 1.0 + x.squaredNorm() / 4000.0 - prod;
}

double michalewicz(const Eigen::Ref<const VectorXd>& x) {
    constexpr int steepness = 10;
    double total = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
        const double s = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / pi);
        total += std::sin(x[i]) * std::pow(s, 2 * steepness);
    }
    return -total;
}

}  // namespace formulas

namespace {

using Formula = double (*)(const Eigen::Ref<const VectorXd>&);

Objective negated(std::string name, gp::Box domain, Formula f, std::optional<double> min_value,
                  std::optional<VectorXd> argmin) {
    Objective obj{std::move(name), std::move(domain), [f](const Eigen::Ref<const VectorXd>& x) { return -f(x); },
                  std::nullopt, std::move(argmin)};
    if (min_value) obj.optimum_value = 0.0 - *min_value;
    return obj;
}

}  // namespace

Objective make_objective(std::string_view name, Index dim) {
    if (name == "ackley" && (dim == 2 || dim == 3))
        return negated("ackley" + std::to_string(dim), gp::Box::cube(-5.0, 5.0, dim), formulas::ackley, 0.0,
                       VectorXd::Zero(dim));
    if (name == "bird" && dim == 2) {
        VectorXd arg(2);
        arg << 4.70104312, 3.15293851;
        return negated("bird", gp::Box::cube(-2.0 * pi, 2.0 * pi, 2), formulas::bird, optima::kBirdMin, arg);
    }
    if (name == "rosenbrock" && dim == 2) {
        VectorXd lo(2), hi(2);
        lo << -2.0, -1.0;
        hi << 2.0, 3.0;
        return negated("rosenbrock", gp::Box(lo, hi), formulas::rosenbrock, 0.0, VectorXd::Ones(2));
    }
    if (name == "hartmann" && dim == 6) {
        VectorXd arg(6);
        arg << 0.20168951, 0.15001069, 0.47687397, 0.27533243, 0.31165161, 0.65730053;
        return negated("hartmann6", gp::Box::cube(0.0, 1.0, 6), formulas::hartmann6, optima::kHartmann6Min, arg);
    }
    if (name == "griewank" && dim == 8)
        return negated("griewank8", gp::Box::cube(-1.0, 4.0, 8), formulas::griewank, optima::kGriewankMin,
                       VectorXd::Zero(8));
    if (name == "michalewicz" && dim == 10) {
        Objective obj = negated("michalewicz10", gp::Box::cube(0.0, pi, 10), formulas::michalewicz,
                                optima::kMichalewicz10Min, std::nullopt);
        obj.per_candidate_optimum = true;
        return obj;
    }
    throw InvalidArgument("unsupported objective '" + std::string(name) + "' in dimension " + std::to_string(dim));
}

Objective objective_by_id(std::string_view id) {
    if (id == "ackley2") return make_objective("ackley", 2);
    if (id == "ackley3") return make_objective("ackley", 3);
    if (id == "bird") return make_objective("bird", 2);
    if (id == "rosenbrock") return make_objective("rosenbrock", 2);
    if (id == "hartmann6") return make_objective("hartmann", 6);
    if (id == "griewank8") return make_objective("griewank", 8);
    if (id == "michalewicz10") return make_objective("michalewicz", 10);
    throw InvalidArgument("unknown objective id '" + std::string(id) + "'");
}

bool is_gp_prior_id(std::string_view id) { return id == "gp-prior-2d" || id == "gp-prior-3d"; }

TabulatedFunction::TabulatedFunction(gp::CandidateSet candidates, VectorXd values)
    : candidates_(std::move(candidates)), values_(std::move(values)) {
    if (values_.size() != candidates_.size())
        throw InvalidArgument("tabulated function needs one value per candidate");
}

double TabulatedFunction::lookup(const Eigen::Ref<const VectorXd>& x) const {
    const Index i = candidates_.find(x);
    if (i < 0) throw InvalidArgument("tabulated function queried at a non-candidate point");
    return values_[i];
}

Objective TabulatedFunction::as_objective(std::string name) const {
    auto self = std::make_shared<const TabulatedFunction>(*this);
    Objective obj{std::move(name), candidates_.domain(),
                  [self](const Eigen::Ref<const VectorXd>& x) { return self->lookup(x); }, max_value(),
                  std::nullopt};
    Index best = 0;
    values_.maxCoeff(&best);
    obj.optimum_point = candidates_.point(best);
    obj.per_candidate_optimum = true;
    return obj;
}

TabulatedFunction sample_prior_function(const gp::KernelSpec& spec, const gp::CandidateSet& candidates,
                                        RngStream& rng) {
    const gp::Dataset empty(spec.dimension(), 1.0);
    const gp::PosteriorState prior(empty, spec);
    return TabulatedFunction(candidates, gp::sample_posterior_joint(prior, candidates, rng));
}

}  // namespace tsrsr::testbed
