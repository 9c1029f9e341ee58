#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tsrsr/diagnostics/lemmas.hpp"
#include "tsrsr/diagnostics/regret.hpp"
#include "tsrsr/diagnostics/theory.hpp"
#include "tsrsr/error.hpp"
#include "tsrsr/gp/fantasy.hpp"
#include "tsrsr/rng.hpp"

using namespace tsrsr;
using namespace tsrsr::diagnostics;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

RegretTrace trace_from(double fstar, int T, int m, const std::vector<double>& values,
                       const std::vector<double>& rsr = {}) {
    RegretTrace tr(fstar, T, m);
    for (std::size_t k = 0; k < values.size(); ++k) {
        SlotRecord r;
        r.iteration = static_cast<int>(k) / m + 1;
        r.slot = static_cast<int>(k) % m + 1;
        r.value = values[k];
        if (!rsr.empty()) r.rsr = rsr[k];
        tr.add(r);
    }
    return tr;
}

}  // namespace

TEST_CASE("regret examples") {
    const auto zero = trace_from(2.0, 2, 2, {2.0, 2.0, 2.0, 2.0});
    CHECK(cumulative_regret(zero) == 0.0);
    CHECK(simple_regret(zero) == 0.0);
    const auto two = trace_from(1.0, 1, 2, {0.5, 0.75});
    CHECK(cumulative_regret(two) == 0.75);
    const auto three = trace_from(1.0, 3, 1, {0.5, 0.75, 0.25});
    CHECK(simple_regret(three) == 0.25);
    CHECK(simple_regret_at(three, 1) == 0.5);
    CHECK(three.best_so_far() == std::vector<double>{0.5, 0.25, 0.25});
    CHECK(three.complete());
    CHECK_FALSE(three.has_rsr());
    CHECK_THROWS_AS(simple_regret_at(three, 4), InvalidArgument);
    RegretTrace full = trace_from(0.0, 1, 1, {-1.0});
    CHECK_THROWS_AS(full.add(SlotRecord{}), InvalidArgument);
    CHECK_THROWS_AS(RegretTrace(0.0, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(RegretTrace(std::nan(""), 1, 1), InvalidArgument);
}

TEST_CASE("regret identities over random traces") {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_real_distribution<double> u(-3.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const int T = len(gen), m = len(gen) % 6 + 1;
        std::vector<double> values(static_cast<std::size_t>(T * m));
        for (double& v : values) v = u(gen);
        const auto tr = trace_from(1.0, T, m, values);
        double sum = 0.0;
        for (double v : values) sum += 1.0 - v;
        CHECK(cumulative_regret(tr) == doctest::Approx(sum).epsilon(1e-14));
        CHECK(simple_regret(tr) <= cumulative_regret(tr) / (T * m) + 1e-12);
        const auto curve = tr.best_so_far();
        for (std::size_t t = 1; t < curve.size(); ++t) CHECK(curve[t] <= curve[t - 1]);
        CHECK(curve.back() == simple_regret(tr));
        for (int t = 1; t <= T; ++t) CHECK(simple_regret_at(tr, t) == curve[static_cast<std::size_t>(t - 1)]);
    }
}

TEST_CASE("information gain examples") {
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(information_gain(0.1, zeros) == 0.0);
    const std::vector<double> one{0.1};
    CHECK(information_gain(0.1, one) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    std::vector<double> seq{0.3, 0.2, 0.1};
    const double g = information_gain(0.05, seq);
    seq.push_back(0.0);
    CHECK(information_gain(0.05, seq) == g);
    seq.push_back(0.01);
    CHECK(information_gain(0.05, seq) >= g);
    const std::vector<double> bad{-0.1};
    CHECK_THROWS_AS(information_gain(0.05, bad), InvalidArgument);
    CHECK_THROWS_AS(information_gain(0.0, one), InvalidArgument);
}

TEST_CASE("information gain equals the log-det of the chain") {
    std::mt19937_64 gen(23);
    std::uniform_int_distribution<int> len(1, 30), dim(1, 4);
    std::uniform_real_distribution<double> ell(0.1, 0.8), noise(0.01, 0.5);
    for (int k = 0; k < 50; ++k) {
        const int n = len(gen), d = dim(gen);
        const double l = ell(gen), s = noise(gen);
        const MatrixXd A = oracle::random_points(gen, n, d);
        const auto spec = gp::KernelSpec::matern(2.5, l, d);
        const gp::PosteriorState prior(gp::Dataset(d, s), spec);
        const gp::CandidateSet cands(A, gp::Box::cube(0.0, 1.0, d));
        gp::CandidateVariance cv(prior, cands);
        std::vector<double> chain;
        for (Index i = 0; i < n; ++i) {
            chain.push_back(cv.sigma(i));
            cv.condition_on(i);
        }
        const double want = oracle::logdet_information_gain(oracle::matern(2.5, VectorXd::Constant(d, l)), A, s);
        CHECK(std::abs(information_gain(s, chain) - want) <= 1e-8);
    }
}

TEST_CASE("rho estimate") {
    std::mt19937_64 gen(2);
    const int d = 2;
    const auto spec = gp::KernelSpec::matern(1.5, 0.3, d);
    const gp::Dataset data(oracle::random_points(gen, 5, d), oracle::random_vector(gen, 5), 0.05);
    const gp::PosteriorState state(data, spec);
    const gp::CandidateSet cands(oracle::random_points(gen, 40, d), gp::Box::cube(0.0, 1.0, d));

    RngStream rng(1);
    const auto none = rho_m_estimate(state, cands, 0, 100, rng);
    CHECK(none.value == 1.0);
    CHECK(none.subsets == 0);

    double previous = 1.0;
    for (int n : {1, 2, 5, 20, 60}) {
        RngStream r(9);
        const auto est = rho_m_estimate(state, cands, 3, n, r);
        CHECK(est.value >= previous);
        CHECK(est.value >= 1.0);
        CHECK(est.subsets == n);
        previous = est.value;
    }

    // One candidate and m = 1: the only subset is {x}, so the ratio is
    // sqrt((s^2 + noise^2) / noise^2) with s the posterior sigma at x.
    const gp::CandidateSet single(cands.points().topRows(1), gp::Box::cube(0.0, 1.0, d));
    const double s2 = oracle::dense_posterior(oracle::matern(1.5, VectorXd::Constant(d, 0.3)), data.inputs(),
                                              data.targets(), 0.05, single.point(0))
                          .variance;
    RngStream r1(4);
    const auto forced = rho_m_estimate(state, single, 1, 3, r1);
    CHECK(forced.value == doctest::Approx(std::sqrt((s2 + 0.0025) / 0.0025)).epsilon(1e-8));
    CHECK(forced.value > 1.0);
}

TEST_CASE("rsr bound and audit") {
    CHECK(rsr_bound(2000, 5, 50, 0.05, 1.0) == doctest::Approx(std::sqrt(2.0 * std::log(2.0 * 2000 * 50 * 5 / 0.05))));
    CHECK(rsr_bound(10, 2, 3, 0.1, 3.0) == 3.0 * rsr_bound(10, 2, 3, 0.1, 1.0));
    CHECK_THROWS_AS(rsr_bound(10, 2, 3, 0.0, 1.0), InvalidArgument);

    const RegretTrace empty(0.0, 0, 1);
    CHECK(rsr_bound_check(empty, 100, 1, 1, 0.05, 1.0) == 0.0);
    const auto zeros = trace_from(0.0, 2, 2, {0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0});
    CHECK(rsr_bound_check(zeros, 100, 2, 2, 0.05, 1.0) == 0.0);
    const auto bare = trace_from(0.0, 1, 2, {0.0, 0.0});
    CHECK_THROWS_AS(rsr_bound_check(bare, 100, 2, 1, 0.05, 1.0), InvalidArgument);
    const double b = rsr_bound(100, 2, 2, 0.05, 1.0);
    const auto mixed = trace_from(0.0, 2, 2, {0.0, 0.0, 0.0, 0.0}, {b + 1.0, 0.0, b - 0.1, b + 0.5});
    CHECK(rsr_bound_check(mixed, 100, 2, 2, 0.05, 1.0) == 0.5);

    RhoEstimate rho;
    rho.value = 1.0;
    const auto report = make_theory_report(mixed, 0.1, 100, 0.05, rho);
    CHECK(report.bound == b);
    CHECK(report.violation_fraction == 0.5);
    CHECK(report.max_psi == b + 1.0);
    CHECK(report.violations == std::vector<int>{1, 1});
    const auto again = make_theory_report(mixed, 0.1, 100, 0.05, rho);
    CHECK(again.bound == report.bound);
}

TEST_CASE("max-ratio lemma Monte Carlo") {
    // D = 1: the standardized maximum is one standard normal.
    const double tail = 1.0 - oracle::normal_cdf(std::sqrt(2.0 * std::log(1.0 / 0.05)));
    const double f1 = verify_max_ratio_lemma(1, 0.05, 10000, 3, CovarianceKind::Diagonal);
    CHECK(std::abs(f1 - tail) <= 4.0 * std::sqrt(tail * (1.0 - tail) / 10000));
    CHECK(f1 <= 0.05);
    for (auto kind : {CovarianceKind::Random, CovarianceKind::Diagonal, CovarianceKind::Correlated}) {
        const double f = verify_max_ratio_lemma(50, 0.05, 10000, 11, kind);
        CHECK(f <= 0.06);
        CHECK(f >= 0.0);
    }
    CHECK(verify_max_ratio_lemma(20, 0.05, 2000, 5, CovarianceKind::Random, 1) ==
          verify_max_ratio_lemma(20, 0.05, 2000, 5, CovarianceKind::Random, 3));
    CHECK_THROWS_AS(verify_max_ratio_lemma(0, 0.05, 10, 0), InvalidArgument);
}

TEST_CASE("max-square lemma Monte Carlo") {
    // E[max(Y1^2, Y2^2)] for independent unit normals: the integral of
    // 1 - P(|Y| <= sqrt(t))^2 over t >= 0, by the trapezoid rule.
    double exact = 0.0;
    const double h = 1e-4;
    auto tail = [](double t) {
        const double p = std::erf(std::sqrt(t / 2.0));
        return 1.0 - p * p;
    };
    for (double t = 0.0; t < 80.0; t += h) exact += 0.5 * h * (tail(t) + tail(t + h));
    CHECK(exact == doctest::Approx(1.0 + 2.0 / std::numbers::pi).epsilon(1e-6));

    const auto two = verify_max_square_lemma(2, 10000, 7, 1.0, CovarianceKind::Diagonal);
    CHECK(std::abs(two.mean - exact) <= 4.0 * two.standard_error);
    CHECK(two.bound == doctest::Approx(6.0 * std::log(2.0)));
    for (int dim : {2, 10, 100}) {
        const auto est = verify_max_square_lemma(dim, 10000, 13, 1.0, CovarianceKind::Random);
        CHECK(est.mean <= est.bound + 4.0 * est.standard_error);
    }
    const auto unit = verify_max_square_lemma(30, 4000, 21, 1.0);
    const auto quarter = verify_max_square_lemma(30, 4000, 21, 0.25);
    CHECK(quarter.mean <= unit.mean);
    CHECK(quarter.mean == doctest::Approx(0.25 * unit.mean).epsilon(1e-9));
}
