#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "tsrsr/error.hpp"
#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/fantasy.hpp"
#include "tsrsr/gp/kernel.hpp"
#include "tsrsr/gp/linalg.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/gp/sampling.hpp"

using namespace tsrsr;
using namespace tsrsr::gp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

struct KernelPair {
    KernelSpec spec;
    oracle::Kernel ref;
};

KernelPair random_kernel(std::mt19937_64& gen, Eigen::Index d) {
    std::uniform_real_distribution<double> ell(0.2, 1.5), sv(0.5, 2.0);
    VectorXd l(d);
    for (Eigen::Index i = 0; i < d; ++i) l[i] = ell(gen);
    const double s = sv(gen);
    switch (gen() % 4) {
        case 0: return {KernelSpec(KernelFamily::SquaredExponential, l, s), oracle::squared_exponential(l, s)};
        case 1: return {KernelSpec(KernelFamily::Matern, l, s, 0.5), oracle::matern(0.5, l, s)};
        case 2: return {KernelSpec(KernelFamily::Matern, l, s, 1.5), oracle::matern(1.5, l, s)};
        default: return {KernelSpec(KernelFamily::Matern, l, s, 2.5), oracle::matern(2.5, l, s)};
    }
}

Dataset random_dataset(std::mt19937_64& gen, Eigen::Index n, Eigen::Index d, double noise) {
    return Dataset(oracle::random_points(gen, n, d), oracle::random_vector(gen, n), noise);
}

CandidateSet unit_candidates(const MatrixXd& pts) {
    return CandidateSet(pts, Box::cube(0.0, 1.0, pts.cols()));
}

}  // namespace

TEST_CASE("squared exponential examples") {
    const auto k = KernelSpec::squared_exponential(0.7, 1);
    VectorXd x(1), y(1);
    x << 0.3;
    y << 1.0;
    CHECK(k(x, x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kernel_eval(k, x, y) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("matern 3/2 decays to zero far away") {
    const auto k = KernelSpec::matern(1.5, 0.4, 1);
    VectorXd x(1), y(1);
    x << 0.0;
    y << 50 * 0.4;
    CHECK(std::abs(k(x, y)) < 1e-12);
}

TEST_CASE("matern closed forms agree with the Bessel expression") {
    for (double nu : {0.5, 1.0, 1.5, 2.5, 3.2}) {
        const auto k = KernelSpec::matern(nu, 1.0, 1);
        for (double r : {1e-3, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            CAPTURE(nu);
            CAPTURE(r);
            CHECK(k.profile(r) == doctest::Approx(oracle::matern_profile(nu, r)).epsilon(1e-10));
        }
        CHECK(k.profile(0.0) == 1.0);
    }
}

TEST_CASE("kernel rejects bad parameters and mismatched inputs") {
    CHECK_THROWS_AS(KernelSpec(KernelFamily::SquaredExponential, VectorXd::Constant(2, -1.0)), InvalidArgument);
    CHECK_THROWS_AS(KernelSpec(KernelFamily::SquaredExponential, VectorXd::Ones(2), 0.0), InvalidArgument);
    CHECK_THROWS_AS(KernelSpec(KernelFamily::Matern, VectorXd::Ones(2), 1.0, 0.0), InvalidArgument);
    const auto k = KernelSpec::squared_exponential(1.0, 2);
    CHECK_THROWS_AS(k(VectorXd::Zero(2), VectorXd::Zero(3)), InvalidArgument);
    CHECK(parse_kernel_family("rbf") == KernelFamily::SquaredExponential);
    CHECK(parse_kernel_family("matern") == KernelFamily::Matern);
    CHECK_THROWS_AS(parse_kernel_family("linear"), InvalidArgument);
}

TEST_CASE("gram matrices are symmetric and positive semidefinite") {
    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 50; ++rep) {
        const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 6);
        auto [spec, ref] = random_kernel(gen, d);
        const MatrixXd pts = oracle::random_points(gen, 8, d);
        const MatrixXd g = spec.gram(pts);
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((g - oracle::gram(ref, pts, pts)).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        CHECK(g.diagonal().isApprox(VectorXd::Constant(8, spec.signal_variance())));
    }
}

TEST_CASE("candidate set validation") {
    MatrixXd pts(3, 2);
    pts << 0, 0, 0.5, 0.5, 1, 1;
    const auto box = Box::cube(0.0, 1.0, 2);
    CandidateSet c(pts, box);
    CHECK(c.size() == 3);
    CHECK(c.find(pts.row(1).transpose()) == 1);
    CHECK(c.find(VectorXd::Constant(2, 0.25)) == -1);
    MatrixXd dup = pts;
    dup.row(2) = dup.row(0);
    CHECK_THROWS_AS(CandidateSet(dup, box), InvalidArgument);
    MatrixXd outside = pts;
    outside(1, 0) = 1.5;
    CHECK_THROWS_AS(CandidateSet(outside, box), InvalidArgument);
    CHECK_THROWS_AS(CandidateSet(MatrixXd(0, 2), box), InvalidArgument);
}

TEST_CASE("robust cholesky escalates jitter and then gives up") {
    MatrixXd singular = MatrixXd::Ones(3, 3);
    const auto f = robust_cholesky(singular);
    CHECK(f.jitter >= 1e-10);
    CHECK((f.lower * f.lower.transpose() - singular).cwiseAbs().maxCoeff() <= 10 * f.jitter);
    MatrixXd negative = -MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS(robust_cholesky(negative), NumericalFailure);
}

TEST_CASE("empty posterior is the prior") {
    const auto k = KernelSpec::matern(1.5, 0.5, 2);
    PosteriorState state(Dataset(2, 0.1), k);
    const auto mv = posterior_mean_var(state, VectorXd::Constant(2, 0.3));
    CHECK(mv.mean == 0.0);
    CHECK(mv.variance == 1.0);
}

TEST_CASE("single observation posterior mean") {
    const auto k = KernelSpec::squared_exponential(1.0, 1);
    Dataset data(1, 0.1);
    data.add(VectorXd::Zero(1), 1.0);
    const auto state = fit_posterior(data, k);
    CHECK(posterior_mean_var(state, VectorXd::Zero(1)).mean == doctest::Approx(1.0 / 1.01).epsilon(1e-12));
}

TEST_CASE("posterior matches dense inverse on random instances") {
    std::mt19937_64 gen(2024);
    for (int rep = 0; rep < 200; ++rep) {
        const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 6);
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(gen() % 20);
        auto [spec, ref] = random_kernel(gen, d);
        const double noise = std::uniform_real_distribution<double>(0.05, 0.5)(gen);
        const Dataset data = random_dataset(gen, n, d, noise);
        const PosteriorState state(data, spec);
        const MatrixXd queries = oracle::random_points(gen, 5, d);
        for (Eigen::Index q = 0; q < queries.rows(); ++q) {
            const VectorXd x = queries.row(q).transpose();
            const auto got = state.mean_var(x);
            const auto want = oracle::dense_posterior(ref, data.inputs(), data.targets(), noise, x);
            CHECK(std::abs(got.mean - want.mean) < 1e-8);
            CHECK(std::abs(got.variance - std::max(want.variance, 0.0)) < 1e-8);
            CHECK(got.variance >= 0.0);
            CHECK(got.variance <= spec(x, x));
        }
        MatrixXd system = spec.gram(data.inputs());
        system.diagonal().array() += noise * noise;
        CHECK((system * state.weights() - data.targets()).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((state.factor().diagonal().array() > 0.0).all());
    }
}

TEST_CASE("predict agrees with pointwise evaluation") {
    std::mt19937_64 gen(5);
    const auto k = KernelSpec::matern(2.5, 0.3, 3);
    const PosteriorState state(random_dataset(gen, 12, 3, 0.05), k);
    const MatrixXd pts = oracle::random_points(gen, 20, 3);
    const auto p = state.predict(pts);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        const auto mv = state.mean_var(pts.row(i).transpose());
        CHECK(p.mean[i] == doctest::Approx(mv.mean).epsilon(1e-12));
        CHECK(p.variance[i] == doctest::Approx(mv.variance).epsilon(1e-12));
    }
}

TEST_CASE("near-noiseless interpolation") {
    const auto k = KernelSpec::squared_exponential(0.5, 1);
    Dataset data(1, 1e-6);
    VectorXd x(1);
    x << 0.2;
    data.add(x, 0.7);
    x << 0.9;
    data.add(x, -0.4);
    const PosteriorState state(data, k);
    const auto mv = state.mean_var(x);
    CHECK(mv.mean == doctest::Approx(-0.4).epsilon(1e-6));
    CHECK(mv.variance < 1e-9);
}

TEST_CASE("repeated observations shrink the variance strictly") {
    const auto k = KernelSpec::matern(1.5, 0.5, 1);
    Dataset data(1, 0.2);
    const VectorXd x = VectorXd::Constant(1, 0.4);
    double previous = k(x, x);
    for (int rep = 0; rep < 3; ++rep) {
        data.add(x, 1.0);
        const double v = PosteriorState(data, k).mean_var(x).variance;
        CHECK(v < previous);
        previous = v;
    }
}

TEST_CASE("dataset and posterior reject bad input") {
    CHECK_THROWS_AS(Dataset(2, 0.0), InvalidArgument);
    Dataset data(2, 0.1);
    CHECK_THROWS_AS(data.add(VectorXd::Zero(3), 1.0), InvalidArgument);
    CHECK_THROWS_AS(PosteriorState(data, KernelSpec::squared_exponential(1.0, 3)), InvalidArgument);
    const PosteriorState state(data, KernelSpec::squared_exponential(1.0, 2));
    CHECK_THROWS_AS(state.mean_var(VectorXd::Zero(1)), InvalidArgument);
}

TEST_CASE("fantasy with no pending points is the posterior") {
    std::mt19937_64 gen(3);
    const auto k = KernelSpec::matern(1.5, 0.4, 2);
    const PosteriorState state(random_dataset(gen, 6, 2, 0.1), k);
    const FantasyState f(state);
    const VectorXd x = VectorXd::Constant(2, 0.33);
    CHECK(conditional_sigma(f, x) == doctest::Approx(std::sqrt(state.mean_var(x).variance)).epsilon(1e-14));
}

TEST_CASE("conditioning on the query point itself") {
    const auto k = KernelSpec::squared_exponential(0.3, 1);
    const PosteriorState state(Dataset(1, 0.1), k);
    const VectorXd x = VectorXd::Constant(1, 0.5);
    const FantasyState f = extend_fantasy(FantasyState(state), x);
    // 2x2 block arithmetic: 1 - 1 / (1 + noise^2).
    CHECK(f.conditional_variance(x) == doctest::Approx(1.0 - 1.0 / 1.01).epsilon(1e-12));
    CHECK(f.conditional_sigma(x) < 1.0);
}

TEST_CASE("conditional sigma matches the block-inverse oracle") {
    std::mt19937_64 gen(77);
    for (int rep = 0; rep < 200; ++rep) {
        const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 6);
        const Eigen::Index n = static_cast<Eigen::Index>(gen() % 21);
        auto [spec, ref] = random_kernel(gen, d);
        const double noise = std::uniform_real_distribution<double>(0.05, 0.5)(gen);
        const Dataset data = random_dataset(gen, n, d, noise);
        const MatrixXd pending = oracle::random_points(gen, 2, d);
        const FantasyState f(PosteriorState(data, spec), pending);
        const VectorXd x = oracle::random_points(gen, 1, d).row(0).transpose();
        const double want = oracle::block_conditional_variance(ref, data.inputs(), pending, noise, x);
        CHECK(std::abs(f.conditional_sigma(x) - std::sqrt(std::max(want, 0.0))) < 1e-8);
    }
}

TEST_CASE("incremental extension equals whole-batch construction") {
    std::mt19937_64 gen(99);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index d = 1 + static_cast<Eigen::Index>(gen() % 4);
        const Eigen::Index m = 1 + static_cast<Eigen::Index>(gen() % 20);
        auto [spec, ref] = random_kernel(gen, d);
        const PosteriorState state(random_dataset(gen, 1 + static_cast<Eigen::Index>(gen() % 10), d, 0.1), spec);
        const MatrixXd pending = oracle::random_points(gen, m, d);
        FantasyState inc(state);
        for (Eigen::Index i = 0; i < m; ++i) inc = inc.extended(pending.row(i).transpose());
        const FantasyState batch(state, pending);
        const MatrixXd queries = oracle::random_points(gen, 10, d);
        for (Eigen::Index q = 0; q < queries.rows(); ++q) {
            const VectorXd x = queries.row(q).transpose();
            const double a = inc.conditional_variance(x), b = batch.conditional_variance(x);
            CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(b), 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("extending never increases variance") {
    std::mt19937_64 gen(8);
    const auto k = KernelSpec::matern(1.5, 0.3, 2);
    const PosteriorState state(random_dataset(gen, 5, 2, 0.05), k);
    const MatrixXd queries = oracle::random_points(gen, 30, 2);
    FantasyState f(state);
    VectorXd previous(queries.rows());
    for (Eigen::Index q = 0; q < queries.rows(); ++q) previous[q] = f.conditional_variance(queries.row(q).transpose());
    for (int step = 0; step < 8; ++step) {
        f = f.extended(oracle::random_points(gen, 1, 2).row(0).transpose());
        for (Eigen::Index q = 0; q < queries.rows(); ++q) {
            const double v = f.conditional_variance(queries.row(q).transpose());
            CHECK(v <= previous[q] + 1e-15);
            previous[q] = v;
        }
    }
}

TEST_CASE("extending by a duplicate pending point stays valid") {
    std::mt19937_64 gen(21);
    const auto k = KernelSpec::squared_exponential(0.4, 2);
    const PosteriorState state(random_dataset(gen, 4, 2, 0.01), k);
    const VectorXd p = VectorXd::Constant(2, 0.6);
    const FantasyState once = FantasyState(state).extended(p);
    const FantasyState twice = once.extended(p);
    MatrixXd both(2, 2);
    both.row(0) = p.transpose();
    both.row(1) = p.transpose();
    const FantasyState rebuilt(state, both);
    for (Eigen::Index q = 0; q < 10; ++q) {
        const VectorXd x = oracle::random_points(gen, 1, 2).row(0).transpose();
        CHECK(twice.conditional_variance(x) <= once.conditional_variance(x) + 1e-15);
        CHECK(twice.conditional_variance(x) == doctest::Approx(rebuilt.conditional_variance(x)).epsilon(1e-6));
    }
}

TEST_CASE("candidate variance tracker agrees with fantasy states") {
    std::mt19937_64 gen(31);
    const auto k = KernelSpec::matern(2.5, 0.35, 3);
    const PosteriorState state(random_dataset(gen, 8, 3, 0.05), k);
    const CandidateSet cands = unit_candidates(oracle::random_points(gen, 40, 3));
    CandidateVariance cv(state, cands);
    FantasyState f(state);
    for (Eigen::Index pick : {3, 17, 3, 29}) {
        cv.condition_on(pick);
        f = f.extended(cands.point(pick));
        for (Eigen::Index i = 0; i < cands.size(); ++i) {
            CHECK(cv.variances()[i] == doctest::Approx(f.conditional_variance(cands.point(i))).epsilon(1e-9));
            CHECK(cv.means()[i] == doctest::Approx(state.mean_var(cands.point(i)).mean).epsilon(1e-12));
        }
    }
    CHECK(cv.picks() == 4);
    CHECK_THROWS_AS(cv.condition_on(40), InvalidArgument);
}

TEST_CASE("joint draws reproduce posterior moments") {
    std::mt19937_64 gen(41);
    const auto k = KernelSpec::matern(1.5, 0.5, 2);
    const auto ref = oracle::matern(1.5, VectorXd::Constant(2, 0.5));
    const Dataset data = random_dataset(gen, 6, 2, 0.1);
    const PosteriorState state(data, k);
    const CandidateSet cands = unit_candidates(oracle::random_points(gen, 5, 2));
    const MatrixXd cov = oracle::dense_posterior_covariance(ref, data.inputs(), 0.1, cands.points());
    VectorXd mu(5);
    for (Eigen::Index i = 0; i < 5; ++i)
        mu[i] = oracle::dense_posterior(ref, data.inputs(), data.targets(), 0.1, cands.point(i)).mean;

    const int n = 10000;
    JointSampler sampler(state, cands);
    RngStream rng(123);
    MatrixXd draws(n, 5);
    for (int s = 0; s < n; ++s) draws.row(s) = sampler.draw(rng).transpose();
    const VectorXd mean = draws.colwise().mean().transpose();
    const MatrixXd centred = draws.rowwise() - mean.transpose();
    const MatrixXd emp = centred.transpose() * centred / (n - 1);
    for (Eigen::Index i = 0; i < 5; ++i) {
        CHECK(std::abs(mean[i] - mu[i]) <= 4.0 * std::sqrt(cov(i, i) / n));
        for (Eigen::Index j = 0; j < 5; ++j) {
            // Var of a sample covariance entry: (S_ii S_jj + S_ij^2) / n.
            const double se = std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / n);
            CHECK(std::abs(emp(i, j) - cov(i, j)) <= 4.0 * se);
        }
    }
}

TEST_CASE("single prior candidate draws are standard normal") {
    const auto k = KernelSpec::squared_exponential(1.0, 1);
    const PosteriorState state(Dataset(1, 0.1), k);
    MatrixXd one(1, 1);
    one << 0.5;
    const CandidateSet cands = unit_candidates(one);
    double sum = 0.0, sum2 = 0.0;
    const int n = 10000;
    for (int s = 0; s < n; ++s) {
        RngStream rng(static_cast<std::uint64_t>(s));
        const auto best = sample_max(state, cands, rng);
        CHECK(best.index == 0);
        sum += best.value;
        sum2 += best.value * best.value;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("draws are deterministic given the seed") {
    std::mt19937_64 gen(2);
    const auto k = KernelSpec::matern(1.5, 0.3, 2);
    const PosteriorState state(random_dataset(gen, 5, 2, 0.1), k);
    const CandidateSet cands = unit_candidates(oracle::random_points(gen, 30, 2));
    RngStream a(9), b(9);
    CHECK(sample_posterior_joint(state, cands, a) == sample_posterior_joint(state, cands, b));
}

TEST_CASE("max of draw breaks ties by lowest index") {
    MatrixXd pts(3, 1);
    pts << 0.1, 0.5, 0.9;
    const CandidateSet cands = unit_candidates(pts);
    VectorXd v(3);
    v << 1.0, 2.0, 2.0;
    const auto best = max_of_draw(v, cands);
    CHECK(best.index == 1);
    CHECK(best.value == 2.0);
    CHECK(best.point[0] == 0.5);
}

TEST_CASE("near-deterministic posterior returns the observed argmax") {
    MatrixXd pts(3, 1);
    pts << 0.1, 0.5, 0.9;
    const CandidateSet cands = unit_candidates(pts);
    VectorXd y(3);
    y << 0.2, 0.8, -0.1;
    const PosteriorState state(Dataset(pts, y, 1e-6), KernelSpec::squared_exponential(0.2, 1));
    for (std::uint64_t s = 0; s < 20; ++s) {
        RngStream rng(s);
        CHECK(sample_max(state, cands, rng).index == 1);
    }
}

TEST_CASE("Thompson argmax frequencies match an independent sampler") {
    MatrixXd pts(3, 1);
    pts << 0.2, 0.5, 0.8;
    const CandidateSet cands = unit_candidates(pts);
    MatrixXd X(2, 1);
    X << 0.3, 0.75;
    VectorXd y(2);
    y << 0.4, 0.5;
    const double noise = 0.3;
    const auto k = KernelSpec::squared_exponential(0.25, 1);
    const auto ref = oracle::squared_exponential(VectorXd::Constant(1, 0.25));
    const PosteriorState state(Dataset(X, y, noise), k);

    VectorXd mu(3);
    for (Eigen::Index i = 0; i < 3; ++i) mu[i] = oracle::dense_posterior(ref, X, y, noise, cands.point(i)).mean;
    oracle::IndependentSampler indep(mu, oracle::dense_posterior_covariance(ref, X, noise, pts), 555);

    const int n = 10000;
    Eigen::Vector3d got = Eigen::Vector3d::Zero(), want = Eigen::Vector3d::Zero();
    RngStream rng(17);
    JointSampler sampler(state, cands);
    for (int s = 0; s < n; ++s) {
        got[max_of_draw(sampler.draw(rng), cands).index] += 1.0 / n;
        Eigen::Index j;
        indep.draw().maxCoeff(&j);
        want[j] += 1.0 / n;
    }
    for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - want[i]) <= 0.02);
}
