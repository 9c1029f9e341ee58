#include "tsrsr/bench/trial.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "tsrsr/acquisition/acquisition.hpp"
#include "tsrsr/error.hpp"
#include "tsrsr/testbed/candidates.hpp"
#include "tsrsr/testbed/oracle.hpp"

namespace tsrsr::bench {

namespace {

struct Prepared {
    TrialSetup setup;
    testbed::NoisyOracle oracle;
};

gp::KernelSpec prior_kernel(const std::string& id) {
    return id == "gp-prior-2d" ? gp::KernelSpec::squared_exponential(0.25, 2)
                               : gp::KernelSpec::squared_exponential(0.15, 3);
}

gp::Box prior_domain(const std::string& id) {
    return id == "gp-prior-2d" ? gp::Box::cube(-5.0, 5.0, 2) : gp::Box::cube(0.0, 1.0, 3);
}

double best_candidate_value(const testbed::Objective& objective, const gp::CandidateSet& candidates) {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < candidates.size(); ++i) best = std::max(best, objective(candidates.point(i)));
    return best;
}

Prepared prepare(const ExperimentConfig& cfg, int trial_index) {
    cfg.validate();
    if (trial_index < 0) throw InvalidArgument("trial index must be non-negative");
    const std::uint64_t seed = trial_seed(cfg.seed, trial_index);
    const Eigen::Index count = cfg.resolved_candidate_count();

    std::optional<testbed::Objective> objective;
    std::optional<gp::CandidateSet> candidates;
    if (testbed::is_gp_prior_id(cfg.objective)) {
        const auto group = static_cast<std::uint64_t>(trial_index / cfg.trials_per_function);
        const std::uint64_t fseed = derive_seed(derive_seed(cfg.seed, "function"), group);
        RngStream crng(derive_seed(fseed, "candidates"));
        candidates = testbed::make_candidates(prior_domain(cfg.objective), count, cfg.scheme, crng);
        RngStream drng(derive_seed(fseed, "draw"));
        objective = testbed::sample_prior_function(prior_kernel(cfg.objective), *candidates, drng)
                        .as_objective(cfg.objective);
    } else {
        objective = testbed::objective_by_id(cfg.objective);
        RngStream crng(derive_seed(seed, "candidates"));
        candidates = testbed::make_candidates(objective->domain, count, cfg.scheme, crng);
    }

    double fstar = 0.0;
    if (cfg.regret_reference == RegretReference::Known && objective->optimum_value &&
        !objective->per_candidate_optimum)
        fstar = *objective->optimum_value;
    else
        fstar = best_candidate_value(*objective, *candidates);

    testbed::NoisyOracle oracle(*objective, cfg.noise, derive_seed(seed, "noise"));
    RngStream design_rng(derive_seed(seed, "design"));
    auto design = testbed::initial_design(oracle, *candidates, cfg.n_init, design_rng, cfg.noise);
    return Prepared{TrialSetup{std::move(*objective), std::move(*candidates), fstar, std::move(design.indices),
                               std::move(design.data)},
                    std::move(oracle)};
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, int trial_index) {
    return derive_seed(master, static_cast<std::uint64_t>(trial_index));
}

TrialSetup prepare_trial(const ExperimentConfig& cfg, int trial_index) {
    return prepare(cfg, trial_index).setup;
}

TrialResult run_trial(const ExperimentConfig& cfg, const std::string& algorithm, int trial_index) {
    const auto start = std::chrono::steady_clock::now();
    const AlgorithmEntry& entry = cfg.algorithm(algorithm);
    Prepared prep = prepare(cfg, trial_index);
    const TrialSetup& setup = prep.setup;
    const gp::KernelSpec kernel = cfg.model_kernel();
    const std::uint64_t seed = trial_seed(cfg.seed, trial_index);
    const int iterations = cfg.T_init + cfg.T;

    TrialResult result;
    result.trial = trial_index;
    result.algorithm = algorithm;
    result.seed = seed;
    result.config_hash = cfg.hash_hex();
    result.objective = cfg.objective;
    result.dimension = cfg.dimension();
    result.candidate_count = setup.candidates.size();
    result.n_init = cfg.n_init;
    result.T_init = cfg.T_init;
    result.noise = cfg.noise;
    result.initial_indices = setup.initial_indices;
    result.trace = diagnostics::RegretTrace(setup.fstar, iterations, cfg.m);

    RngStream rng(derive_seed(seed, "algo:" + algorithm));
    gp::Dataset data = setup.initial_data;
    std::optional<diagnostics::RhoEstimate> rho;
    const bool audit = entry.acquisition.strategy == acquisition::Strategy::TsRsr;

    for (int it = 0; it < iterations; ++it) {
        try {
            const gp::PosteriorState state(data, kernel);
            if (audit && it == cfg.T_init) {
                RngStream rho_rng(derive_seed(seed, "rho:" + algorithm));
                rho = diagnostics::rho_m_estimate(state, setup.candidates, cfg.m, cfg.rho_subsets, rho_rng);
            }
            const auto batch = it < cfg.T_init
                                   ? acquisition::propose_maxvar(state, setup.candidates, cfg.m)
                                   : acquisition::propose(entry.acquisition, state, setup.candidates, cfg.m, rng,
                                                          it - cfg.T_init);
            for (int s = 0; s < cfg.m; ++s) {
                const auto& slot = batch.slots[static_cast<std::size_t>(s)];
                const Eigen::VectorXd x = batch.points.row(s).transpose();
                diagnostics::SlotRecord rec;
                rec.iteration = it + 1;
                rec.slot = s + 1;
                rec.candidate = slot.candidate;
                rec.point = x;
                rec.observation = prep.oracle.evaluate(x);
                rec.value = setup.objective(x);
                rec.sigma = slot.sigma;
                rec.rsr = slot.rsr;
                rec.fstar_draw = slot.fstar_draw;
                rec.resamples = slot.resamples;
                result.trace.add(rec);
            }
            for (const auto& rec : result.trace.records())
                if (rec.iteration == it + 1) data.add(rec.point, rec.observation);
        } catch (const NumericalFailure& e) {
            throw NumericalFailure(fmt::format("trial {} ({}), iteration {}: {}", trial_index, algorithm, it + 1,
                                               e.what()));
        }
    }

    result.evaluations = prep.oracle.evaluations();
    const std::int64_t budget = cfg.n_init + static_cast<std::int64_t>(iterations) * cfg.m;
    if (result.evaluations != budget || !result.trace.complete())
        throw InternalError(fmt::format("trial {} ({}): {} evaluations, expected {}", trial_index, algorithm,
                                        result.evaluations, budget));
    if (audit && rho)
        result.theory = diagnostics::make_theory_report(result.trace, cfg.noise, result.candidate_count,
                                                        cfg.theory_delta, *rho);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace tsrsr::bench
