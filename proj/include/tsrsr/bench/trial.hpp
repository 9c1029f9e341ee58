#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsrsr/bench/config.hpp"
#include "tsrsr/diagnostics/regret.hpp"
#include "tsrsr/diagnostics/theory.hpp"
#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/testbed/objectives.hpp"

namespace tsrsr::bench {

/// Seed discipline. Every stream of a trial derives from
///   trial_seed = derive_seed(master, trial_index)
/// through a named tag: "candidates", "design", "noise", "algo:<id>",
/// "rho:<id>". GP-prior objectives instead take their function draw and
/// candidates from
///   function_seed = derive_seed(derive_seed(master, "function"), trial_index / trials_per_function)
/// (tags "draw" and "candidates"), so consecutive trials can share a function.
/// Everything except the "algo:" and "rho:" streams is shared by all
/// algorithms at the same trial index.
std::uint64_t trial_seed(std::uint64_t master, int trial_index);

/// Objective, candidates, regret reference and initial data shared by every
/// algorithm at one trial index.
struct TrialSetup {
    testbed::Objective objective;
    gp::CandidateSet candidates;
    double fstar;
    std::vector<Eigen::Index> initial_indices;
    gp::Dataset initial_data;
};

TrialSetup prepare_trial(const ExperimentConfig& cfg, int trial_index);

struct TrialResult {
    int trial = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string objective;
    Eigen::Index dimension = 0;
    Eigen::Index candidate_count = 0;
    int n_init = 0;
    int T_init = 0;
    double noise = 0.0;
    std::int64_t evaluations = 0;
    std::vector<Eigen::Index> initial_indices;
    diagnostics::RegretTrace trace{0.0, 0, 1};
    std::optional<diagnostics::TheoryReport> theory;  // tsrsr only
    double seconds = 0.0;  // wall clock; not serialized into the trial file
};

/// n_init design, T_init max-variance iterations, then T batch iterations of
/// propose / evaluate / refit. The trace covers all T_init + T iterations.
/// Throws InternalError on budget mismatch.
TrialResult run_trial(const ExperimentConfig& cfg, const std::string& algorithm, int trial_index);

}  // namespace tsrsr::bench
