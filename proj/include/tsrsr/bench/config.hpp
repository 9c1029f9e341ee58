#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tsrsr/acquisition/acquisition.hpp"
#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/kernel.hpp"

namespace tsrsr::bench {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct AlgorithmEntry {
    std::string id;
    acquisition::AcquisitionConfig acquisition;
};

/// Regret reference: the objective's known optimum, or the best value on
/// the trial's candidate set.
enum class RegretReference { Known, Candidates };

/// One experiment, read from a flat `key = value` file (dotted keys, `#`
/// comments). Keys under `manifest.` are ignored so manifests replay.
///
///   objective.name          ackley2 | ackley3 | bird | rosenbrock | hartmann6 |
///                           griewank8 | michalewicz10 | gp-prior-2d | gp-prior-3d
///   gp.kernel               matern | rbf
///   gp.nu, gp.lengthscale, gp.signal_variance, gp.noise
///   candidates.scheme       low-discrepancy | uniform | grid
///   candidates.count        0 means 1000 * d
///   run.m, run.T, run.n_init, run.T_init, run.trials, run.seed,
///   run.trials_per_function (gp-prior objectives), run.workers
///   regret.reference        known | candidates
///   algos                   comma-separated strategy ids
///   acq.<param>, acq.<id>.<param>   resample_cap, delta, temperature, share_factorization
///   theory.delta, theory.rho_subsets
///   out.dir
struct ExperimentConfig {
    std::string objective = "ackley2";
    gp::KernelFamily kernel_family = gp::KernelFamily::Matern;
    double nu = 1.5;
    double lengthscale = 0.6931471805599453;  // ln 2
    double signal_variance = 1.0;
    double noise = 1e-3;
    gp::CandidateScheme scheme = gp::CandidateScheme::LowDiscrepancy;
    Eigen::Index candidate_count = 0;
    int m = 5;
    int T = 50;
    int n_init = 15;
    int T_init = 0;
    int trials = 10;
    int trials_per_function = 1;
    std::uint64_t seed = 0;
    int workers = 1;
    RegretReference regret_reference = RegretReference::Known;
    std::vector<AlgorithmEntry> algorithms;
    double theory_delta = 0.05;
    int rho_subsets = 500;
    std::string out_dir = "results";

    void validate() const;

    Eigen::Index dimension() const;
    Eigen::Index resolved_candidate_count() const;
    gp::KernelSpec model_kernel() const;
    const AlgorithmEntry& algorithm(const std::string& id) const;

    /// Result-affecting keys in fixed order (excludes out.dir and run.workers).
    std::string canonical() const;
    /// Every key, including out.dir and run.workers.
    std::string serialize() const;
    std::uint64_t hash() const;
    std::string hash_hex() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Flat key-value reader shared by configs, manifests and result headers.
std::map<std::string, std::string> parse_key_values(std::istream& in, char comment = '#');

}  // namespace tsrsr::bench
