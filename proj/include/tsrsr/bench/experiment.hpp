#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "tsrsr/bench/config.hpp"
#include "tsrsr/bench/trial.hpp"

namespace tsrsr::bench {

struct RunOptions {
    int workers = 0;  // 0: use cfg.workers
    /// Checked before each (trial, algorithm) pair starts; true stops the run
    /// and leaves the manifest marked incomplete.
    std::function<bool()> stop_requested;
    std::function<void(const TrialResult&)> on_result;
};

struct ExperimentOutcome {
    std::vector<std::filesystem::path> files;
    std::filesystem::path manifest;
    bool complete = false;
};

/// Runs every (trial, algorithm) pair, writing one result file per pair and
/// a manifest (manifest.txt) that is rewritten after each pair. Pairs run in
/// parallel when workers > 1; results do not depend on the worker count.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace tsrsr::bench
