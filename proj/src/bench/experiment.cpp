#include "tsrsr/bench/experiment.hpp"

#include <mutex>
#include <sstream>

#include <fmt/format.h>

#include "tsrsr/bench/results.hpp"
#include "tsrsr/error.hpp"
#include "tsrsr/parallel.hpp"

namespace tsrsr::bench {

namespace fs = std::filesystem;

namespace {

struct Pair {
    int trial;
    std::string algorithm;
};

std::string manifest_text(const ExperimentConfig& cfg, const std::vector<Pair>& pairs,
                          const std::vector<double>& seconds, const std::vector<bool>& done) {
    std::size_t finished = 0;
    for (bool d : done) finished += d ? 1 : 0;
    std::ostringstream os;
    os << "manifest.status=" << (finished == pairs.size() ? "complete" : "incomplete") << '\n'
       << "manifest.completed=" << finished << '\n'
       << "manifest.total=" << pairs.size() << '\n'
       << "manifest.config_hash=" << cfg.hash_hex() << '\n'
       << "manifest.version=" << kLibraryVersion << '\n'
       << "manifest.master_seed=" << cfg.seed << '\n';
    for (int t = 0; t < cfg.trials; ++t) os << "manifest.trial_seed." << t << '=' << trial_seed(cfg.seed, t) << '\n';
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!done[i]) continue;
        os << "manifest.file." << pairs[i].algorithm << '.' << pairs[i].trial << '='
           << trial_file_name(pairs[i].algorithm, pairs[i].trial) << '\n'
           << "manifest.seconds." << pairs[i].algorithm << '.' << pairs[i].trial << '='
           << fmt::format("{:.3f}", seconds[i]) << '\n';
    }
    os << cfg.serialize();
    return os.str();
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
    cfg.validate();
    const fs::path dir = cfg.out_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create output directory: " + ec.message());

    std::vector<Pair> pairs;
    for (int t = 0; t < cfg.trials; ++t)
        for (const auto& a : cfg.algorithms) pairs.push_back({t, a.id});

    ExperimentOutcome outcome;
    outcome.manifest = dir / "manifest.txt";
    std::vector<double> seconds(pairs.size(), 0.0);
    std::vector<bool> done(pairs.size(), false);
    std::vector<fs::path> files(pairs.size());
    std::mutex mutex;
    bool stopped = false;

    write_text_atomic(outcome.manifest, manifest_text(cfg, pairs, seconds, done));
    const int workers = options.workers > 0 ? options.workers : cfg.workers;
    parallel_for(pairs.size(), static_cast<std::size_t>(workers), [&](std::size_t i) {
        {
            std::lock_guard lock(mutex);
            if (stopped || (options.stop_requested && options.stop_requested())) {
                stopped = true;
                return;
            }
        }
        TrialResult result = run_trial(cfg, pairs[i].algorithm, pairs[i].trial);
        const fs::path path = write_trial(result, dir);
        std::lock_guard lock(mutex);
        files[i] = path;
        seconds[i] = result.seconds;
        done[i] = true;
        write_text_atomic(outcome.manifest, manifest_text(cfg, pairs, seconds, done));
        if (options.on_result) options.on_result(result);
    });

    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (done[i]) outcome.files.push_back(files[i]);
    outcome.complete = outcome.files.size() == pairs.size();
    return outcome;
}

}  // namespace tsrsr::bench
