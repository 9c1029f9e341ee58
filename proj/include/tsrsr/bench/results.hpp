#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tsrsr/bench/trial.hpp"

namespace tsrsr::bench {

/// "trial_<algo>_<index>.csv"
std::string trial_file_name(const std::string& algorithm, int trial);

/// Self-describing record: `# key=value` header lines, then one CSV table
/// with columns iter,slot,x1..xd,y,regret,sigma_used,rsr_ratio,fstar_draw,resamples.
std::string format_trial(const TrialResult& result);

/// Writes atomically (temporary file + rename). Throws IoError.
std::filesystem::path write_trial(const TrialResult& result, const std::filesystem::path& dir);

struct StoredTrial {
    std::filesystem::path path;
    std::map<std::string, std::string> header;
    std::string algorithm;
    int trial = 0;
    std::string config_hash;
    Eigen::Index candidate_count = 0;
    std::int64_t evaluations = 0;
    int n_init = 0;
    int T_init = 0;
    diagnostics::RegretTrace trace{0.0, 0, 1};

    double header_number(const std::string& key) const;
};

StoredTrial read_trial(const std::filesystem::path& path);

/// Every trial_*.csv in a directory, sorted by (algorithm, trial).
std::vector<StoredTrial> load_results(const std::filesystem::path& dir);

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace tsrsr::bench
