#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

namespace tsrsr::diagnostics {

struct SlotRecord {
    int iteration = 0;  // 1-based
    int slot = 0;       // 1-based
    Eigen::Index candidate = -1;
    Eigen::VectorXd point;
    double observation = 0.0;  // noisy y
    double value = 0.0;        // noise-free f(x)
    double regret = 0.0;       // fstar - value
    double sigma = std::numeric_limits<double>::quiet_NaN();
    double rsr = std::numeric_limits<double>::quiet_NaN();
    double fstar_draw = std::numeric_limits<double>::quiet_NaN();
    int resamples = 0;
};

/// Per-iteration, per-slot record of a batch run against a reference optimum.
class RegretTrace {
public:
    RegretTrace(double fstar, int iterations, int batch_size);

    double fstar() const noexcept { return fstar_; }
    int iterations() const noexcept { return iterations_; }
    int batch_size() const noexcept { return batch_size_; }
    const std::vector<SlotRecord>& records() const noexcept { return records_; }

    /// Appends a record; regret is recomputed from value and fstar.
    void add(SlotRecord record);
    /// Appends a record as-is (regret kept), for traces read back from disk.
    void restore(SlotRecord record);
    bool complete() const noexcept;
    bool has_rsr() const noexcept;

    /// Running minimum of instantaneous regret after each iteration (length T).
    std::vector<double> best_so_far() const;

private:
    double fstar_;
    int iterations_;
    int batch_size_;
    std::vector<SlotRecord> records_;
};

/// Sum over all slots of fstar - f(x).
double cumulative_regret(const RegretTrace& trace);

/// Minimum instantaneous regret over all slots (0 slots -> +inf).
double simple_regret(const RegretTrace& trace);

/// Best-so-far simple regret over the first `iterations` iterations.
double simple_regret_at(const RegretTrace& trace, int iterations);

}  // namespace tsrsr::diagnostics
