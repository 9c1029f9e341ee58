#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tsrsr/bench/results.hpp"

namespace tsrsr::bench {

struct SummaryRow {
    std::string algorithm;
    int trials = 0;
    double mean = 0.0;
    double standard_error = 0.0;
    int rank = 0;
    double ratio = 1.0;  // mean / best mean
};

/// Mean and standard error of best-so-far simple regret after `at_iteration`
/// iterations (<= 0: the last). Rows are ordered by rank; ties in mean are
/// broken by id. Throws InvalidArgument when results mix config hashes.
std::vector<SummaryRow> summarize(const std::vector<StoredTrial>& trials, int at_iteration = 0);

struct CurvePoint {
    int iteration = 0;
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Per algorithm: mean and standard error of best-so-far simple regret at
/// every iteration.
std::map<std::string, std::vector<CurvePoint>> regret_curves(const std::vector<StoredTrial>& trials);

/// Writes curve_<algo>.csv files into `dir`; returns their paths.
std::vector<std::filesystem::path> emit_plotdata(const std::vector<StoredTrial>& trials,
                                                 const std::filesystem::path& dir);

struct TheoryAuditRow {
    std::string algorithm;
    int trial = 0;
    double rho_hat = 1.0;
    double bound = 0.0;
    double max_psi = 0.0;
    double violation_fraction = 0.0;
    std::size_t slots = 0;
};

/// Bound audit of every tsrsr trial, using the rho estimate stored in each
/// file's header.
std::vector<TheoryAuditRow> audit_theory(const std::vector<StoredTrial>& trials, double delta);

/// Slot-weighted violation fraction across audit rows.
double pooled_violation_fraction(const std::vector<TheoryAuditRow>& rows);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_audit_csv(std::ostream& out, const std::vector<TheoryAuditRow>& rows);

}  // namespace tsrsr::bench
