#include "tsrsr/bench/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "tsrsr/diagnostics/theory.hpp"
#include "tsrsr/error.hpp"

namespace tsrsr::bench {

namespace {

void require_single_hash(const std::vector<StoredTrial>& trials) {
    std::set<std::string> hashes;
    for (const auto& t : trials) hashes.insert(t.config_hash);
    if (hashes.size() > 1) throw InvalidArgument("results mix several config hashes");
}

std::pair<double, double> mean_and_se(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::map<std::string, std::vector<const StoredTrial*>> by_algorithm(const std::vector<StoredTrial>& trials) {
    std::map<std::string, std::vector<const StoredTrial*>> out;
    for (const auto& t : trials) out[t.algorithm].push_back(&t);
    return out;
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<StoredTrial>& trials, int at_iteration) {
    if (trials.empty()) throw InvalidArgument("no results to summarize");
    require_single_hash(trials);
    std::vector<SummaryRow> rows;
    for (const auto& [algo, group] : by_algorithm(trials)) {
        std::vector<double> values;
        for (const auto* t : group) {
            const int at = at_iteration > 0 ? at_iteration : t->trace.iterations();
            if (at > t->trace.iterations())
                throw InvalidArgument(fmt::format("iteration {} is beyond the {} recorded", at,
                                                  t->trace.iterations()));
            values.push_back(diagnostics::simple_regret_at(t->trace, at));
        }
        const auto [mean, se] = mean_and_se(values);
        rows.push_back({algo, static_cast<int>(values.size()), mean, se, 0, 1.0});
    }
    std::sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
        return std::tie(a.mean, a.algorithm) < std::tie(b.mean, b.algorithm);
    });
    const double best = rows.front().mean;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = static_cast<int>(i) + 1;
        if (i == 0)
            rows[i].ratio = 1.0;
        else if (best > 0.0)
            rows[i].ratio = rows[i].mean / best;
        else
            rows[i].ratio = rows[i].mean > best ? std::numeric_limits<double>::infinity() : 1.0;
    }
    return rows;
}

std::map<std::string, std::vector<CurvePoint>> regret_curves(const std::vector<StoredTrial>& trials) {
    require_single_hash(trials);
    std::map<std::string, std::vector<CurvePoint>> out;
    for (const auto& [algo, group] : by_algorithm(trials)) {
        std::vector<std::vector<double>> curves;
        std::size_t length = std::numeric_limits<std::size_t>::max();
        for (const auto* t : group) {
            curves.push_back(t->trace.best_so_far());
            length = std::min(length, curves.back().size());
        }
        auto& points = out[algo];
        for (std::size_t i = 0; i < length; ++i) {
            std::vector<double> column;
            for (const auto& c : curves) column.push_back(c[i]);
            const auto [mean, se] = mean_and_se(column);
            points.push_back({static_cast<int>(i) + 1, mean, se});
        }
    }
    return out;
}

std::vector<std::filesystem::path> emit_plotdata(const std::vector<StoredTrial>& trials,
                                                 const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create directory: " + ec.message());
    std::vector<std::filesystem::path> paths;
    for (const auto& [algo, points] : regret_curves(trials)) {
        std::string text = "iteration,mean,standard_error\n";
        for (const auto& p : points) text += fmt::format("{},{},{}\n", p.iteration, num(p.mean), num(p.standard_error));
        const auto path = dir / ("curve_" + algo + ".csv");
        write_text_atomic(path, text);
        paths.push_back(path);
    }
    return paths;
}

std::vector<TheoryAuditRow> audit_theory(const std::vector<StoredTrial>& trials, double delta) {
    require_single_hash(trials);
    std::vector<TheoryAuditRow> rows;
    for (const auto& t : trials) {
        if (!t.header.count("theory.rho_hat")) continue;
        TheoryAuditRow row;
        row.algorithm = t.algorithm;
        row.trial = t.trial;
        row.rho_hat = t.header_number("theory.rho_hat");
        row.bound = diagnostics::rsr_bound(t.candidate_count, t.trace.batch_size(), t.trace.iterations(), delta,
                                           row.rho_hat);
        row.violation_fraction = diagnostics::rsr_bound_check(t.trace, t.candidate_count, t.trace.batch_size(),
                                                              t.trace.iterations(), delta, row.rho_hat);
        for (const auto& r : t.trace.records())
            if (std::isfinite(r.rsr)) row.max_psi = std::max(row.max_psi, r.rsr);
        row.slots = t.trace.records().size();
        rows.push_back(row);
    }
    return rows;
}

double pooled_violation_fraction(const std::vector<TheoryAuditRow>& rows) {
    double violations = 0.0;
    std::size_t slots = 0;
    for (const auto& r : rows) {
        violations += r.violation_fraction * static_cast<double>(r.slots);
        slots += r.slots;
    }
    return slots == 0 ? 0.0 : std::round(violations) / static_cast<double>(slots);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "algorithm,trials,mean,standard_error,rank,ratio\n";
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{},{},{}\n", r.algorithm, r.trials, num(r.mean), num(r.standard_error), r.rank,
                           num(r.ratio));
}

void write_audit_csv(std::ostream& out, const std::vector<TheoryAuditRow>& rows) {
    out << "algorithm,trial,rho_hat,bound,max_psi,violation_fraction,slots\n";
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{},{},{},{}\n", r.algorithm, r.trial, num(r.rho_hat), num(r.bound),
                           num(r.max_psi), num(r.violation_fraction), r.slots);
}

}  // namespace tsrsr::bench
