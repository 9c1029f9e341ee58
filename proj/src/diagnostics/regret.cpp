#include "tsrsr/diagnostics/regret.hpp"

#include <algorithm>
#include <cmath>

#include "tsrsr/error.hpp"

namespace tsrsr::diagnostics {

RegretTrace::RegretTrace(double fstar, int iterations, int batch_size)
    : fstar_(fstar), iterations_(iterations), batch_size_(batch_size) {
    if (iterations < 0 || batch_size < 1) throw InvalidArgument("trace needs T >= 0 and m >= 1");
    if (!std::isfinite(fstar)) throw InvalidArgument("trace reference optimum must be finite");
}

void RegretTrace::add(SlotRecord record) {
    if (static_cast<int>(records_.size()) >= iterations_ * batch_size_)
        throw InvalidArgument("trace already holds T * m records");
    record.regret = fstar_ - record.value;
    records_.push_back(std::move(record));
}

void RegretTrace::restore(SlotRecord record) {
    if (static_cast<int>(records_.size()) >= iterations_ * batch_size_)
        throw InvalidArgument("trace already holds T * m records");
    records_.push_back(std::move(record));
}

bool RegretTrace::complete() const noexcept {
    return static_cast<int>(records_.size()) == iterations_ * batch_size_;
}

bool RegretTrace::has_rsr() const noexcept {
    return std::any_of(records_.begin(), records_.end(), [](const SlotRecord& r) { return std::isfinite(r.rsr); });
}

std::vector<double> RegretTrace::best_so_far() const {
    std::vector<double> out(static_cast<std::size_t>(iterations_), std::numeric_limits<double>::infinity());
    double best = std::numeric_limits<double>::infinity();
    std::size_t next = 0;
    for (int t = 1; t <= iterations_; ++t) {
        while (next < records_.size() && records_[next].iteration <= t) best = std::min(best, records_[next++].regret);
        out[static_cast<std::size_t>(t - 1)] = best;
    }
    return out;
}

double cumulative_regret(const RegretTrace& trace) {
    double total = 0.0;
    for (const auto& r : trace.records()) total += r.regret;
    return total;
}

double simple_regret(const RegretTrace& trace) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : trace.records()) best = std::min(best, r.regret);
    return best;
}

double simple_regret_at(const RegretTrace& trace, int iterations) {
    if (iterations < 1 || iterations > trace.iterations())
        throw InvalidArgument("iteration index outside the trace");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : trace.records())
        if (r.iteration <= iterations) best = std::min(best, r.regret);
    return best;
}

}  // namespace tsrsr::diagnostics
