#include "tsrsr/acquisition/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "tsrsr/error.hpp"
#include "tsrsr/gp/fantasy.hpp"
#include "tsrsr/gp/sampling.hpp"

namespace tsrsr::acquisition {

using Eigen::Index;
using gp::CandidateSet;
using gp::CandidateVariance;
using gp::PosteriorState;

std::string_view strategy_id(Strategy s) {
    switch (s) {
        case Strategy::TsRsr: return "tsrsr";
        case Strategy::Ts: return "ts";
        case Strategy::Bucb: return "bucb";
        case Strategy::Ucbpe: return "ucbpe";
        case Strategy::Qei: return "qei";
        case Strategy::Sp: return "sp";
        case Strategy::MaxVar: return "maxvar";
    }
    return "tsrsr";
}

const std::vector<Strategy>& all_strategies() {
    static const std::vector<Strategy> all{Strategy::TsRsr, Strategy::Ts,  Strategy::Bucb,  Strategy::Ucbpe,
                                           Strategy::Qei,   Strategy::Sp,  Strategy::MaxVar};
    return all;
}

Strategy parse_strategy(std::string_view id) {
    for (Strategy s : all_strategies())
        if (strategy_id(s) == id) return s;
    throw InvalidArgument("unknown strategy '" + std::string(id) + "'");
}

void AcquisitionConfig::validate() const {
    if (resample_cap < 0) throw InvalidArgument("resample cap must be non-negative");
    if (!(temperature > 0.0)) throw InvalidArgument("temperature must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
}

double rsr_value(double f_star_tilde, double mean, double sigma) {
    if (!(sigma > 0.0)) throw InvalidArgument("rsr_value: sigma must be positive");
    return (f_star_tilde - mean) / sigma;
}

double beta_schedule(Index candidate_count, int iteration, double delta) {
    const double t1 = static_cast<double>(iteration) + 1.0;
    return 2.0 * std::log(static_cast<double>(candidate_count) * t1 * t1 * std::numbers::pi *
                          std::numbers::pi / (6.0 * delta));
}

double expected_improvement(double mean, double sigma, double incumbent) {
    const double gain = mean - incumbent;
    if (!(sigma > 0.0)) return std::max(gain, 0.0);
    const double z = gain / sigma;
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return std::max(gain * cdf + sigma * pdf, 0.0);
}

double incumbent_value(const PosteriorState& state, const Eigen::VectorXd& candidate_means) {
    if (state.data().size() > 0) return state.data().targets().maxCoeff();
    return candidate_means.maxCoeff();
}

namespace {

void check_request(const CandidateSet& candidates, const PosteriorState& state, int m) {
    if (m < 1) throw InvalidArgument("batch size must be at least 1");
    if (candidates.dimension() != state.kernel().dimension())
        throw InvalidArgument("candidate dimension does not match posterior");
}

/// First index of the maximum; entries where `eligible` is false are skipped.
template <typename Score, typename Eligible>
Index first_argmax(Index n, Score score, Eligible eligible) {
    Index best = -1;
    double best_value = 0.0;
    for (Index i = 0; i < n; ++i) {
        if (!eligible(i)) continue;
        const double v = score(i);
        if (best < 0 || v > best_value) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

template <typename Score>
Index first_argmax(Index n, Score score) {
    return first_argmax(n, score, [](Index) { return true; });
}

SlotDiagnostics base_slot(const CandidateVariance& cv, Index pick) {
    SlotDiagnostics slot;
    slot.candidate = pick;
    slot.mean = cv.means()[pick];
    slot.sigma = cv.sigma(pick);
    return slot;
}

BatchProposal finish(const CandidateSet& candidates, std::vector<SlotDiagnostics> slots) {
    BatchProposal out;
    out.points.resize(static_cast<Index>(slots.size()), candidates.dimension());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        out.indices.push_back(slots[i].candidate);
        out.points.row(static_cast<Index>(i)) = candidates.points().row(slots[i].candidate);
    }
    out.slots = std::move(slots);
    return out;
}

/// Draws joint posterior samples, optionally reusing one factorization.
class DrawSource {
public:
    DrawSource(const PosteriorState& state, const CandidateSet& candidates, bool share)
        : state_(state), candidates_(candidates) {
        if (share) shared_.emplace(state, candidates);
    }

    gp::SampledMax next_max(RngStream& rng) {
        const Eigen::VectorXd draw =
            shared_ ? shared_->draw(rng) : gp::JointSampler(state_, candidates_).draw(rng);
        return gp::max_of_draw(draw, candidates_);
    }

private:
    const PosteriorState& state_;
    const CandidateSet& candidates_;
    std::optional<gp::JointSampler> shared_;
};

Index ucb_pick(const CandidateVariance& cv, double root_beta) {
    return first_argmax(cv.size(), [&](Index i) { return cv.means()[i] + root_beta * cv.sigma(i); });
}

Index maxvar_pick(const CandidateVariance& cv) {
    return first_argmax(cv.size(), [&](Index i) { return cv.variances()[i]; });
}

}  // namespace

BatchProposal propose_tsrsr(const PosteriorState& state, const CandidateSet& candidates, int m, RngStream& rng,
                            const AcquisitionConfig& cfg) {
    cfg.validate();
    check_request(candidates, state, m);
    if (candidates.size() < 2) throw InvalidArgument("tsrsr needs at least two candidates");

    CandidateVariance cv(state, candidates);
    const Eigen::VectorXd& mu = cv.means();
    const Index best_mean = first_argmax(cv.size(), [&](Index i) { return mu[i]; });
    const double max_mu = mu[best_mean];
    DrawSource draws(state, candidates, cfg.share_factorization);

    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        double fstar = draws.next_max(rng).value;
        int resamples = 0;
        while (fstar < max_mu && resamples < cfg.resample_cap) {
            fstar = draws.next_max(rng).value;
            ++resamples;
        }
        if ((cv.variances().array() <= 0.0).all())
            throw DegeneratePosterior("tsrsr: every candidate has zero conditional variance at slot " +
                                      std::to_string(slot + 1));

        Index pick;
        bool fallback = false;
        if (fstar < max_mu) {
            pick = best_mean;
            fallback = true;
        } else {
            // Minimizing the ratio == maximizing its negation; sigma == 0 candidates are excluded.
            pick = first_argmax(
                cv.size(), [&](Index i) { return -(fstar - mu[i]) / cv.sigma(i); },
                [&](Index i) { return cv.variances()[i] > 0.0; });
        }
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.fstar_draw = fstar;
        diag.resamples = resamples;
        diag.fallback = fallback;
        if (diag.sigma > 0.0) diag.rsr = rsr_value(fstar, diag.mean, diag.sigma);
        diag.score = diag.rsr;
        slots.push_back(diag);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_ts(const PosteriorState& state, const CandidateSet& candidates, int m, RngStream& rng) {
    check_request(candidates, state, m);
    CandidateVariance cv(state, candidates);
    DrawSource draws(state, candidates, true);
    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        const gp::SampledMax best = draws.next_max(rng);
        SlotDiagnostics diag = base_slot(cv, best.index);
        diag.fstar_draw = best.value;
        diag.score = best.value;
        slots.push_back(diag);
        cv.condition_on(best.index);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_bucb(const PosteriorState& state, const CandidateSet& candidates, int m,
                           const AcquisitionConfig& cfg, int iteration) {
    cfg.validate();
    check_request(candidates, state, m);
    const double root_beta = std::sqrt(beta_schedule(candidates.size(), iteration, cfg.delta));
    CandidateVariance cv(state, candidates);
    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        const Index pick = ucb_pick(cv, root_beta);
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.score = diag.mean + root_beta * diag.sigma;
        slots.push_back(diag);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_ucbpe(const PosteriorState& state, const CandidateSet& candidates, int m,
                            const AcquisitionConfig& cfg, int iteration) {
    cfg.validate();
    check_request(candidates, state, m);
    const double root_beta = std::sqrt(beta_schedule(candidates.size(), iteration, cfg.delta));
    CandidateVariance cv(state, candidates);
    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        const Index pick = slot == 0 ? ucb_pick(cv, root_beta) : maxvar_pick(cv);
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.score = slot == 0 ? diag.mean + root_beta * diag.sigma : diag.sigma;
        slots.push_back(diag);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_qei(const PosteriorState& state, const CandidateSet& candidates, int m,
                          const AcquisitionConfig& cfg) {
    cfg.validate();
    check_request(candidates, state, m);
    CandidateVariance cv(state, candidates);
    const Eigen::VectorXd& mu = cv.means();
    double incumbent = incumbent_value(state, mu);
    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        Eigen::VectorXd ei(cv.size());
        for (Index i = 0; i < cv.size(); ++i) ei[i] = expected_improvement(mu[i], cv.sigma(i), incumbent);
        Index pick = first_argmax(cv.size(), [&](Index i) { return ei[i]; });
        if (!(ei[pick] > 0.0)) pick = first_argmax(cv.size(), [&](Index i) { return mu[i]; });
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.score = ei[pick];
        slots.push_back(diag);
        // Kriging believer: observing mu at the pick leaves the mean unchanged,
        // shrinks the variance, and may raise the incumbent.
        incumbent = std::max(incumbent, mu[pick]);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_sp(const PosteriorState& state, const CandidateSet& candidates, int m, RngStream& rng,
                         const AcquisitionConfig& cfg) {
    cfg.validate();
    check_request(candidates, state, m);
    CandidateVariance cv(state, candidates);
    const Eigen::VectorXd& mu = cv.means();
    const double incumbent = incumbent_value(state, mu);
    const Index n = cv.size();

    Eigen::VectorXd ei(n);
    for (Index i = 0; i < n; ++i) ei[i] = expected_improvement(mu[i], cv.sigma(i), incumbent);
    Eigen::VectorXd weights(n);
    if ((ei.array() == 0.0).all()) {
        weights.setOnes();
    } else {
        const double top = ei.maxCoeff();
        weights = ((ei.array() - top) / cfg.temperature).exp().matrix();
    }
    Eigen::VectorXd cdf(n);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
        total += weights[i];
        cdf[i] = total;
    }

    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        const double u = rng.uniform() * total;
        Index pick = static_cast<Index>(std::upper_bound(cdf.data(), cdf.data() + n, u) - cdf.data());
        pick = std::min(pick, n - 1);
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.score = ei[pick];
        slots.push_back(diag);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose_maxvar(const PosteriorState& state, const CandidateSet& candidates, int m) {
    check_request(candidates, state, m);
    CandidateVariance cv(state, candidates);
    std::vector<SlotDiagnostics> slots;
    for (int slot = 0; slot < m; ++slot) {
        const Index pick = maxvar_pick(cv);
        SlotDiagnostics diag = base_slot(cv, pick);
        diag.score = diag.sigma;
        slots.push_back(diag);
        cv.condition_on(pick);
    }
    return finish(candidates, std::move(slots));
}

BatchProposal propose(const AcquisitionConfig& cfg, const PosteriorState& state, const CandidateSet& candidates,
                      int m, RngStream& rng, int iteration) {
    switch (cfg.strategy) {
        case Strategy::TsRsr: return propose_tsrsr(state, candidates, m, rng, cfg);
        case Strategy::Ts: return propose_ts(state, candidates, m, rng);
        case Strategy::Bucb: return propose_bucb(state, candidates, m, cfg, iteration);
        case Strategy::Ucbpe: return propose_ucbpe(state, candidates, m, cfg, iteration);
        case Strategy::Qei: return propose_qei(state, candidates, m, cfg);
        case Strategy::Sp: return propose_sp(state, candidates, m, rng, cfg);
        case Strategy::MaxVar: return propose_maxvar(state, candidates, m);
    }
    throw InternalError("unhandled strategy");
}

}  // namespace tsrsr::acquisition
