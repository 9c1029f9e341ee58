#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/gp/posterior.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::acquisition {

enum class Strategy { TsRsr, Ts, Bucb, Ucbpe, Qei, Sp, MaxVar };

/// Stable identifiers: "tsrsr", "ts", "bucb", "ucbpe", "qei", "sp", "maxvar".
std::string_view strategy_id(Strategy s);
Strategy parse_strategy(std::string_view id);
const std::vector<Strategy>& all_strategies();

enum class LiarStrategy { KrigingBeliever };

struct AcquisitionConfig {
    Strategy strategy = Strategy::TsRsr;
    int resample_cap = 10;       // tsrsr
    bool share_factorization = true;  // tsrsr/ts: one joint factor per proposal
    double delta = 0.1;          // bucb, ucbpe
    double temperature = 1.0;    // sp
    LiarStrategy liar = LiarStrategy::KrigingBeliever;  // qei

    void validate() const;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SlotDiagnostics {
    Eigen::Index candidate = -1;
    double fstar_draw = kNaN;  // TS draw maximum (tsrsr, ts)
    double mean = kNaN;        // mu_t at the pick
    double sigma = kNaN;       // sigma_t(pick | earlier picks in this batch)
    double rsr = kNaN;         // (fstar_draw - mean) / sigma (tsrsr)
    double score = kNaN;       // strategy's own criterion value at the pick
    int resamples = 0;
    bool fallback = false;     // tsrsr: cap exhausted, argmax mu taken
};

struct BatchProposal {
    std::vector<Eigen::Index> indices;
    Eigen::MatrixXd points;  // one row per slot
    std::vector<SlotDiagnostics> slots;
};

/// Regret-to-sigma ratio. Throws InvalidArgument when sigma <= 0.
double rsr_value(double f_star_tilde, double mean, double sigma);

/// beta_t = 2 log(D (t+1)^2 pi^2 / (6 delta)), t the 0-based iteration.
double beta_schedule(Eigen::Index candidate_count, int iteration, double delta);

/// Closed-form EI for maximization; max(mean - incumbent, 0) when sigma == 0.
double expected_improvement(double mean, double sigma, double incumbent);

BatchProposal propose_tsrsr(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                            RngStream& rng, const AcquisitionConfig& cfg);

BatchProposal propose_ts(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                         RngStream& rng);

BatchProposal propose_bucb(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                           const AcquisitionConfig& cfg, int iteration = 0);

BatchProposal propose_ucbpe(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                            const AcquisitionConfig& cfg, int iteration = 0);

BatchProposal propose_qei(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                          const AcquisitionConfig& cfg);

BatchProposal propose_sp(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m,
                         RngStream& rng, const AcquisitionConfig& cfg);

BatchProposal propose_maxvar(const gp::PosteriorState& state, const gp::CandidateSet& candidates, int m);

/// Dispatches on cfg.strategy.
BatchProposal propose(const AcquisitionConfig& cfg, const gp::PosteriorState& state,
                      const gp::CandidateSet& candidates, int m, RngStream& rng, int iteration = 0);

/// Incumbent for EI: the largest observed target, or the largest candidate
/// mean when there is no data yet.
double incumbent_value(const gp::PosteriorState& state, const Eigen::VectorXd& candidate_means);

}  // namespace tsrsr::acquisition
