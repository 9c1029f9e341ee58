#pragma once

#include <cstdint>

namespace tsrsr::diagnostics {

/// Correlation structure of the random covariance drawn for each sample.
enum class CovarianceKind {
    Random,      // five-factor model plus idiosyncratic noise
    Diagonal,    // independent coordinates
    Correlated,  // equicorrelated with correlation 0.9
};

/// Monte-Carlo frequency of (Y* - mu_l*) / sigma_l* > sqrt(2 log(D / delta)),
/// Y ~ N(mu, Sigma) with random mu, random variances in [0.05, 1] and the
/// given correlation structure. Draw k uses a stream derived from (seed, k),
/// so results do not depend on `workers`.
double verify_max_ratio_lemma(int dim, double delta, int n_draws, std::uint64_t seed,
                              CovarianceKind kind = CovarianceKind::Random, int workers = 1);

struct MaxSquareEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    double bound = 0.0;  // 6 log D
};

/// Monte-Carlo estimate of E[max_j Y_j^2], Y ~ N(0, Sigma) with every
/// variance equal to variance_scale (the worst case of the unit-bounded
/// family when the scale is 1). Same stream discipline as above.
MaxSquareEstimate verify_max_square_lemma(int dim, int n_draws, std::uint64_t seed, double variance_scale = 1.0,
                                          CovarianceKind kind = CovarianceKind::Random, int workers = 1);

}  // namespace tsrsr::diagnostics
