#pragma once

#include <Eigen/Core>

namespace tsrsr::gp {

struct JitterPolicy {
    double initial = 1e-10;
    double growth = 10.0;
    double maximum = 1e-4;
    bool try_without = false;  // attempt a plain factorization before adding any jitter
};

struct CholeskyFactor {
    Eigen::MatrixXd lower;
    double jitter = 0.0;  // diagonal shift that made the factorization succeed
};

/// Lower Cholesky factor of a symmetric matrix, escalating the diagonal
/// jitter per `policy`. Throws NumericalFailure with a condition summary
/// (size, diagonal range, last jitter tried) when every attempt fails.
CholeskyFactor robust_cholesky(const Eigen::MatrixXd& symmetric, const JitterPolicy& policy = {});

}  // namespace tsrsr::gp
