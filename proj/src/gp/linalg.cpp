#include "tsrsr/gp/linalg.hpp"

#include <Eigen/Cholesky>
#include <sstream>

#include "tsrsr/error.hpp"

namespace tsrsr::gp {

CholeskyFactor robust_cholesky(const Eigen::MatrixXd& symmetric, const JitterPolicy& policy) {
    if (symmetric.rows() != symmetric.cols()) throw InvalidArgument("cholesky: matrix is not square");
    const Eigen::Index n = symmetric.rows();
    if (n == 0) return {Eigen::MatrixXd(0, 0), 0.0};

    auto attempt = [&](double jitter, CholeskyFactor& out) {
        Eigen::MatrixXd shifted = symmetric;
        shifted.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(std::move(shifted));
        if (llt.info() != Eigen::Success) return false;
        Eigen::MatrixXd lower = llt.matrixL();
        if (!lower.allFinite() || (lower.diagonal().array() <= 0.0).any()) return false;
        out.lower = std::move(lower);
        out.jitter = jitter;
        return true;
    };

    CholeskyFactor out;
    if (policy.try_without && attempt(0.0, out)) return out;
    double jitter = policy.initial;
    double last = jitter;
    while (jitter <= policy.maximum * (1.0 + 1e-12)) {
        if (attempt(jitter, out)) return out;
        last = jitter;
        jitter *= policy.growth;
    }

    std::ostringstream os;
    os << "cholesky failed after jitter escalation: size=" << n
       << " diag_min=" << symmetric.diagonal().minCoeff()
       << " diag_max=" << symmetric.diagonal().maxCoeff() << " last_jitter=" << last;
    throw NumericalFailure(os.str());
}

}  // namespace tsrsr::gp
