#include "tsrsr/testbed/candidates.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/random/sobol.hpp>

#include "tsrsr/error.hpp"

namespace tsrsr::testbed {

using Eigen::Index;

namespace {

// Largest k with k^dim <= count.
Index per_axis(Index count, Index dim) {
    Index k = static_cast<Index>(std::floor(std::pow(static_cast<double>(count), 1.0 / static_cast<double>(dim))));
    auto power = [dim](Index base) {
        double p = 1.0;
        for (Index i = 0; i < dim; ++i) p *= static_cast<double>(base);
        return p;
    };
    while (k > 1 && power(k) > static_cast<double>(count)) --k;
    while (power(k + 1) <= static_cast<double>(count)) ++k;
    return k;
}

Eigen::MatrixXd grid_points(const gp::Box& box, Index count) {
    const Index dim = box.dimension();
    const Index k = per_axis(count, dim);
    if (k < 2)
        throw InvalidArgument("grid needs at least 2 points per axis; requested " + std::to_string(count));
    Index total = 1;
    for (Index i = 0; i < dim; ++i) total *= k;
    Eigen::MatrixXd pts(total, dim);
    for (Index row = 0; row < total; ++row) {
        Index rem = row;
        for (Index axis = 0; axis < dim; ++axis) {
            const Index step = rem % k;
            rem /= k;
            const double t = static_cast<double>(step) / static_cast<double>(k - 1);
            pts(row, axis) = step == k - 1 ? box.upper[axis] : box.lower[axis] + t * (box.upper[axis] - box.lower[axis]);
        }
    }
    return pts;
}

// Sobol points with a random digital shift: every coordinate's integer
// representation is XOR-ed with one mask per axis drawn from rng.
Eigen::MatrixXd sobol_points(const gp::Box& box, Index count, RngStream& rng) {
    using word = boost::random::sobol::result_type;
    const Index dim = box.dimension();
    boost::random::sobol engine(static_cast<std::size_t>(dim));
    std::vector<word> shift(static_cast<std::size_t>(dim));
    for (auto& s : shift) s = static_cast<word>(rng.next_seed());
    const double scale = std::ldexp(1.0, -std::numeric_limits<word>::digits);
    Eigen::MatrixXd pts(count, dim);
    for (Index row = 0; row < count; ++row)
        for (Index axis = 0; axis < dim; ++axis) {
            const double u = static_cast<double>(engine() ^ shift[static_cast<std::size_t>(axis)]) * scale;
            pts(row, axis) = std::min(box.lower[axis] + u * (box.upper[axis] - box.lower[axis]), box.upper[axis]);
        }
    return pts;
}

Eigen::MatrixXd uniform_points(const gp::Box& box, Index count, RngStream& rng) {
    Eigen::MatrixXd pts(count, box.dimension());
    for (Index row = 0; row < count; ++row)
        for (Index axis = 0; axis < box.dimension(); ++axis)
            pts(row, axis) = box.lower[axis] + rng.uniform() * (box.upper[axis] - box.lower[axis]);
    return pts;
}

}  // namespace

gp::CandidateSet make_candidates(const gp::Box& domain, Index count, gp::CandidateScheme scheme, RngStream& rng) {
    if (count < 2) throw InvalidArgument("candidate count must be at least 2");
    switch (scheme) {
        case gp::CandidateScheme::Grid: return gp::CandidateSet(grid_points(domain, count), domain, scheme);
        case gp::CandidateScheme::LowDiscrepancy:
            return gp::CandidateSet(sobol_points(domain, count, rng), domain, scheme);
        case gp::CandidateScheme::Uniform:
            return gp::CandidateSet(uniform_points(domain, count, rng), domain, scheme);
        case gp::CandidateScheme::Explicit: break;
    }
    throw InvalidArgument("make_candidates: scheme must be grid, uniform or low-discrepancy");
}

}  // namespace tsrsr::testbed
