#pragma once

#include <Eigen/Core>

#include "tsrsr/gp/candidate_set.hpp"
#include "tsrsr/rng.hpp"

namespace tsrsr::testbed {

/// D in-domain points. Grid rounds D down to k^d with k >= 2 points per axis
/// (corners included); check size() for the actual count. Low-discrepancy
/// is the Sobol sequence (after its zero point) under a random digital shift
/// drawn from rng; uniform draws every coordinate from rng; grid ignores rng.
gp::CandidateSet make_candidates(const gp::Box& domain, Eigen::Index count, gp::CandidateScheme scheme,
                                 RngStream& rng);

}  // namespace tsrsr::testbed
