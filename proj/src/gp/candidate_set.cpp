#include "tsrsr/gp/candidate_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tsrsr/error.hpp"

namespace tsrsr::gp {

Box::Box(Eigen::VectorXd lo, Eigen::VectorXd hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() == 0 || lower.size() != upper.size())
        throw InvalidArgument("box bounds must be nonempty and of equal dimension");
    if (!lower.allFinite() || !upper.allFinite() || (lower.array() > upper.array()).any())
        throw InvalidArgument("box bounds must be finite with lower <= upper");
}

Box Box::cube(double lo, double hi, Eigen::Index dim) {
    return Box(Eigen::VectorXd::Constant(dim, lo), Eigen::VectorXd::Constant(dim, hi));
}

bool Box::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != dimension()) return false;
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

std::string_view scheme_name(CandidateScheme scheme) {
    switch (scheme) {
        case CandidateScheme::Grid: return "grid";
        case CandidateScheme::Uniform: return "uniform";
        case CandidateScheme::LowDiscrepancy: return "low-discrepancy";
        case CandidateScheme::Explicit: return "explicit";
    }
    return "explicit";
}

CandidateScheme parse_scheme(std::string_view name) {
    if (name == "grid") return CandidateScheme::Grid;
    if (name == "uniform") return CandidateScheme::Uniform;
    if (name == "low-discrepancy" || name == "sobol") return CandidateScheme::LowDiscrepancy;
    if (name == "explicit") return CandidateScheme::Explicit;
    throw InvalidArgument("unknown candidate scheme '" + std::string(name) + "'");
}

namespace {

bool row_less(const Eigen::MatrixXd& p, Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
        if (p(a, k) < p(b, k)) return true;
        if (p(a, k) > p(b, k)) return false;
    }
    return false;
}

bool row_less_point(const Eigen::MatrixXd& p, Eigen::Index a, const Eigen::Ref<const Eigen::VectorXd>& x) {
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
        if (p(a, k) < x[k]) return true;
        if (p(a, k) > x[k]) return false;
    }
    return false;
}

}  // namespace

CandidateSet::CandidateSet(Eigen::MatrixXd points, Box domain, CandidateScheme scheme)
    : points_(std::move(points)), domain_(std::move(domain)), scheme_(scheme) {
    if (points_.rows() < 1) throw InvalidArgument("candidate set must contain at least one point");
    if (points_.cols() != domain_.dimension())
        throw InvalidArgument("candidate dimension does not match domain box");
    for (Eigen::Index i = 0; i < points_.rows(); ++i)
        if (!domain_.contains(points_.row(i).transpose()))
            throw InvalidArgument("candidate " + std::to_string(i) + " lies outside the domain box");
    sorted_.resize(points_.rows());
    std::iota(sorted_.begin(), sorted_.end(), Eigen::Index{0});
    std::sort(sorted_.begin(), sorted_.end(),
              [&](Eigen::Index a, Eigen::Index b) { return row_less(points_, a, b); });
    for (std::size_t i = 1; i < sorted_.size(); ++i)
        if (!row_less(points_, sorted_[i - 1], sorted_[i]))
            throw InvalidArgument("candidate set contains duplicate points");
}

Eigen::Index CandidateSet::find(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != dimension()) return -1;
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x,
                               [&](Eigen::Index a, const Eigen::Ref<const Eigen::VectorXd>& v) {
                                   return row_less_point(points_, a, v);
                               });
    if (it == sorted_.end()) return -1;
    if ((points_.row(*it).transpose().array() == x.array()).all()) return *it;
    return -1;
}

}  // namespace tsrsr::gp
