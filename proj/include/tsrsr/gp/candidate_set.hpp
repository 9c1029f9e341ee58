#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace tsrsr::gp {

/// Axis-aligned closed box.
struct Box {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Box(Eigen::VectorXd lo, Eigen::VectorXd hi);
    static Box cube(double lo, double hi, Eigen::Index dim);

    Eigen::Index dimension() const noexcept { return lower.size(); }
    bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
};

enum class CandidateScheme { Grid, Uniform, LowDiscrepancy, Explicit };

std::string_view scheme_name(CandidateScheme scheme);
CandidateScheme parse_scheme(std::string_view name);

/// A finite, duplicate-free set of points (one per row) inside a box.
/// Acquisitions and samplers refer to candidates by row index.
class CandidateSet {
public:
    CandidateSet(Eigen::MatrixXd points, Box domain,
                 CandidateScheme scheme = CandidateScheme::Explicit);

    const Eigen::MatrixXd& points() const noexcept { return points_; }
    Eigen::Index size() const noexcept { return points_.rows(); }
    Eigen::Index dimension() const noexcept { return points_.cols(); }
    const Box& domain() const noexcept { return domain_; }
    CandidateScheme scheme() const noexcept { return scheme_; }

    Eigen::VectorXd point(Eigen::Index i) const { return points_.row(i).transpose(); }

    /// Row index of an exact member, or -1.
    Eigen::Index find(const Eigen::Ref<const Eigen::VectorXd>& x) const;

private:
    Eigen::MatrixXd points_;
    Box domain_;
    CandidateScheme scheme_;
    std::vector<Eigen::Index> sorted_;  // lexicographic order of rows, for find()
};

}  // namespace tsrsr::gp
