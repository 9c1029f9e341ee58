#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

namespace tsrsr::gp {

enum class KernelFamily { SquaredExponential, Matern };

/// Stationary covariance k(x, x') = s * profile(r), r the lengthscale-scaled
/// Euclidean distance. Matern smoothness 0.5, 1.5 and 2.5 use closed forms;
/// any other positive smoothness goes through the modified Bessel function.
class KernelSpec {
public:
    KernelSpec(KernelFamily family, Eigen::VectorXd lengthscales, double signal_variance = 1.0,
               double nu = 1.5);

    static KernelSpec squared_exponential(double lengthscale, Eigen::Index dim,
                                          double signal_variance = 1.0);
    static KernelSpec matern(double nu, double lengthscale, Eigen::Index dim,
                             double signal_variance = 1.0);

    KernelFamily family() const noexcept { return family_; }
    double nu() const noexcept { return nu_; }
    double signal_variance() const noexcept { return signal_variance_; }
    const Eigen::VectorXd& lengthscales() const noexcept { return lengthscales_; }
    Eigen::Index dimension() const noexcept { return lengthscales_.size(); }

    /// k(x, x2). Throws InvalidArgument on dimension mismatch.
    double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& x2) const;

    /// Covariance as a function of the scaled distance r >= 0.
    double profile(double r) const;

    /// Cross-covariance matrix between the rows of a and the rows of b.
    Eigen::MatrixXd gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;
    Eigen::MatrixXd gram(const Eigen::MatrixXd& a) const;

    /// Covariance of every row of `points` against one point.
    Eigen::VectorXd cross(const Eigen::MatrixXd& points,
                          const Eigen::Ref<const Eigen::VectorXd>& x) const;

    std::string describe() const;

private:
    double scaled_distance(const double* x, const double* x2, Eigen::Index x2_stride) const;

    KernelFamily family_;
    Eigen::VectorXd lengthscales_;
    double signal_variance_;
    double nu_;
};

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2);

KernelFamily parse_kernel_family(std::string_view name);

}  // namespace tsrsr::gp
