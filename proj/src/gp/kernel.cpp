#include "tsrsr/gp/kernel.hpp"

#include <cmath>
#include <sstream>

#include "tsrsr/error.hpp"

namespace tsrsr::gp {

namespace {

bool is_close(double a, double b) { return std::abs(a - b) < 1e-12; }

}  // namespace

KernelSpec::KernelSpec(KernelFamily family, Eigen::VectorXd lengthscales, double signal_variance,
                       double nu)
    : family_(family), lengthscales_(std::move(lengthscales)), signal_variance_(signal_variance),
      nu_(nu) {
    if (lengthscales_.size() == 0) throw InvalidArgument("kernel needs at least one lengthscale");
    if ((lengthscales_.array() <= 0.0).any() || !lengthscales_.allFinite())
        throw InvalidArgument("kernel lengthscales must be positive and finite");
    if (!(signal_variance_ > 0.0) || !std::isfinite(signal_variance_))
        throw InvalidArgument("kernel signal variance must be positive");
    if (family_ == KernelFamily::Matern && (!(nu_ > 0.0) || !std::isfinite(nu_)))
        throw InvalidArgument("Matern smoothness must be positive");
}

KernelSpec KernelSpec::squared_exponential(double lengthscale, Eigen::Index dim, double signal_variance) {
    return KernelSpec(KernelFamily::SquaredExponential, Eigen::VectorXd::Constant(dim, lengthscale),
                      signal_variance);
}

KernelSpec KernelSpec::matern(double nu, double lengthscale, Eigen::Index dim, double signal_variance) {
    return KernelSpec(KernelFamily::Matern, Eigen::VectorXd::Constant(dim, lengthscale),
                      signal_variance, nu);
}

double KernelSpec::profile(double r) const {
    if (family_ == KernelFamily::SquaredExponential) return signal_variance_ * std::exp(-0.5 * r * r);
    if (is_close(nu_, 0.5)) return signal_variance_ * std::exp(-r);
    if (is_close(nu_, 1.5)) {
        const double s = std::sqrt(3.0) * r;
        return signal_variance_ * (1.0 + s) * std::exp(-s);
    }
    if (is_close(nu_, 2.5)) {
        const double s = std::sqrt(5.0) * r;
        return signal_variance_ * (1.0 + s + s * s / 3.0) * std::exp(-s);
    }
    if (r == 0.0) return signal_variance_;
    const double s = std::sqrt(2.0 * nu_) * r;
    if (s > 700.0) return 0.0;
    return signal_variance_ * std::exp((1.0 - nu_) * std::log(2.0) - std::lgamma(nu_) + nu_ * std::log(s)) *
           std::cyl_bessel_k(nu_, s);
}

double KernelSpec::scaled_distance(const double* x, const double* x2, Eigen::Index x2_stride) const {
    double r2 = 0.0;
    for (Eigen::Index k = 0; k < lengthscales_.size(); ++k) {
        const double diff = (x[k] - x2[k * x2_stride]) / lengthscales_[k];
        r2 += diff * diff;
    }
    return std::sqrt(r2);
}

double KernelSpec::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& x2) const {
    if (x.size() != dimension() || x2.size() != dimension())
        throw InvalidArgument("kernel_eval: point dimension does not match kernel dimension");
    double r2 = 0.0;
    for (Eigen::Index k = 0; k < dimension(); ++k) {
        const double diff = (x[k] - x2[k]) / lengthscales_[k];
        r2 += diff * diff;
    }
    return profile(std::sqrt(r2));
}

Eigen::MatrixXd KernelSpec::gram(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
    if (a.cols() != dimension() || b.cols() != dimension())
        throw InvalidArgument("gram: point dimension does not match kernel dimension");
    // Row-major copies keep each point contiguous.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ar = a, br = b;
    Eigen::MatrixXd out(a.rows(), b.rows());
    for (Eigen::Index j = 0; j < b.rows(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out(i, j) = profile(scaled_distance(ar.row(i).data(), br.row(j).data(), 1));
    return out;
}

Eigen::MatrixXd KernelSpec::gram(const Eigen::MatrixXd& a) const {
    if (a.cols() != dimension())
        throw InvalidArgument("gram: point dimension does not match kernel dimension");
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ar = a;
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out(j, j) = signal_variance_;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = profile(scaled_distance(ar.row(i).data(), ar.row(j).data(), 1));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

Eigen::VectorXd KernelSpec::cross(const Eigen::MatrixXd& points,
                                  const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (points.cols() != dimension() || x.size() != dimension())
        throw InvalidArgument("cross: point dimension does not match kernel dimension");
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        out[i] = profile(scaled_distance(x.data(), points.data() + i, points.rows()));
    return out;
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    if (family_ == KernelFamily::SquaredExponential)
        os << "rbf";
    else
        os << "matern(nu=" << nu_ << ")";
    os << " lengthscale=[";
    for (Eigen::Index k = 0; k < lengthscales_.size(); ++k) os << (k ? "," : "") << lengthscales_[k];
    os << "] signal_variance=" << signal_variance_;
    return os.str();
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2) {
    return spec(x, x2);
}

KernelFamily parse_kernel_family(std::string_view name) {
    if (name == "rbf" || name == "se" || name == "squared-exponential") return KernelFamily::SquaredExponential;
    if (name == "matern") return KernelFamily::Matern;
    throw InvalidArgument("unknown kernel family '" + std::string(name) + "'");
}

}  // namespace tsrsr::gp
