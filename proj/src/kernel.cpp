#include "covroc/kernel.hpp"

#include "covroc/error.hpp"
#include "covroc/normal_dist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace covroc {

Kernel::Kernel(KernelFamily family, double gaussian_radius) : family_(family), halfwidth_(1.0) {
    if (family_ == KernelFamily::GaussianTruncated) {
        if (!(gaussian_radius > 0.0)) throw InvalidArgument("gaussian truncation radius must be positive");
        halfwidth_ = gaussian_radius;
        gaussian_norm_ = normal_cdf(gaussian_radius) - normal_cdf(-gaussian_radius);
    }
}

double Kernel::operator()(double u) const {
    const double a = std::abs(u);
    if (!(a <= halfwidth_)) return 0.0;
    const double t = 1.0 - u * u;
    switch (family_) {
        case KernelFamily::Epanechnikov: return 0.75 * t;
        case KernelFamily::Biweight: return 0.9375 * t * t;
        case KernelFamily::Triweight: return 1.09375 * t * t * t;
        case KernelFamily::GaussianTruncated: return normal_pdf(u) / gaussian_norm_;
    }
    return 0.0;
}

std::string Kernel::name() const {
    switch (family_) {
        case KernelFamily::Epanechnikov: return "epanechnikov";
        case KernelFamily::Biweight: return "biweight";
        case KernelFamily::Triweight: return "triweight";
        case KernelFamily::GaussianTruncated: return "gaussian";
    }
    return "unknown";
}

Kernel Kernel::from_name(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "epanechnikov") return Kernel(KernelFamily::Epanechnikov);
    if (lower == "biweight") return Kernel(KernelFamily::Biweight);
    if (lower == "triweight") return Kernel(KernelFamily::Triweight);
    if (lower == "gaussian" || lower == "gaussian_truncated") return Kernel(KernelFamily::GaussianTruncated);
    throw InvalidArgument("unknown kernel '" + std::string(name) + "'");
}

double kernel_moment(const Kernel& k, int j) {
    if (j < 0) throw InvalidArgument("moment index must be non-negative");
    if (j % 2 == 1) return 0.0;
    const double a = k.support_halfwidth();
    return simpson([&](double u) { return std::pow(u, j) * k(u); }, -a, a);
}

bool is_supported_order(int p) { return p == 0 || p == 1 || p == 3 || p == 5; }

EquivalentKernel::EquivalentKernel(const Kernel& base, int order_p) : base_(base), order_(order_p) {
    if (!is_supported_order(order_p)) {
        throw InvalidArgument("local polynomial order must be one of 0, 1, 3, 5; got " +
                              std::to_string(order_p));
    }
    const int dim = order_p + 1;
    moments_.resize(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int l = 0; l < dim; ++l) moments_(j, l) = kernel_moment(base, j + l);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(moments_);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (!(cond < 1e12)) {
        throw SingularMomentMatrix("moment matrix S_p is ill-conditioned (cond=" + std::to_string(cond) + ")");
    }
    // S_p is symmetric, so e1' S_p^{-1} is the first column of the inverse.
    first_row_ = moments_.ldlt().solve(Eigen::VectorXd::Unit(dim, 0));
}

double EquivalentKernel::operator()(double u) const {
    const double k = base_(u);
    if (k == 0.0) return 0.0;
    double poly = 0.0;
    double power = 1.0;
    for (int j = 0; j <= order_; ++j) {
        poly += first_row_(j) * power;
        power *= u;
    }
    return poly * k;
}

double EquivalentKernel::moment(int j) const {
    if (j < 0) throw InvalidArgument("moment index must be non-negative");
    const double a = base_.support_halfwidth();
    return simpson([&](double u) { return std::pow(u, j) * (*this)(u); }, -a, a);
}

EquivalentKernel equivalent_kernel(const Kernel& k, int p) { return EquivalentKernel(k, p); }

double kernel_roughness(const EquivalentKernel& k, double rho) {
    if (!(rho > 0.0)) throw InvalidArgument("roughness scale rho must be positive");
    const double a = k.base().support_halfwidth() * std::min(1.0, rho);
    return simpson([&](double u) { return k(u) * k(u / rho); }, -a, a);
}

}  // namespace covroc
