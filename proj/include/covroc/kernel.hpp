#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace covroc {

enum class KernelFamily { Epanechnikov, Biweight, Triweight, GaussianTruncated };

/// Compactly supported symmetric kernel density on [-a, a].
///
/// The polynomial families live on [-1, 1]; the Gaussian is truncated at
/// radius 4 by default and renormalized so it still integrates to one.
class Kernel {
public:
    explicit Kernel(KernelFamily family = KernelFamily::Epanechnikov, double gaussian_radius = 4.0);

    double operator()(double u) const;

    KernelFamily family() const noexcept { return family_; }
    double support_halfwidth() const noexcept { return halfwidth_; }
    std::string name() const;

    /// Accepts "epanechnikov", "biweight", "triweight", "gaussian".
    static Kernel from_name(std::string_view name);

private:
    KernelFamily family_;
    double halfwidth_;
    double gaussian_norm_ = 1.0;
};

inline double kernel_eval(const Kernel& k, double u) { return k(u); }

/// Scaled kernel K_h(u) = K(u / h) / h.
inline double kernel_scaled(const Kernel& k, double u, double h) { return k(u / h) / h; }

/// mu_j(K) = int u^j K(u) du by composite Simpson over the support.
double kernel_moment(const Kernel& k, int j);

/// Composite Simpson rule with `points` nodes (odd, >= 3) on [a, b].
template <typename F>
double simpson(F&& fn, double a, double b, int points = 2001) {
    if (points % 2 == 0) ++points;
    const int intervals = points - 1;
    const double step = (b - a) / intervals;
    double sum = fn(a) + fn(b);
    for (int i = 1; i < intervals; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * fn(a + i * step);
    }
    return sum * step / 3.0;
}

/// K*(u) = e1' S_p^{-1} (1, u, ..., u^p)' K(u); a (p+1)th-order kernel for odd p.
class EquivalentKernel {
public:
    EquivalentKernel(const Kernel& base, int order_p);

    double operator()(double u) const;

    int order() const noexcept { return order_; }
    const Kernel& base() const noexcept { return base_; }
    /// S_p = { mu_{j+l}(K) }, 0 <= j, l <= p.
    const Eigen::MatrixXd& moment_matrix() const noexcept { return moments_; }
    double moment(int j) const;

private:
    Kernel base_;
    int order_;
    Eigen::MatrixXd moments_;
    Eigen::VectorXd first_row_;  // e1' S_p^{-1}
};

/// Throws SingularMomentMatrix when cond(S_p) >= 1e12 and InvalidArgument
/// unless p is one of {0, 1, 3, 5}.
EquivalentKernel equivalent_kernel(const Kernel& k, int p);

/// R(K*, rho) = int K*(u) K*(u / rho) du.
double kernel_roughness(const EquivalentKernel& k, double rho = 1.0);

/// Orders accepted by the local polynomial machinery.
bool is_supported_order(int p);

}  // namespace covroc
