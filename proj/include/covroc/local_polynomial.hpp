#pragma once

#include "covroc/kernel.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace covroc {

enum class Population { NonDiseased_X, Diseased_Y };

std::string population_label(Population pop);

/// (covariate, marker) observations for one population.
struct SamplePairs {
    std::vector<double> covariates;
    std::vector<double> markers;
    Population population = Population::NonDiseased_X;

    std::size_t size() const noexcept { return covariates.size(); }

    /// Throws InvalidArgument unless lengths match, values are finite, and a
    /// degree-p fit is possible (>= p+2 rows, >= p+1 distinct covariates).
    void validate(int p) const;

    double covariate_min() const;
    double covariate_max() const;
};

/// Sample variance of a vector (n - 1 denominator); zero for n < 2.
double sample_variance(const std::vector<double>& values);

/// Local polynomial regression of degree p with kernel weights K_h(z_i - z).
///
/// Evaluation at z solves the weighted least squares problem by column
/// pivoting QR on the sqrt-weight scaled design. Columns are the centered
/// powers (z_i - z)^k, divided by h^k for conditioning; the intercept, which
/// is the estimate, is unaffected by that rescaling.
///
/// Immutable after construction; evaluation is reentrant.
class LocalPolyFit {
public:
    struct Options {
        /// Evaluations are clamped below at this value (variance fits).
        double floor = -std::numeric_limits<double>::infinity();
        /// Number of times the bandwidth is doubled when the local design is
        /// too sparse; 0 raises InsufficientLocalData immediately.
        int widen_retries = 0;
        std::string label;
    };

    LocalPolyFit(SamplePairs data, int order_p, double bandwidth, Kernel kernel, Options options);
    LocalPolyFit(SamplePairs data, int order_p, double bandwidth, Kernel kernel)
        : LocalPolyFit(std::move(data), order_p, bandwidth, kernel, Options{}) {}

    double operator()(double z) const { return evaluate(z, npos); }

    /// Fit with observation `skip` removed, evaluated at z (leave-one-out).
    double evaluate_excluding(double z, std::size_t skip) const { return evaluate(z, skip); }

    /// Raw weighted least squares intercept without flooring or widening.
    double raw(double z, std::size_t skip = npos) const;

    const SamplePairs& data() const noexcept { return data_; }
    int order() const noexcept { return order_; }
    double bandwidth() const noexcept { return bandwidth_; }
    const Kernel& kernel() const noexcept { return kernel_; }
    double floor() const noexcept { return options_.floor; }
    const std::string& label() const noexcept { return options_.label; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double evaluate(double z, std::size_t skip) const;
    double solve_at(double z, double h, std::size_t skip) const;

    SamplePairs data_;
    int order_;
    double bandwidth_;
    Kernel kernel_;
    Options options_;
};

struct Bandwidths {
    double h1 = 0.0;  ///< mean, X sample
    double h2 = 0.0;  ///< mean, Y sample
    double b1 = 0.0;  ///< variance, X sample
    double b2 = 0.0;  ///< variance, Y sample
};

/// Polynomial order for each of the four fits.
struct PolyOrders {
    int f = 1;
    int g = 1;
    int v1 = 1;
    int v2 = 1;

    static PolyOrders uniform(int p) { return {p, p, p, p}; }
};

/// Mean and variance functions of both populations, evaluable at any z.
class MeanVarianceCurves {
public:
    virtual ~MeanVarianceCurves() = default;
    virtual double mean_x(double z) const = 0;
    virtual double mean_y(double z) const = 0;
    virtual double var_x(double z) const = 0;
    virtual double var_y(double z) const = 0;
};

/// The four local polynomial estimates f^, g^, v1^, v2^.
class FittedCurves final : public MeanVarianceCurves {
public:
    FittedCurves(LocalPolyFit f_hat, LocalPolyFit g_hat, LocalPolyFit v1_hat, LocalPolyFit v2_hat);

    double mean_x(double z) const override { return f_hat_(z); }
    double mean_y(double z) const override { return g_hat_(z); }
    double var_x(double z) const override { return v1_hat_(z); }
    double var_y(double z) const override { return v2_hat_(z); }

    const LocalPolyFit& f_hat() const noexcept { return f_hat_; }
    const LocalPolyFit& g_hat() const noexcept { return g_hat_; }
    const LocalPolyFit& v1_hat() const noexcept { return v1_hat_; }
    const LocalPolyFit& v2_hat() const noexcept { return v2_hat_; }

    Bandwidths bandwidths() const {
        return {f_hat_.bandwidth(), g_hat_.bandwidth(), v1_hat_.bandwidth(), v2_hat_.bandwidth()};
    }

private:
    LocalPolyFit f_hat_;
    LocalPolyFit g_hat_;
    LocalPolyFit v1_hat_;
    LocalPolyFit v2_hat_;
};

LocalPolyFit fit_mean(const SamplePairs& data, int p, double h, const Kernel& kernel, int widen_retries = 0);

inline double eval_mean(const LocalPolyFit& fit, double z) { return fit(z); }

/// Squared residuals {x_i - f^(z_i)}^2 at each observation's own covariate.
SamplePairs variance_observations(const SamplePairs& data, const LocalPolyFit& mean_fit);

LocalPolyFit fit_variance(const SamplePairs& resid2, int p, double b, const Kernel& kernel, double floor,
                          int widen_retries = 0);

/// Default variance floor: the largest of 1e-8 times the sample variance of
/// the markers, (1e-7 max|marker|)^2 and 1e-300.
double default_variance_floor(const SamplePairs& data);

FittedCurves fit_all(const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                     const Bandwidths& bw, const Kernel& kernel, int widen_retries = 0);

inline FittedCurves fit_all(const SamplePairs& x_data, const SamplePairs& y_data, int p, const Bandwidths& bw,
                            const Kernel& kernel) {
    return fit_all(x_data, y_data, PolyOrders::uniform(p), bw, kernel);
}

}  // namespace covroc
