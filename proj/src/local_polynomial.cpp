#include "covroc/local_polynomial.hpp"

#include "covroc/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace covroc {

std::string population_label(Population pop) {
    return pop == Population::NonDiseased_X ? "X" : "Y";
}

void SamplePairs::validate(int p) const {
    const std::string who = "sample " + population_label(population);
    if (covariates.size() != markers.size()) {
        throw InvalidArgument(who + ": covariates and markers differ in length");
    }
    if (covariates.empty()) throw EmptySample(who + " is empty");
    for (std::size_t i = 0; i < size(); ++i) {
        if (!std::isfinite(covariates[i]) || !std::isfinite(markers[i])) {
            throw InvalidArgument(who + ": non-finite value at observation " + std::to_string(i));
        }
    }
    const auto need = static_cast<std::size_t>(p + 2);
    if (size() < need) {
        throw InvalidArgument(who + ": " + std::to_string(size()) + " observations, need at least " +
                              std::to_string(need) + " for order " + std::to_string(p));
    }
    std::set<double> distinct(covariates.begin(), covariates.end());
    if (distinct.size() < static_cast<std::size_t>(p + 1)) {
        throw InvalidArgument(who + ": fewer than " + std::to_string(p + 1) + " distinct covariate values");
    }
}

double SamplePairs::covariate_min() const {
    if (covariates.empty()) throw EmptySample("sample " + population_label(population) + " is empty");
    return *std::min_element(covariates.begin(), covariates.end());
}

double SamplePairs::covariate_max() const {
    if (covariates.empty()) throw EmptySample("sample " + population_label(population) + " is empty");
    return *std::max_element(covariates.begin(), covariates.end());
}

double sample_variance(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n - 1);
}

LocalPolyFit::LocalPolyFit(SamplePairs data, int order_p, double bandwidth, Kernel kernel, Options options)
    : data_(std::move(data)), order_(order_p), bandwidth_(bandwidth), kernel_(kernel), options_(std::move(options)) {
    if (!is_supported_order(order_p)) {
        throw InvalidArgument("local polynomial order must be one of 0, 1, 3, 5; got " + std::to_string(order_p));
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw InvalidArgument((options_.label.empty() ? std::string("bandwidth") : options_.label + ": bandwidth") +
                              " must be positive and finite");
    }
    if (options_.widen_retries < 0) throw InvalidArgument("widen_retries must be non-negative");
    data_.validate(order_p);
}

double LocalPolyFit::solve_at(double z, double h, std::size_t skip) const {
    const std::size_t n = data_.size();
    const int dim = order_ + 1;
    const double halfwidth = kernel_.support_halfwidth() * h;

    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == skip) continue;
        if (std::abs(data_.covariates[i] - z) < halfwidth && kernel_((data_.covariates[i] - z) / h) > 0.0) ++count;
    }
    if (count < static_cast<std::size_t>(dim)) throw InsufficientLocalData(z, count, options_.label);

    Eigen::MatrixXd design(static_cast<Eigen::Index>(count), dim);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(count));
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == skip) continue;
        const double u = (data_.covariates[i] - z) / h;
        if (!(std::abs(u) < kernel_.support_halfwidth())) continue;
        const double w = kernel_(u) / h;
        if (!(w > 0.0)) continue;
        const double sw = std::sqrt(w);
        double power = 1.0;
        for (int k = 0; k < dim; ++k) {
            design(row, k) = sw * power;
            power *= u;
        }
        rhs(row) = sw * data_.markers[i];
        ++row;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < dim) throw InsufficientLocalData(z, count, options_.label);
    const Eigen::VectorXd coef = qr.solve(rhs);
    return coef(0);
}

double LocalPolyFit::raw(double z, std::size_t skip) const { return solve_at(z, bandwidth_, skip); }

double LocalPolyFit::evaluate(double z, std::size_t skip) const {
    double h = bandwidth_;
    for (int attempt = 0;; ++attempt) {
        try {
            const double value = solve_at(z, h, skip);
            return std::max(value, options_.floor);
        } catch (const InsufficientLocalData&) {
            if (attempt >= options_.widen_retries) throw;
            h *= 2.0;
        }
    }
}

FittedCurves::FittedCurves(LocalPolyFit f_hat, LocalPolyFit g_hat, LocalPolyFit v1_hat, LocalPolyFit v2_hat)
    : f_hat_(std::move(f_hat)), g_hat_(std::move(g_hat)), v1_hat_(std::move(v1_hat)), v2_hat_(std::move(v2_hat)) {}

LocalPolyFit fit_mean(const SamplePairs& data, int p, double h, const Kernel& kernel, int widen_retries) {
    LocalPolyFit::Options opts;
    opts.widen_retries = widen_retries;
    opts.label = std::string(data.population == Population::NonDiseased_X ? "f" : "g") + " (population " +
                 population_label(data.population) + ")";
    return LocalPolyFit(data, p, h, kernel, std::move(opts));
}

SamplePairs variance_observations(const SamplePairs& data, const LocalPolyFit& mean_fit) {
    SamplePairs out;
    out.population = data.population;
    out.covariates = data.covariates;
    out.markers.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double r = data.markers[i] - mean_fit(data.covariates[i]);
        out.markers[i] = r * r;
    }
    return out;
}

LocalPolyFit fit_variance(const SamplePairs& resid2, int p, double b, const Kernel& kernel, double floor,
                          int widen_retries) {
    if (!(floor > 0.0)) throw InvalidArgument("variance floor must be positive");
    for (double v : resid2.markers) {
        if (v < 0.0) throw InvalidArgument("squared residuals must be non-negative");
    }
    LocalPolyFit::Options opts;
    opts.floor = floor;
    opts.widen_retries = widen_retries;
    opts.label = std::string(resid2.population == Population::NonDiseased_X ? "v1" : "v2") + " (population " +
                 population_label(resid2.population) + ")";
    return LocalPolyFit(resid2, p, b, kernel, std::move(opts));
}

double default_variance_floor(const SamplePairs& data) {
    double peak = 0.0;
    for (double m : data.markers) peak = std::max(peak, std::abs(m));
    // the second term keeps rounding noise in fitted means from being
    // standardized into large residuals when the markers barely vary
    const double rounding = 1e-7 * peak;
    return std::max({1e-8 * sample_variance(data.markers), rounding * rounding, 1e-300});
}

FittedCurves fit_all(const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                     const Bandwidths& bw, const Kernel& kernel, int widen_retries) {
    SamplePairs x = x_data;
    SamplePairs y = y_data;
    x.population = Population::NonDiseased_X;
    y.population = Population::Diseased_Y;

    auto f_hat = fit_mean(x, orders.f, bw.h1, kernel, widen_retries);
    auto g_hat = fit_mean(y, orders.g, bw.h2, kernel, widen_retries);
    auto v1_hat = fit_variance(variance_observations(x, f_hat), orders.v1, bw.b1, kernel,
                               default_variance_floor(x), widen_retries);
    auto v2_hat = fit_variance(variance_observations(y, g_hat), orders.v2, bw.b2, kernel,
                               default_variance_floor(y), widen_retries);
    return FittedCurves(std::move(f_hat), std::move(g_hat), std::move(v1_hat), std::move(v2_hat));
}

}  // namespace covroc
