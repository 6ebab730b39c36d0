#pragma once

#include "covroc/bandwidth.hpp"
#include "covroc/kernel.hpp"
#include "covroc/local_polynomial.hpp"
#include "covroc/roc.hpp"

#include <optional>
#include <vector>

namespace covroc {

/// Settings of the data-analysis path: no true functions involved.
struct AnalysisConfig {
    PolyOrders orders = PolyOrders::uniform(1);
    Kernel kernel{};
    BandwidthGrid grid = BandwidthGrid::default_grid();
    /// When set, skips cross-validation.
    std::optional<Bandwidths> fixed_bandwidths;
    bool clamp = false;
    int widen_retries = 0;
};

/// Fixed bandwidths when configured, leave-one-out CV otherwise.
BandwidthSet choose_bandwidths(const SamplePairs& x_data, const SamplePairs& y_data, const AnalysisConfig& cfg);

FittedCurves fit_with(const SamplePairs& x_data, const SamplePairs& y_data, const Bandwidths& bw,
                      const AnalysisConfig& cfg);

/// AUC estimates of one estimator over a covariate grid. The bivariate
/// kernel estimator uses (hx, hy) = (h1, h2) since it has no CV criterion of
/// its own.
std::vector<AucEstimate> auc_on_grid(AucEstimator estimator, const SamplePairs& x_data, const SamplePairs& y_data,
                                     const Bandwidths& bw, const AnalysisConfig& cfg,
                                     const std::vector<double>& z_grid);

/// Same as above with curves already fitted (normal and CAMWE only need them).
std::vector<AucEstimate> auc_on_grid(AucEstimator estimator, const SamplePairs& x_data, const SamplePairs& y_data,
                                     const MeanVarianceCurves& curves, double hx, double hy, const Kernel& kernel,
                                     bool clamp, const std::vector<double>& z_grid);

/// `count` equispaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace covroc
