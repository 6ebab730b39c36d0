#pragma once

#include "covroc/analysis.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace covroc {

enum class BandwidthRefit { Frozen, PerReplicate };

struct BootstrapConfig {
    std::size_t replicates = 1000;  ///< B
    double level = 0.95;
    std::uint64_t seed = 0;
    BandwidthRefit refit = BandwidthRefit::Frozen;
    unsigned threads = 1;  ///< 0 = all hardware threads
    /// Abort when more than this fraction of replicates fail.
    double max_failure_rate = 0.10;
    /// Keep every replicate curve in the result.
    bool keep_replicates = false;
};

/// Pointwise percentile band and bootstrap variance over a covariate grid.
struct AucBand {
    AucEstimator estimator = AucEstimator::Camwe;
    std::vector<double> z_grid;
    std::vector<double> point_estimates;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> variance;
    std::size_t replicates = 0;            ///< B requested
    std::size_t effective_replicates = 0;  ///< B minus failures
    std::size_t failures = 0;
    double level = 0.95;
    Bandwidths bandwidths;                 ///< used for the point estimate
    BandwidthMethod bandwidth_method = BandwidthMethod::Fixed;
    std::vector<std::vector<double>> replicate_values;  ///< [replicate][z], when kept
};

/// Type-7 empirical quantile (linear interpolation between order statistics).
double quantile_type7(std::vector<double> values, double prob);

/// (lo, hi) at probabilities (1 - level)/2 and 1 - (1 - level)/2.
std::pair<double, double> percentile_interval(const std::vector<double>& values, double level);

/// Resamples (z, marker) pairs with replacement within each population,
/// refits, and re-evaluates the estimator on `z_grid`. Replicate b draws
/// from its own stream derived from (seed, b), so results do not depend on
/// the thread count. Throws FailureRateExceeded when too many replicates fail.
AucBand bootstrap_auc(const SamplePairs& x_data, const SamplePairs& y_data, AucEstimator estimator,
                      const AnalysisConfig& analysis, const std::vector<double>& z_grid, const BootstrapConfig& cfg);

/// Same, with bandwidths already chosen on the original data.
AucBand bootstrap_auc(const SamplePairs& x_data, const SamplePairs& y_data, AucEstimator estimator,
                      const AnalysisConfig& analysis, const BandwidthSet& original_bandwidths,
                      const std::vector<double>& z_grid, const BootstrapConfig& cfg);

/// Recomputes band endpoints at another level from kept replicate values.
std::pair<std::vector<double>, std::vector<double>> band_at_level(const AucBand& band, double level);

}  // namespace covroc
