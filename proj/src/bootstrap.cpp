#include "covroc/bootstrap.hpp"

#include "covroc/error.hpp"
#include "covroc/parallel.hpp"
#include "covroc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace covroc {

double quantile_type7(std::vector<double> values, double prob) {
    if (values.empty()) throw EmptySample("quantile of an empty vector");
    if (!(prob >= 0.0 && prob <= 1.0)) throw InvalidArgument("quantile probability must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

std::pair<double, double> percentile_interval(const std::vector<double>& values, double level) {
    if (values.empty()) throw EmptySample("percentile interval of an empty vector");
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("band level must lie in (0, 1)");
    const double tail = 0.5 * (1.0 - level);
    return {quantile_type7(values, tail), quantile_type7(values, 1.0 - tail)};
}

namespace {

SamplePairs resample(const SamplePairs& data, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    SamplePairs out;
    out.population = data.population;
    out.covariates.resize(data.size());
    out.markers.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::size_t k = pick(rng);
        out.covariates[i] = data.covariates[k];
        out.markers[i] = data.markers[k];
    }
    return out;
}

}  // namespace

AucBand bootstrap_auc(const SamplePairs& x_data, const SamplePairs& y_data, AucEstimator estimator,
                      const AnalysisConfig& analysis, const std::vector<double>& z_grid, const BootstrapConfig& cfg) {
    return bootstrap_auc(x_data, y_data, estimator, analysis, choose_bandwidths(x_data, y_data, analysis), z_grid,
                         cfg);
}

AucBand bootstrap_auc(const SamplePairs& x_data, const SamplePairs& y_data, AucEstimator estimator,
                      const AnalysisConfig& analysis, const BandwidthSet& original_bandwidths,
                      const std::vector<double>& z_grid, const BootstrapConfig& cfg) {
    if (cfg.replicates < 2) throw InvalidArgument("bootstrap needs at least 2 replicates");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw InvalidArgument("band level must lie in (0, 1)");
    if (estimator == AucEstimator::MannWhitneyUnadjusted) {
        throw InvalidArgument("bootstrap supports the normal, camwe and kernel estimators");
    }
    if (z_grid.empty()) throw InvalidArgument("bootstrap needs a non-empty covariate grid");

    AucBand band;
    band.estimator = estimator;
    band.z_grid = z_grid;
    band.level = cfg.level;
    band.replicates = cfg.replicates;
    band.bandwidths = original_bandwidths.bw;
    band.bandwidth_method = original_bandwidths.method;
    for (const auto& e : auc_on_grid(estimator, x_data, y_data, original_bandwidths.bw, analysis, z_grid)) {
        band.point_estimates.push_back(e.value);
    }

    const bool refit = cfg.refit == BandwidthRefit::PerReplicate && !analysis.fixed_bandwidths;
    std::vector<std::optional<std::vector<double>>> reps(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t b) {
        Rng rng = make_stream(cfg.seed, b);
        const SamplePairs xb = resample(x_data, rng);
        const SamplePairs yb = resample(y_data, rng);
        try {
            const Bandwidths bw = refit ? choose_bandwidths(xb, yb, analysis).bw : original_bandwidths.bw;
            std::vector<double> values;
            values.reserve(z_grid.size());
            for (const auto& e : auc_on_grid(estimator, xb, yb, bw, analysis, z_grid)) values.push_back(e.value);
            reps[b] = std::move(values);
        } catch (const Error&) {
            // counted below
        }
    });

    for (const auto& r : reps) {
        if (!r) ++band.failures;
    }
    band.effective_replicates = cfg.replicates - band.failures;
    if (static_cast<double>(band.failures) > cfg.max_failure_rate * static_cast<double>(cfg.replicates) ||
        band.effective_replicates < 2) {
        throw FailureRateExceeded("bootstrap replicates", band.failures, cfg.replicates);
    }

    const std::size_t nz = z_grid.size();
    band.lower.resize(nz);
    band.upper.resize(nz);
    band.variance.resize(nz);
    std::vector<double> column;
    column.reserve(band.effective_replicates);
    for (std::size_t t = 0; t < nz; ++t) {
        column.clear();
        for (const auto& r : reps)
            if (r) column.push_back((*r)[t]);
        // Sorting first makes the reductions independent of replicate order.
        std::sort(column.begin(), column.end());
        const auto [lo, hi] = percentile_interval(column, cfg.level);
        band.lower[t] = lo;
        band.upper[t] = hi;
        band.variance[t] = sample_variance(column);
    }
    if (cfg.keep_replicates) {
        for (auto& r : reps)
            if (r) band.replicate_values.push_back(std::move(*r));
    }
    return band;
}

std::pair<std::vector<double>, std::vector<double>> band_at_level(const AucBand& band, double level) {
    if (band.replicate_values.empty()) throw InvalidArgument("band was computed without keeping replicates");
    std::vector<double> lower(band.z_grid.size()), upper(band.z_grid.size());
    std::vector<double> column;
    for (std::size_t t = 0; t < band.z_grid.size(); ++t) {
        column.clear();
        for (const auto& r : band.replicate_values) column.push_back(r[t]);
        const auto [lo, hi] = percentile_interval(column, level);
        lower[t] = lo;
        upper[t] = hi;
    }
    return {lower, upper};
}

}  // namespace covroc
