#include "covroc/analysis.hpp"

#include "covroc/error.hpp"

namespace covroc {

BandwidthSet choose_bandwidths(const SamplePairs& x_data, const SamplePairs& y_data, const AnalysisConfig& cfg) {
    if (cfg.fixed_bandwidths) {
        const Bandwidths& bw = *cfg.fixed_bandwidths;
        if (!(bw.h1 > 0.0 && bw.h2 > 0.0 && bw.b1 > 0.0 && bw.b2 > 0.0)) {
            throw InvalidArgument("fixed bandwidths must all be positive");
        }
        return BandwidthSet::fixed(bw);
    }
    return select_all(x_data, y_data, cfg.orders, cfg.kernel, cfg.grid);
}

FittedCurves fit_with(const SamplePairs& x_data, const SamplePairs& y_data, const Bandwidths& bw,
                      const AnalysisConfig& cfg) {
    return fit_all(x_data, y_data, cfg.orders, bw, cfg.kernel, cfg.widen_retries);
}

std::vector<AucEstimate> auc_on_grid(AucEstimator estimator, const SamplePairs& x_data, const SamplePairs& y_data,
                                     const MeanVarianceCurves& curves, double hx, double hy, const Kernel& kernel,
                                     bool clamp, const std::vector<double>& z_grid) {
    std::vector<AucEstimate> out;
    out.reserve(z_grid.size());
    switch (estimator) {
        case AucEstimator::NormalClosedForm:
            for (double z : z_grid) out.push_back(auc_normal(curves, z, clamp));
            break;
        case AucEstimator::Camwe: {
            const StandardizedResiduals resid = standardized_residuals(x_data, y_data, curves);
            for (double z : z_grid) out.push_back(camwe(resid, curves, z, clamp));
            break;
        }
        case AucEstimator::BivariateKernel:
            for (double z : z_grid) out.push_back(auc_bivariate_kernel(x_data, y_data, hx, hy, kernel, z, clamp));
            break;
        case AucEstimator::MannWhitneyUnadjusted: {
            const double v = mann_whitney(x_data.markers, y_data.markers);
            for (double z : z_grid) out.push_back(make_estimate(z, v, estimator, clamp));
            break;
        }
    }
    return out;
}

std::vector<AucEstimate> auc_on_grid(AucEstimator estimator, const SamplePairs& x_data, const SamplePairs& y_data,
                                     const Bandwidths& bw, const AnalysisConfig& cfg,
                                     const std::vector<double>& z_grid) {
    if (estimator == AucEstimator::BivariateKernel || estimator == AucEstimator::MannWhitneyUnadjusted) {
        const auto unused = FunctionCurves::constant(0.0, 0.0, 1.0, 1.0);
        return auc_on_grid(estimator, x_data, y_data, unused, bw.h1, bw.h2, cfg.kernel, cfg.clamp, z_grid);
    }
    const FittedCurves curves = fit_with(x_data, y_data, bw, cfg);
    return auc_on_grid(estimator, x_data, y_data, curves, bw.h1, bw.h2, cfg.kernel, cfg.clamp, z_grid);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    std::vector<double> out(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = lo + step * static_cast<double>(k);
    out.back() = hi;
    return out;
}

}  // namespace covroc
