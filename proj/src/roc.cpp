#include "covroc/roc.hpp"

#include "covroc/error.hpp"
#include "covroc/normal_dist.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace covroc {

std::string estimator_name(AucEstimator e) {
    switch (e) {
        case AucEstimator::NormalClosedForm: return "normal";
        case AucEstimator::Camwe: return "camwe";
        case AucEstimator::BivariateKernel: return "kernel";
        case AucEstimator::MannWhitneyUnadjusted: return "mann_whitney";
    }
    return "unknown";
}

AucEstimator estimator_from_name(const std::string& name) {
    if (name == "normal") return AucEstimator::NormalClosedForm;
    if (name == "camwe") return AucEstimator::Camwe;
    if (name == "kernel") return AucEstimator::BivariateKernel;
    if (name == "mann_whitney") return AucEstimator::MannWhitneyUnadjusted;
    throw InvalidArgument("unknown estimator '" + name + "'");
}

AucEstimate make_estimate(double z, double value, AucEstimator estimator, bool clamp) {
    AucEstimate out{z, value, estimator, false};
    if (clamp && value < 0.5) {
        out.value = 0.5;
        out.clamped = true;
    }
    return out;
}

double mann_whitney(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw EmptySample("Mann-Whitney statistic needs two non-empty samples");
    std::vector<double> xs(x.begin(), x.end());
    std::sort(xs.begin(), xs.end());
    // Number of pairs with y_j >= x_i.
    std::size_t count = 0;
    for (double yj : y) {
        count += static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), yj) - xs.begin());
    }
    return static_cast<double>(count) / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

CurveValues evaluate_curves(const MeanVarianceCurves& curves, double z) {
    return {curves.mean_x(z), curves.mean_y(z), curves.var_x(z), curves.var_y(z)};
}

FunctionCurves::FunctionCurves(Fn f, Fn g, Fn v1, Fn v2, double variance_floor)
    : f_(std::move(f)), g_(std::move(g)), v1_(std::move(v1)), v2_(std::move(v2)), floor_(variance_floor) {
    if (!(variance_floor > 0.0)) throw InvalidArgument("variance floor must be positive");
}

FunctionCurves FunctionCurves::constant(double f, double g, double v1, double v2) {
    return FunctionCurves([f](double) { return f; }, [g](double) { return g; }, [v1](double) { return v1; },
                          [v2](double) { return v2; });
}

double FunctionCurves::var_x(double z) const { return std::max(v1_(z), floor_); }
double FunctionCurves::var_y(double z) const { return std::max(v2_(z), floor_); }

double auc_normal(const CurveValues& at) {
    const double total = at.v1 + at.v2;
    if (!(total > 0.0)) throw InvalidArgument("variance sum must be positive for the normal closed form");
    return normal_cdf((at.g - at.f) / std::sqrt(total));
}

AucEstimate auc_normal(const MeanVarianceCurves& curves, double z, bool clamp) {
    return make_estimate(z, auc_normal(evaluate_curves(curves, z)), AucEstimator::NormalClosedForm, clamp);
}

SensSpec sens_spec_normal(const MeanVarianceCurves& curves, double z, double c) {
    const CurveValues at = evaluate_curves(curves, z);
    if (!(at.v1 > 0.0) || !(at.v2 > 0.0)) throw InvalidArgument("variances must be positive");
    return {normal_cdf((at.g - c) / std::sqrt(at.v2)), normal_cdf((c - at.f) / std::sqrt(at.v1))};
}

std::vector<RocPoint> roc_curve_normal(const MeanVarianceCurves& curves, double z,
                                       std::span<const double> fpr_grid) {
    for (std::size_t i = 0; i < fpr_grid.size(); ++i) {
        if (!(fpr_grid[i] > 0.0 && fpr_grid[i] < 1.0)) throw InvalidArgument("fpr grid must lie in (0, 1)");
        if (i > 0 && !(fpr_grid[i] > fpr_grid[i - 1])) throw InvalidArgument("fpr grid must be strictly increasing");
    }
    const CurveValues at = evaluate_curves(curves, z);
    if (!(at.v1 > 0.0) || !(at.v2 > 0.0)) throw InvalidArgument("variances must be positive");
    const double s1 = std::sqrt(at.v1);
    const double s2 = std::sqrt(at.v2);
    std::vector<RocPoint> out;
    out.reserve(fpr_grid.size());
    for (double fpr : fpr_grid) {
        const double q = normal_cdf((at.g - at.f + s1 * normal_quantile(fpr)) / s2);
        const double c = at.f + s1 * normal_quantile(1.0 - fpr);
        out.push_back({c, q, fpr});
    }
    return out;
}

double roc_area(const std::vector<RocPoint>& points) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(points.size() + 2);
    for (const auto& pt : points) pts.emplace_back(pt.false_positive_rate, pt.sensitivity);
    std::stable_sort(pts.begin(), pts.end());
    if (pts.empty() || pts.front() != std::pair<double, double>{0.0, 0.0}) pts.insert(pts.begin(), {0.0, 0.0});
    if (pts.back() != std::pair<double, double>{1.0, 1.0}) pts.emplace_back(1.0, 1.0);
    double area = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        area += (pts[k].first - pts[k - 1].first) * 0.5 * (pts[k].second + pts[k - 1].second);
    }
    return area;
}

StandardizedResiduals standardized_residuals(const SamplePairs& x_data, const SamplePairs& y_data,
                                             const MeanVarianceCurves& curves) {
    if (x_data.size() != x_data.markers.size() || y_data.size() != y_data.markers.size()) {
        throw InvalidArgument("covariates and markers differ in length");
    }
    StandardizedResiduals out;
    auto fill = [](const SamplePairs& data, std::vector<double>& eps, StandardizedResiduals::Origin& origin,
                   auto&& mean, auto&& var, const char* tag) {
        const std::size_t n = data.size();
        eps.resize(n);
        origin.marker = data.markers;
        origin.mean.resize(n);
        origin.var.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double z = data.covariates[i];
            try {
                origin.mean[i] = mean(z);
                origin.var[i] = var(z);
            } catch (const InsufficientLocalData& e) {
                throw InsufficientLocalData(e.z(), e.local_count(),
                                            std::string("standardized residual ") + tag + "[" + std::to_string(i) + "]");
            }
            eps[i] = (data.markers[i] - origin.mean[i]) / std::sqrt(origin.var[i]);
            if (!std::isfinite(eps[i])) {
                throw InvalidArgument(std::string("non-finite standardized residual ") + tag + "[" +
                                      std::to_string(i) + "]");
            }
        }
    };
    fill(x_data, out.eps_x, out.origin_x, [&](double z) { return curves.mean_x(z); },
         [&](double z) { return curves.var_x(z); }, "x");
    fill(y_data, out.eps_y, out.origin_y, [&](double z) { return curves.mean_y(z); },
         [&](double z) { return curves.var_y(z); }, "y");
    return out;
}

namespace {

void reconstruct(const std::vector<double>& eps, const StandardizedResiduals::Origin& origin, double mean,
                 double var, std::vector<double>& out) {
    const double s = std::sqrt(var);
    const bool has_origin = origin.marker.size() == eps.size() && origin.mean.size() == eps.size() &&
                            origin.var.size() == eps.size();
    out.resize(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (has_origin && origin.mean[i] == mean && origin.var[i] == var) {
            out[i] = origin.marker[i];
        } else {
            out[i] = mean + s * eps[i];
        }
    }
}

}  // namespace

WorkingSample working_sample(const StandardizedResiduals& resid, const CurveValues& at, double z) {
    if (!(at.v1 > 0.0) || !(at.v2 > 0.0)) throw InvalidArgument("variances must be positive");
    WorkingSample ws;
    ws.z = z;
    reconstruct(resid.eps_x, resid.origin_x, at.f, at.v1, ws.x_values);
    reconstruct(resid.eps_y, resid.origin_y, at.g, at.v2, ws.y_values);
    return ws;
}

WorkingSample working_sample(const StandardizedResiduals& resid, const MeanVarianceCurves& curves, double z) {
    return working_sample(resid, evaluate_curves(curves, z), z);
}

AucEstimate camwe(const StandardizedResiduals& resid, const MeanVarianceCurves& curves, double z, bool clamp) {
    const WorkingSample ws = working_sample(resid, curves, z);
    return make_estimate(z, mann_whitney(ws.x_values, ws.y_values), AucEstimator::Camwe, clamp);
}

AucEstimate camwe(const SamplePairs& x_data, const SamplePairs& y_data, const MeanVarianceCurves& curves,
                  double z, bool clamp) {
    return camwe(standardized_residuals(x_data, y_data, curves), curves, z, clamp);
}

namespace {

std::size_t count_at_least(const std::vector<double>& sorted, double c) {
    return static_cast<std::size_t>(sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), c));
}

std::size_t count_above(const std::vector<double>& sorted, double c) {
    return static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), c));
}

std::size_t count_at_most(const std::vector<double>& sorted, double c) {
    return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
}

}  // namespace

SensSpec sens_spec_camwe(const WorkingSample& ws, double c) {
    std::size_t q = 0;
    std::size_t p = 0;
    for (double y : ws.y_values) q += (y >= c) ? 1 : 0;
    for (double x : ws.x_values) p += (x <= c) ? 1 : 0;
    const double n = static_cast<double>(ws.y_values.size());
    const double m = static_cast<double>(ws.x_values.size());
    return {n > 0 ? q / n : 0.0, m > 0 ? p / m : 0.0};
}

std::vector<RocPoint> roc_curve_camwe(const WorkingSample& ws) {
    if (ws.x_values.empty() || ws.y_values.empty()) throw EmptySample("working sample is empty");
    std::vector<double> xs = ws.x_values;
    std::vector<double> ys = ws.y_values;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<double> pooled;
    pooled.reserve(xs.size() + ys.size());
    std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(pooled));
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    const double m = static_cast<double>(xs.size());
    const double n = static_cast<double>(ys.size());
    std::vector<RocPoint> out;
    auto push = [&](double c, std::size_t tp, std::size_t fp) {
        const RocPoint pt{c, static_cast<double>(tp) / n, static_cast<double>(fp) / m};
        if (!out.empty() && out.back().sensitivity == pt.sensitivity &&
            out.back().false_positive_rate == pt.false_positive_rate) {
            return;
        }
        out.push_back(pt);
    };

    constexpr double inf = std::numeric_limits<double>::infinity();
    push(inf, 0, 0);
    for (std::size_t k = pooled.size(); k-- > 0;) {
        const double v = pooled[k];
        push(v, count_at_least(ys, v), count_above(xs, v));
        // Open interval just below v: y >= c counts y >= v, x > c counts x >= v.
        const double below = k > 0 ? 0.5 * (v + pooled[k - 1]) : -inf;
        push(below, count_at_least(ys, v), count_at_least(xs, v));
    }
    push(-inf, ys.size(), xs.size());
    return out;
}

YoudenResult youden_index(const WorkingSample& ws) {
    if (ws.x_values.empty() || ws.y_values.empty()) throw EmptySample("working sample is empty");
    std::vector<double> xs = ws.x_values;
    std::vector<double> ys = ws.y_values;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    std::vector<double> pooled;
    std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(pooled));
    pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

    const double m = static_cast<double>(xs.size());
    const double n = static_cast<double>(ys.size());
    YoudenResult best{-std::numeric_limits<double>::infinity(), 0.0};
    for (double c : pooled) {  // ascending, strict improvement keeps the smallest c
        const double yi = static_cast<double>(count_at_least(ys, c)) / n +
                          static_cast<double>(count_at_most(xs, c)) / m - 1.0;
        if (yi > best.index) best = {yi, c};
    }
    return best;
}

AucEstimate auc_bivariate_kernel(const SamplePairs& x_data, const SamplePairs& y_data, double hx, double hy,
                                 const Kernel& kernel, double z, bool clamp) {
    if (!(hx > 0.0) || !(hy > 0.0)) throw InvalidArgument("kernel AUC bandwidths must be positive");
    if (x_data.size() == 0 || y_data.size() == 0) throw EmptySample("kernel AUC needs two non-empty samples");

    std::vector<std::pair<double, double>> wx;  // (marker, weight) with positive weight
    std::vector<std::pair<double, double>> wy;
    for (std::size_t i = 0; i < x_data.size(); ++i) {
        const double w = kernel_scaled(kernel, x_data.covariates[i] - z, hx);
        if (w > 0.0) wx.emplace_back(x_data.markers[i], w);
    }
    for (std::size_t j = 0; j < y_data.size(); ++j) {
        const double w = kernel_scaled(kernel, y_data.covariates[j] - z, hy);
        if (w > 0.0) wy.emplace_back(y_data.markers[j], w);
    }
    if (wx.empty() || wy.empty()) {
        throw ZeroDenominator("kernel AUC: no pair carries positive weight at z=" + std::to_string(z));
    }
    double numerator = 0.0;
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (const auto& [yv, w] : wy) sum_y += w;
    for (const auto& [xv, wxi] : wx) {
        sum_x += wxi;
        double s = 0.0;
        for (const auto& [yv, wyj] : wy) {
            if (yv - xv >= 0.0) s += wyj;
        }
        numerator += wxi * s;
    }
    return make_estimate(z, numerator / (sum_x * sum_y), AucEstimator::BivariateKernel, clamp);
}

}  // namespace covroc
