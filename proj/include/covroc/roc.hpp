#pragma once

#include "covroc/kernel.hpp"
#include "covroc/local_polynomial.hpp"

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace covroc {

enum class AucEstimator { NormalClosedForm, Camwe, BivariateKernel, MannWhitneyUnadjusted };

std::string estimator_name(AucEstimator e);
/// Accepts "normal", "camwe", "kernel", "mann_whitney".
AucEstimator estimator_from_name(const std::string& name);

struct AucEstimate {
    double z = 0.0;
    double value = 0.0;
    AucEstimator estimator = AucEstimator::Camwe;
    bool clamped = false;
};

/// Applies the optional lower bound of 0.5.
AucEstimate make_estimate(double z, double value, AucEstimator estimator, bool clamp);

/// Classical Mann-Whitney statistic (1/mn) sum_i sum_j 1{y_j - x_i >= 0}.
/// Ties count as one.
double mann_whitney(std::span<const double> x, std::span<const double> y);

/// Curve values at a single covariate.
struct CurveValues {
    double f = 0.0;
    double g = 0.0;
    double v1 = 1.0;
    double v2 = 1.0;
};

CurveValues evaluate_curves(const MeanVarianceCurves& curves, double z);

/// Curves given directly as functions: true model functions in simulations,
/// or constants. Variances are floored at `variance_floor`.
class FunctionCurves final : public MeanVarianceCurves {
public:
    using Fn = std::function<double(double)>;

    FunctionCurves(Fn f, Fn g, Fn v1, Fn v2, double variance_floor = std::numeric_limits<double>::min());

    static FunctionCurves constant(double f, double g, double v1, double v2);

    double mean_x(double z) const override { return f_(z); }
    double mean_y(double z) const override { return g_(z); }
    double var_x(double z) const override;
    double var_y(double z) const override;

private:
    Fn f_, g_, v1_, v2_;
    double floor_;
};

// ---- normal-noise closed forms ----

AucEstimate auc_normal(const MeanVarianceCurves& curves, double z, bool clamp = false);
double auc_normal(const CurveValues& at_z);

struct SensSpec {
    double sensitivity = 0.0;  ///< q
    double specificity = 0.0;  ///< p
};

SensSpec sens_spec_normal(const MeanVarianceCurves& curves, double z, double c);

struct RocPoint {
    double threshold = 0.0;
    double sensitivity = 0.0;
    double false_positive_rate = 0.0;  ///< 1 - specificity
};

/// Binormal ROC at z evaluated on a strictly increasing grid of false
/// positive rates in (0, 1).
std::vector<RocPoint> roc_curve_normal(const MeanVarianceCurves& curves, double z,
                                       std::span<const double> fpr_grid);

/// Trapezoid area under ROC points sorted by false positive rate; the
/// corners (0, 0) and (1, 1) are added when missing.
double roc_area(const std::vector<RocPoint>& points);

// ---- general noise: working samples and CAMWE ----

/// Residuals plus, per observation, the marker and the curve values at its
/// own covariate. Where the target curve values coincide with those, the
/// working sample reuses the marker itself, so that reconstruction is exact
/// rather than subject to rounding in f + sqrt(v) * (x - f) / sqrt(v).
struct StandardizedResiduals {
    std::vector<double> eps_x;
    std::vector<double> eps_y;

    struct Origin {
        std::vector<double> marker;
        std::vector<double> mean;
        std::vector<double> var;
    };
    Origin origin_x;  ///< may be left empty
    Origin origin_y;
};

StandardizedResiduals standardized_residuals(const SamplePairs& x_data, const SamplePairs& y_data,
                                             const MeanVarianceCurves& curves);

struct WorkingSample {
    double z = 0.0;
    std::vector<double> x_values;
    std::vector<double> y_values;
};

WorkingSample working_sample(const StandardizedResiduals& resid, const MeanVarianceCurves& curves, double z);
WorkingSample working_sample(const StandardizedResiduals& resid, const CurveValues& at_z, double z);

AucEstimate camwe(const StandardizedResiduals& resid, const MeanVarianceCurves& curves, double z,
                  bool clamp = false);
AucEstimate camwe(const SamplePairs& x_data, const SamplePairs& y_data, const MeanVarianceCurves& curves,
                  double z, bool clamp = false);

/// q = #{y >= c} / n, p = #{x <= c} / m.
SensSpec sens_spec_camwe(const WorkingSample& ws, double c);

/// Empirical step ROC over every distinct threshold level: each pooled value
/// and each open interval between consecutive values, plus +inf and -inf.
/// Consecutive duplicate points are dropped. Sorted by decreasing threshold.
std::vector<RocPoint> roc_curve_camwe(const WorkingSample& ws);

struct YoudenResult {
    double index = 0.0;
    double threshold = 0.0;
};

/// Maximizes q + p - 1 over the pooled working-sample values; ties go to
/// the smallest threshold.
YoudenResult youden_index(const WorkingSample& ws);

// ---- fully nonparametric competitor ----

AucEstimate auc_bivariate_kernel(const SamplePairs& x_data, const SamplePairs& y_data, double hx, double hy,
                                 const Kernel& kernel, double z, bool clamp = false);

}  // namespace covroc
