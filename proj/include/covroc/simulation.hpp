#pragma once

#include "covroc/bandwidth.hpp"
#include "covroc/bootstrap.hpp"
#include "covroc/local_polynomial.hpp"
#include "covroc/rng.hpp"
#include "covroc/roc.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace covroc::sim {

enum class ScenarioKind { NormalNoise, StudentT3, LogNormal };

std::string scenario_name(ScenarioKind kind);
/// Accepts "normal", "t3", "lognormal".
ScenarioKind scenario_from_name(const std::string& name);

/// Data-generating model with known mean and variance functions.
///
/// NormalNoise / StudentT3 (covariates on [1, 5]):
///   x = 6 + 1.5 z + 1.5 sin z + sqrt(v1(z)) e,        v1(z) = 0.3 + Phi(2z - 6)
///   y = 6 + 1.5 z + 1.5 sin z + sqrt(z - 0.5) + sqrt(v2(z)) e,  v2(z) = 1.5 + Phi(2z - 6)
/// with t3 draws divided by sqrt(3) to get unit variance.
///
/// LogNormal (covariates on [0, 1]): x = exp{f0(z) + s e}, y = exp{g0(z) + s e}
/// with s^2 = 1/3 and f0 = log f - s^2/2 for the original-scale means
/// f(z) = 1 - 0.5 z - 0.25 sin(pi z), g(z) = f(z) + 1.5 sqrt(z + 0.5).
///
/// `noise_scale` multiplies every noise draw (0 gives noiseless data); the
/// reported true functions account for it.
struct SimScenario {
    ScenarioKind kind = ScenarioKind::NormalNoise;
    double z_lo = 1.0;
    double z_hi = 5.0;
    std::size_t m = 40;
    std::size_t n = 40;
    double noise_scale = 1.0;

    static SimScenario make(ScenarioKind kind, std::size_t m = 40, std::size_t n = 40);

    std::string name() const { return scenario_name(kind); }

    double mean_x(double z) const;
    double mean_y(double z) const;
    double var_x(double z) const;
    double var_y(double z) const;

    /// Log-scale quantities of the LogNormal model.
    double log_sigma2() const;
    double log_mean_x(double z) const;
    double log_mean_y(double z) const;

    /// True curves (floored at the smallest positive double for noiseless data).
    FunctionCurves true_curves() const;
};

/// Draws m X pairs then n Y pairs; per pair the covariate, then the noise.
std::pair<SamplePairs, SamplePairs> generate(const SimScenario& scenario, Rng& rng);
std::pair<SamplePairs, SamplePairs> generate(const SimScenario& scenario, std::uint64_t seed);

/// P(Y > X | Z = z) of the model. Normal noise uses the closed form; the
/// other families integrate the convolution numerically.
double true_auc(const SimScenario& scenario, double z);

/// Default evaluation grid: `count` equispaced points over the interior 90%
/// of the covariate interval.
std::vector<double> default_z_grid(const SimScenario& scenario, std::size_t count = 41);

enum class CurvePolicy {
    OracleIse,   ///< bandwidths minimizing the true ISE
    LooCv,       ///< leave-one-out CV, as on real data
    TrueCurves,  ///< hypothetical estimator with the true functions plugged in
};

std::string policy_name(CurvePolicy p);
/// Accepts "oracle", "cv", "truth".
CurvePolicy policy_from_name(const std::string& name);

struct MseStudyConfig {
    std::size_t runs = 500;
    std::vector<AucEstimator> estimators = {AucEstimator::NormalClosedForm, AucEstimator::Camwe,
                                            AucEstimator::BivariateKernel};
    CurvePolicy policy = CurvePolicy::OracleIse;
    std::vector<double> z_grid;  ///< empty = default_z_grid
    std::uint64_t seed = 0;
    unsigned threads = 1;
    PolyOrders orders = PolyOrders::uniform(1);
    Kernel kernel{};
    BandwidthGrid grid = BandwidthGrid::default_grid();
    std::size_t ise_points = 101;     ///< ISE grid over the whole covariate interval
    double max_failure_rate = 0.05;
};

struct EstimatorSummary {
    std::vector<double> mse;            ///< mean of (A^(z) - A(z))^2 over successful runs
    std::vector<double> mean_estimate;
    std::vector<double> variance;       ///< Monte Carlo variance (n - 1 denominator)
    double integrated_mse = 0.0;        ///< trapezoid integral of mse over z_grid
    std::size_t failures = 0;
};

struct SimResult {
    std::string scenario;
    std::vector<double> z_grid;
    std::vector<double> true_auc;
    std::map<AucEstimator, EstimatorSummary> estimators;
    std::size_t runs = 0;
    std::uint64_t seed = 0;
    std::string policy;
};

/// Monte Carlo MSE comparison. Run r uses RNG stream (seed, r); reductions
/// run in run order, so results do not depend on `threads`. Throws
/// FailureRateExceeded when any estimator fails in more than 5% of runs.
SimResult run_mse_study(const SimScenario& scenario, const MseStudyConfig& cfg);

struct BandStudyConfig {
    std::size_t runs = 500;
    std::size_t bootstrap = 1000;
    std::vector<double> z_grid;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double level = 0.95;
    CurvePolicy policy = CurvePolicy::LooCv;
    BandwidthRefit refit = BandwidthRefit::Frozen;
    PolyOrders orders = PolyOrders::uniform(1);
    Kernel kernel{};
    BandwidthGrid grid = BandwidthGrid::default_grid();
    std::size_t ise_points = 101;
    double max_failure_rate = 0.05;
    /// Passed to every fit, including the bootstrap refits. Frozen small
    /// bandwidths often meet resamples with too few distinct covariates in
    /// a window; widening doubles h there (up to this many times).
    int widen_retries = 0;
};

/// Monte Carlo band of the CAMWE versus the average bootstrap band.
struct BandStudyResult {
    std::string scenario;
    std::vector<double> z_grid;
    std::vector<double> true_auc;
    std::vector<double> mc_mean;
    std::vector<double> mc_lower;
    std::vector<double> mc_upper;
    std::vector<double> mc_variance;
    std::vector<double> boot_lower;     ///< averaged over runs
    std::vector<double> boot_upper;
    std::vector<double> boot_variance;
    std::size_t runs = 0;
    std::size_t effective_runs = 0;
    std::size_t failures = 0;
    std::size_t bootstrap = 0;
    double level = 0.95;
    std::uint64_t seed = 0;
};

BandStudyResult run_band_study(const SimScenario& scenario, const BandStudyConfig& cfg);

}  // namespace covroc::sim
