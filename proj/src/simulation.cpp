#include "covroc/simulation.hpp"

#include "covroc/analysis.hpp"
#include "covroc/error.hpp"
#include "covroc/kernel.hpp"
#include "covroc/normal_dist.hpp"
#include "covroc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace covroc::sim {

std::string scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::NormalNoise: return "normal";
        case ScenarioKind::StudentT3: return "t3";
        case ScenarioKind::LogNormal: return "lognormal";
    }
    return "unknown";
}

ScenarioKind scenario_from_name(const std::string& name) {
    if (name == "normal") return ScenarioKind::NormalNoise;
    if (name == "t3") return ScenarioKind::StudentT3;
    if (name == "lognormal") return ScenarioKind::LogNormal;
    throw InvalidArgument("unknown scenario '" + name + "' (expected normal, t3 or lognormal)");
}

std::string policy_name(CurvePolicy p) {
    switch (p) {
        case CurvePolicy::OracleIse: return "oracle";
        case CurvePolicy::LooCv: return "cv";
        case CurvePolicy::TrueCurves: return "truth";
    }
    return "unknown";
}

CurvePolicy policy_from_name(const std::string& name) {
    if (name == "oracle") return CurvePolicy::OracleIse;
    if (name == "cv") return CurvePolicy::LooCv;
    if (name == "truth") return CurvePolicy::TrueCurves;
    throw InvalidArgument("unknown bandwidth policy '" + name + "' (expected oracle, cv or truth)");
}

namespace {

constexpr double kLogSigma2 = 1.0 / 3.0;

double model1_mean(double z) { return 6.0 + 1.5 * z + 1.5 * std::sin(z); }
double model1_shift(double z) { return std::sqrt(z - 0.5); }
double model1_v1(double z) { return 0.3 + normal_cdf(2.0 * z - 6.0); }
double model1_v2(double z) { return 1.5 + normal_cdf(2.0 * z - 6.0); }

double lognormal_f(double z) { return 1.0 - 0.5 * z - 0.25 * std::sin(std::numbers::pi * z); }
double lognormal_g(double z) { return lognormal_f(z) + 1.5 * std::sqrt(z + 0.5); }

/// Student t with 3 degrees of freedom.
double t3_cdf(double t) {
    const double s = t / std::sqrt(3.0);
    return 0.5 + (s / (1.0 + s * s) + std::atan(s)) / std::numbers::pi;
}

}  // namespace

SimScenario SimScenario::make(ScenarioKind kind, std::size_t m, std::size_t n) {
    SimScenario s;
    s.kind = kind;
    s.m = m;
    s.n = n;
    if (kind == ScenarioKind::LogNormal) {
        s.z_lo = 0.0;
        s.z_hi = 1.0;
    }
    return s;
}

double SimScenario::log_sigma2() const { return noise_scale * noise_scale * kLogSigma2; }
double SimScenario::log_mean_x(double z) const { return std::log(lognormal_f(z)) - 0.5 * kLogSigma2; }
double SimScenario::log_mean_y(double z) const { return std::log(lognormal_g(z)) - 0.5 * kLogSigma2; }

double SimScenario::mean_x(double z) const {
    if (kind == ScenarioKind::LogNormal) return std::exp(log_mean_x(z) + 0.5 * log_sigma2());
    return model1_mean(z);
}

double SimScenario::mean_y(double z) const {
    if (kind == ScenarioKind::LogNormal) return std::exp(log_mean_y(z) + 0.5 * log_sigma2());
    return model1_mean(z) + model1_shift(z);
}

double SimScenario::var_x(double z) const {
    if (kind == ScenarioKind::LogNormal) {
        const double f = mean_x(z);
        return std::expm1(log_sigma2()) * f * f;
    }
    return noise_scale * noise_scale * model1_v1(z);
}

double SimScenario::var_y(double z) const {
    if (kind == ScenarioKind::LogNormal) {
        const double g = mean_y(z);
        return std::expm1(log_sigma2()) * g * g;
    }
    return noise_scale * noise_scale * model1_v2(z);
}

FunctionCurves SimScenario::true_curves() const {
    const SimScenario self = *this;
    return FunctionCurves([self](double z) { return self.mean_x(z); }, [self](double z) { return self.mean_y(z); },
                          [self](double z) { return self.var_x(z); }, [self](double z) { return self.var_y(z); });
}

std::pair<SamplePairs, SamplePairs> generate(const SimScenario& sc, Rng& rng) {
    if (!(sc.z_hi >= sc.z_lo)) throw InvalidArgument("covariate interval must satisfy lo <= hi");
    if (sc.kind != ScenarioKind::LogNormal && sc.z_lo < 0.5) {
        throw InvalidArgument("model covariates must be >= 0.5 so that sqrt(z - 0.5) is real");
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::student_t_distribution<double> student(3.0);
    const double t_scale = 1.0 / std::sqrt(3.0);
    const double sigma = std::sqrt(kLogSigma2);

    auto noise = [&]() {
        switch (sc.kind) {
            case ScenarioKind::StudentT3: return student(rng) * t_scale;
            case ScenarioKind::NormalNoise:
            case ScenarioKind::LogNormal: break;
        }
        return gauss(rng);
    };
    auto draw = [&](std::size_t count, Population pop) {
        SamplePairs out;
        out.population = pop;
        out.covariates.resize(count);
        out.markers.resize(count);
        const bool is_x = pop == Population::NonDiseased_X;
        for (std::size_t i = 0; i < count; ++i) {
            const double z = sc.z_lo + (sc.z_hi - sc.z_lo) * unif(rng);
            const double e = sc.noise_scale * noise();
            double v;
            if (sc.kind == ScenarioKind::LogNormal) {
                v = std::exp((is_x ? sc.log_mean_x(z) : sc.log_mean_y(z)) + sigma * e);
            } else {
                const double mean = is_x ? model1_mean(z) : model1_mean(z) + model1_shift(z);
                v = mean + std::sqrt(is_x ? model1_v1(z) : model1_v2(z)) * e;
            }
            out.covariates[i] = z;
            out.markers[i] = v;
        }
        return out;
    };
    SamplePairs x = draw(sc.m, Population::NonDiseased_X);
    SamplePairs y = draw(sc.n, Population::Diseased_Y);
    return {std::move(x), std::move(y)};
}

std::pair<SamplePairs, SamplePairs> generate(const SimScenario& scenario, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    return generate(scenario, rng);
}

double true_auc(const SimScenario& sc, double z) {
    if (sc.noise_scale == 0.0) {
        return sc.mean_y(z) >= sc.mean_x(z) ? 1.0 : 0.0;
    }
    switch (sc.kind) {
        case ScenarioKind::NormalNoise:
            return normal_cdf((sc.mean_y(z) - sc.mean_x(z)) / std::sqrt(sc.var_x(z) + sc.var_y(z)));
        case ScenarioKind::StudentT3: {
            // P(Y > X) = E_e1[1 - G*((f - g + sqrt(v1) e1) / sqrt(v2))]; with
            // e1 = tan(theta) the scaled t3 law has density (2/pi) cos^2(theta).
            const double f = sc.mean_x(z), g = sc.mean_y(z);
            const double s1 = std::sqrt(sc.var_x(z)), s2 = std::sqrt(sc.var_y(z));
            const double half_pi = 0.5 * std::numbers::pi;
            return simpson(
                [&](double theta) {
                    const double c = std::cos(theta);
                    if (c <= 0.0) return 0.0;
                    const double e1 = std::tan(theta);
                    const double tail = 1.0 - t3_cdf(std::sqrt(3.0) * (f - g + s1 * e1) / s2);
                    return (2.0 / std::numbers::pi) * c * c * tail;
                },
                -half_pi, half_pi, 4001);
        }
        case ScenarioKind::LogNormal: {
            // log is monotone: P(Y > X) = P(g0 + s e2 > f0 + s e1).
            const double shift = (sc.log_mean_x(z) - sc.log_mean_y(z)) / std::sqrt(sc.log_sigma2());
            return simpson([&](double e) { return normal_pdf(e) * normal_cdf(-(shift + e)); }, -12.0, 12.0, 4001);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> default_z_grid(const SimScenario& sc, std::size_t count) {
    const double pad = 0.05 * (sc.z_hi - sc.z_lo);
    return linspace(sc.z_lo + pad, sc.z_hi - pad, count);
}

namespace {

/// Looks up precomputed truth on a fixed grid; falls back to direct evaluation.
struct GridTruth {
    std::vector<double> grid;
    std::vector<double> values;
    const SimScenario* scenario;

    double operator()(double z) const {
        const auto it = std::lower_bound(grid.begin(), grid.end(), z);
        if (it != grid.end() && *it == z) return values[static_cast<std::size_t>(it - grid.begin())];
        return true_auc(*scenario, z);
    }
};

struct RunCurves {
    std::optional<FittedCurves> fitted;
    std::optional<FunctionCurves> truth;
    Bandwidths bw;

    const MeanVarianceCurves& curves() const {
        if (fitted) return *fitted;
        return *truth;
    }
};

RunCurves curves_for_run(const SimScenario& sc, const SamplePairs& x, const SamplePairs& y, CurvePolicy policy,
                         const PolyOrders& orders, const Kernel& kernel, const BandwidthGrid& grid,
                         const std::vector<double>& ise_grid) {
    RunCurves out;
    switch (policy) {
        case CurvePolicy::TrueCurves:
            out.truth = sc.true_curves();
            return out;
        case CurvePolicy::OracleIse: {
            const auto set = oracle::oracle_select_all([&](double z) { return sc.mean_x(z); },
                                                       [&](double z) { return sc.mean_y(z); },
                                                       [&](double z) { return sc.var_x(z); },
                                                       [&](double z) { return sc.var_y(z); }, x, y, orders, kernel,
                                                       grid, ise_grid);
            out.bw = set.bw;
            break;
        }
        case CurvePolicy::LooCv:
            out.bw = select_all(x, y, orders, kernel, grid).bw;
            break;
    }
    out.fitted = fit_all(x, y, orders, out.bw, kernel);
    return out;
}

}  // namespace

SimResult run_mse_study(const SimScenario& sc, const MseStudyConfig& cfg) {
    if (cfg.runs < 1) throw InvalidArgument("Monte Carlo study needs at least one run");
    if (cfg.estimators.empty()) throw InvalidArgument("no estimators requested");
    SimResult result;
    result.scenario = sc.name();
    result.z_grid = cfg.z_grid.empty() ? default_z_grid(sc) : cfg.z_grid;
    result.runs = cfg.runs;
    result.seed = cfg.seed;
    result.policy = policy_name(cfg.policy);
    const auto& zg = result.z_grid;
    for (double z : zg) result.true_auc.push_back(true_auc(sc, z));

    const std::vector<double> ise_grid = linspace(sc.z_lo, sc.z_hi, cfg.ise_points);
    GridTruth auc_truth{ise_grid, {}, &sc};
    const bool need_kernel_oracle =
        cfg.policy != CurvePolicy::LooCv &&
        std::find(cfg.estimators.begin(), cfg.estimators.end(), AucEstimator::BivariateKernel) != cfg.estimators.end();
    if (need_kernel_oracle) {
        for (double z : ise_grid) auc_truth.values.push_back(true_auc(sc, z));
    }

    const std::size_t ne = cfg.estimators.size();
    // estimates[run][estimator] = values on z_grid, empty on failure
    std::vector<std::vector<std::optional<std::vector<double>>>> estimates(
        cfg.runs, std::vector<std::optional<std::vector<double>>>(ne));

    parallel_for(cfg.runs, cfg.threads, [&](std::size_t r) {
        Rng rng = make_stream(cfg.seed, r);
        const auto data = generate(sc, rng);
        const SamplePairs& x = data.first;
        const SamplePairs& y = data.second;

        std::optional<RunCurves> curves;
        bool curves_failed = false;
        auto get_curves = [&]() -> const RunCurves* {
            if (!curves && !curves_failed) {
                try {
                    curves = curves_for_run(sc, x, y, cfg.policy, cfg.orders, cfg.kernel, cfg.grid, ise_grid);
                } catch (const Error&) {
                    curves_failed = true;
                }
            }
            return curves ? &*curves : nullptr;
        };

        for (std::size_t e = 0; e < ne; ++e) {
            const AucEstimator est = cfg.estimators[e];
            try {
                std::vector<AucEstimate> values;
                if (est == AucEstimator::BivariateKernel) {
                    double hx, hy;
                    if (cfg.policy == CurvePolicy::LooCv) {
                        const RunCurves* rc = get_curves();
                        if (!rc) continue;
                        hx = rc->bw.h1;
                        hy = rc->bw.h2;
                    } else {
                        const auto sel = oracle::oracle_ise_auc_bandwidths(auc_truth, x, y, cfg.kernel, cfg.grid,
                                                                           cfg.grid, ise_grid);
                        hx = sel.hx;
                        hy = sel.hy;
                    }
                    const auto unused = FunctionCurves::constant(0.0, 0.0, 1.0, 1.0);
                    values = auc_on_grid(est, x, y, unused, hx, hy, cfg.kernel, false, zg);
                } else if (est == AucEstimator::MannWhitneyUnadjusted) {
                    const auto unused = FunctionCurves::constant(0.0, 0.0, 1.0, 1.0);
                    values = auc_on_grid(est, x, y, unused, 1.0, 1.0, cfg.kernel, false, zg);
                } else {
                    const RunCurves* rc = get_curves();
                    if (!rc) continue;
                    values = auc_on_grid(est, x, y, rc->curves(), 1.0, 1.0, cfg.kernel, false, zg);
                }
                std::vector<double> v;
                v.reserve(values.size());
                for (const auto& a : values) v.push_back(a.value);
                estimates[r][e] = std::move(v);
            } catch (const Error&) {
                // recorded as a failure below
            }
        }
    });

    const std::size_t nz = zg.size();
    for (std::size_t e = 0; e < ne; ++e) {
        EstimatorSummary summary;
        summary.mse.assign(nz, 0.0);
        summary.mean_estimate.assign(nz, 0.0);
        summary.variance.assign(nz, 0.0);
        std::size_t ok = 0;
        for (std::size_t r = 0; r < cfg.runs; ++r) {
            const auto& v = estimates[r][e];
            if (!v) {
                ++summary.failures;
                continue;
            }
            ++ok;
            for (std::size_t t = 0; t < nz; ++t) {
                const double d = (*v)[t] - result.true_auc[t];
                summary.mse[t] += d * d;
                summary.mean_estimate[t] += (*v)[t];
            }
        }
        if (static_cast<double>(summary.failures) > cfg.max_failure_rate * static_cast<double>(cfg.runs) || ok == 0) {
            throw FailureRateExceeded("Monte Carlo runs of estimator " + estimator_name(cfg.estimators[e]),
                                      summary.failures, cfg.runs);
        }
        for (std::size_t t = 0; t < nz; ++t) {
            summary.mse[t] /= static_cast<double>(ok);
            summary.mean_estimate[t] /= static_cast<double>(ok);
        }
        if (ok > 1) {
            for (std::size_t r = 0; r < cfg.runs; ++r) {
                const auto& v = estimates[r][e];
                if (!v) continue;
                for (std::size_t t = 0; t < nz; ++t) {
                    const double d = (*v)[t] - summary.mean_estimate[t];
                    summary.variance[t] += d * d;
                }
            }
            for (double& s : summary.variance) s /= static_cast<double>(ok - 1);
        }
        summary.integrated_mse = nz > 1 ? trapezoid(zg, summary.mse) : summary.mse.front();
        result.estimators.emplace(cfg.estimators[e], std::move(summary));
    }
    return result;
}

BandStudyResult run_band_study(const SimScenario& sc, const BandStudyConfig& cfg) {
    if (cfg.runs < 1) throw InvalidArgument("band study needs at least one run");
    if (cfg.bootstrap < 2) throw InvalidArgument("band study needs at least 2 bootstrap replicates");
    if (cfg.policy == CurvePolicy::TrueCurves) {
        throw InvalidArgument("band study refits curves on every resample; use the cv or oracle policy");
    }
    BandStudyResult out;
    out.scenario = sc.name();
    out.z_grid = cfg.z_grid.empty() ? default_z_grid(sc) : cfg.z_grid;
    out.runs = cfg.runs;
    out.bootstrap = cfg.bootstrap;
    out.level = cfg.level;
    out.seed = cfg.seed;
    const auto& zg = out.z_grid;
    for (double z : zg) out.true_auc.push_back(true_auc(sc, z));
    const std::vector<double> ise_grid = linspace(sc.z_lo, sc.z_hi, cfg.ise_points);

    AnalysisConfig analysis;
    analysis.orders = cfg.orders;
    analysis.kernel = cfg.kernel;
    analysis.grid = cfg.grid;
    analysis.widen_retries = cfg.widen_retries;

    struct RunOutput {
        std::vector<double> estimate, lower, upper, variance;
    };
    std::vector<std::optional<RunOutput>> runs(cfg.runs);

    parallel_for(cfg.runs, cfg.threads, [&](std::size_t r) {
        Rng rng = make_stream(cfg.seed, r);
        const auto data = generate(sc, rng);
        const SamplePairs& x = data.first;
        const SamplePairs& y = data.second;
        try {
            BandwidthSet set;
            if (cfg.policy == CurvePolicy::OracleIse) {
                set = oracle::oracle_select_all([&](double z) { return sc.mean_x(z); },
                                                [&](double z) { return sc.mean_y(z); },
                                                [&](double z) { return sc.var_x(z); },
                                                [&](double z) { return sc.var_y(z); }, x, y, cfg.orders, cfg.kernel,
                                                cfg.grid, ise_grid);
            } else {
                set = select_all(x, y, cfg.orders, cfg.kernel, cfg.grid);
            }
            BootstrapConfig bc;
            bc.replicates = cfg.bootstrap;
            bc.level = cfg.level;
            bc.seed = stream_seed(cfg.seed ^ 0xb0075742a9d1c3e5ULL, r);
            bc.refit = cfg.policy == CurvePolicy::LooCv ? cfg.refit : BandwidthRefit::Frozen;
            bc.threads = 1;
            const AucBand band = bootstrap_auc(x, y, AucEstimator::Camwe, analysis, set, zg, bc);
            runs[r] = RunOutput{band.point_estimates, band.lower, band.upper, band.variance};
        } catch (const Error&) {
            // failed run
        }
    });

    const std::size_t nz = zg.size();
    for (const auto& r : runs)
        if (!r) ++out.failures;
    out.effective_runs = cfg.runs - out.failures;
    if (static_cast<double>(out.failures) > cfg.max_failure_rate * static_cast<double>(cfg.runs) ||
        out.effective_runs == 0) {
        throw FailureRateExceeded("band study runs", out.failures, cfg.runs);
    }

    out.mc_mean.assign(nz, 0.0);
    out.mc_lower.assign(nz, 0.0);
    out.mc_upper.assign(nz, 0.0);
    out.mc_variance.assign(nz, 0.0);
    out.boot_lower.assign(nz, 0.0);
    out.boot_upper.assign(nz, 0.0);
    out.boot_variance.assign(nz, 0.0);
    const double k = static_cast<double>(out.effective_runs);
    std::vector<double> column;
    for (std::size_t t = 0; t < nz; ++t) {
        column.clear();
        for (const auto& r : runs) {
            if (!r) continue;
            column.push_back(r->estimate[t]);
            out.boot_lower[t] += r->lower[t];
            out.boot_upper[t] += r->upper[t];
            out.boot_variance[t] += r->variance[t];
        }
        out.boot_lower[t] /= k;
        out.boot_upper[t] /= k;
        out.boot_variance[t] /= k;
        double mean = 0.0;
        for (double v : column) mean += v;
        out.mc_mean[t] = mean / k;
        out.mc_variance[t] = sample_variance(column);
        const auto [lo, hi] = percentile_interval(column, cfg.level);
        out.mc_lower[t] = lo;
        out.mc_upper[t] = hi;
    }
    return out;
}

}  // namespace covroc::sim
