#include "covroc/bandwidth.hpp"

#include "covroc/error.hpp"
#include "covroc/roc.hpp"

#include <algorithm>
#include <cmath>

namespace covroc {

void BandwidthGrid::validate() const {
    if (candidates.empty()) throw InvalidArgument("bandwidth grid is empty");
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (!(candidates[k] > 0.0) || !std::isfinite(candidates[k])) {
            throw InvalidArgument("bandwidth candidates must be positive and finite");
        }
        if (k > 0 && !(candidates[k] > candidates[k - 1])) {
            throw InvalidArgument("bandwidth candidates must be strictly increasing");
        }
    }
}

std::vector<double> BandwidthGrid::resolve(double range) const {
    validate();
    if (scale == GridScale::Absolute) return candidates;
    if (!(range > 0.0)) throw InvalidArgument("covariate range must be positive to scale the bandwidth grid");
    std::vector<double> out(candidates);
    for (double& c : out) c *= range;
    return out;
}

BandwidthGrid BandwidthGrid::log_spaced(double lo, double hi, int count, GridScale scale) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw InvalidArgument("invalid bandwidth grid specification");
    if (count > 1 && !(hi > lo)) throw InvalidArgument("bandwidth grid needs max > min for more than one point");
    BandwidthGrid grid;
    grid.scale = scale;
    if (count == 1) {
        grid.candidates = {lo};
        return grid;
    }
    const double step = std::log(hi / lo) / (count - 1);
    for (int k = 0; k < count; ++k) {
        grid.candidates.push_back(k == count - 1 ? hi : lo * std::exp(step * k));
    }
    return grid;
}

std::string method_name(BandwidthMethod m) {
    switch (m) {
        case BandwidthMethod::LooCv: return "loo_cv";
        case BandwidthMethod::OracleIse: return "oracle_ise";
        case BandwidthMethod::Fixed: return "fixed";
    }
    return "unknown";
}

std::size_t select_candidate(std::span<const double> candidates, std::span<const double> scores,
                             double abs_tolerance) {
    if (candidates.size() != scores.size() || candidates.empty()) {
        throw InvalidArgument("candidate and score vectors must be non-empty and equal length");
    }
    double best = std::numeric_limits<double>::infinity();
    for (double s : scores) best = std::min(best, s);
    if (!std::isfinite(best)) throw InfeasibleBandwidths("every bandwidth candidate is infeasible");
    const double limit = best + 1e-10 * std::abs(best) + abs_tolerance;
    std::size_t chosen = 0;
    double chosen_h = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] <= limit && candidates[k] > chosen_h) {
            chosen = k;
            chosen_h = candidates[k];
        }
    }
    return chosen;
}

namespace {

double covariate_range(const SamplePairs& data) { return data.covariate_max() - data.covariate_min(); }

double sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

BandwidthChoice loo_cv_bandwidth(const SamplePairs& data, int p, const Kernel& kernel, const BandwidthGrid& grid) {
    data.validate(p);
    if (data.size() < static_cast<std::size_t>(p + 3)) {
        throw InvalidArgument("leave-one-out cross-validation needs at least p+3 observations");
    }
    BandwidthChoice out;
    out.candidates = grid.resolve(covariate_range(data));
    out.scores.assign(out.candidates.size(), std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < out.candidates.size(); ++k) {
        const LocalPolyFit fit(data, p, out.candidates[k], kernel);
        double score = 0.0;
        try {
            for (std::size_t i = 0; i < data.size(); ++i) {
                const double r = data.markers[i] - fit.evaluate_excluding(data.covariates[i], i);
                score += r * r;
            }
        } catch (const InsufficientLocalData&) {
            continue;
        }
        out.scores[k] = score;
    }
    out.bandwidth = out.candidates[select_candidate(out.candidates, out.scores, 1e-24 * sum_squares(data.markers))];
    return out;
}

BandwidthSet select_all(const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                        const Kernel& kernel, const BandwidthGrid& grid) {
    SamplePairs x = x_data;
    SamplePairs y = y_data;
    x.population = Population::NonDiseased_X;
    y.population = Population::Diseased_Y;

    auto labelled = [](const char* what, auto&& fn) {
        try {
            return fn();
        } catch (const InfeasibleBandwidths& e) {
            throw InfeasibleBandwidths(std::string(what) + ": " + e.what());
        }
    };

    BandwidthSet set;
    set.method = BandwidthMethod::LooCv;
    set.h1_scores = labelled("h1 (mean, population X)", [&] { return loo_cv_bandwidth(x, orders.f, kernel, grid); });
    set.h2_scores = labelled("h2 (mean, population Y)", [&] { return loo_cv_bandwidth(y, orders.g, kernel, grid); });
    set.bw.h1 = set.h1_scores->bandwidth;
    set.bw.h2 = set.h2_scores->bandwidth;

    const auto r1 = variance_observations(x, fit_mean(x, orders.f, set.bw.h1, kernel));
    const auto r2 = variance_observations(y, fit_mean(y, orders.g, set.bw.h2, kernel));
    set.b1_scores = labelled("b1 (variance, population X)", [&] { return loo_cv_bandwidth(r1, orders.v1, kernel, grid); });
    set.b2_scores = labelled("b2 (variance, population Y)", [&] { return loo_cv_bandwidth(r2, orders.v2, kernel, grid); });
    set.bw.b1 = set.b1_scores->bandwidth;
    set.bw.b2 = set.b2_scores->bandwidth;
    return set;
}

double trapezoid(std::span<const double> grid, std::span<const double> values) {
    if (grid.size() != values.size()) throw InvalidArgument("trapezoid: grid and values differ in length");
    double s = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) s += 0.5 * (grid[k] - grid[k - 1]) * (values[k] + values[k - 1]);
    return s;
}

namespace oracle {

namespace {

void check_eval_grid(std::span<const double> eval_grid) {
    if (eval_grid.size() < 2) throw InvalidArgument("ISE evaluation grid needs at least two points");
    for (std::size_t k = 1; k < eval_grid.size(); ++k) {
        if (!(eval_grid[k] > eval_grid[k - 1])) throw InvalidArgument("ISE evaluation grid must be increasing");
    }
}

}  // namespace

BandwidthChoice oracle_ise_bandwidth(const TrueFn& true_fn, const SamplePairs& data, int p, const Kernel& kernel,
                                     const BandwidthGrid& grid, std::span<const double> eval_grid, double floor) {
    check_eval_grid(eval_grid);
    data.validate(p);
    std::vector<double> truth(eval_grid.size());
    for (std::size_t t = 0; t < eval_grid.size(); ++t) truth[t] = true_fn(eval_grid[t]);
    std::vector<double> truth2(truth.size());
    for (std::size_t t = 0; t < truth.size(); ++t) truth2[t] = truth[t] * truth[t];
    const double scale = std::abs(trapezoid(eval_grid, truth2));

    BandwidthChoice out;
    out.candidates = grid.resolve(data.covariate_max() - data.covariate_min());
    out.scores.assign(out.candidates.size(), std::numeric_limits<double>::infinity());
    std::vector<double> err2(eval_grid.size());
    for (std::size_t k = 0; k < out.candidates.size(); ++k) {
        LocalPolyFit::Options opts;
        opts.floor = floor;
        const LocalPolyFit fit(data, p, out.candidates[k], kernel, opts);
        try {
            for (std::size_t t = 0; t < eval_grid.size(); ++t) {
                const double e = fit(eval_grid[t]) - truth[t];
                err2[t] = e * e;
            }
            for (double zi : data.covariates) (void)fit(zi);
        } catch (const InsufficientLocalData&) {
            continue;
        }
        out.scores[k] = trapezoid(eval_grid, err2);
    }
    out.bandwidth = out.candidates[select_candidate(out.candidates, out.scores, 1e-24 * scale)];
    return out;
}

KernelAucBandwidths oracle_ise_auc_bandwidths(const TrueFn& true_auc, const SamplePairs& x_data,
                                              const SamplePairs& y_data, const Kernel& kernel,
                                              const BandwidthGrid& hx_grid, const BandwidthGrid& hy_grid,
                                              std::span<const double> eval_grid) {
    check_eval_grid(eval_grid);
    const std::size_t m = x_data.size();
    const std::size_t n = y_data.size();
    if (m == 0 || n == 0) throw EmptySample("kernel AUC oracle needs two non-empty samples");

    KernelAucBandwidths out;
    out.hx_candidates = hx_grid.resolve(x_data.covariate_max() - x_data.covariate_min());
    out.hy_candidates = hy_grid.resolve(y_data.covariate_max() - y_data.covariate_min());
    const std::size_t na = out.hx_candidates.size();
    const std::size_t nb = out.hy_candidates.size();

    // indicator(i, j) = 1{y_j - x_i >= 0}
    std::vector<unsigned char> indicator(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) indicator[i * n + j] = (y_data.markers[j] - x_data.markers[i] >= 0.0);

    // Trapezoid weights of the evaluation grid.
    std::vector<double> tw(eval_grid.size(), 0.0);
    for (std::size_t t = 1; t < eval_grid.size(); ++t) {
        const double half = 0.5 * (eval_grid[t] - eval_grid[t - 1]);
        tw[t - 1] += half;
        tw[t] += half;
    }

    std::vector<double> ise(na * nb, 0.0);
    std::vector<unsigned char> feasible(na * nb, 1);
    std::vector<double> wx(m), wy(nb * n), u(n), sum_wy(nb);
    for (std::size_t t = 0; t < eval_grid.size(); ++t) {
        const double z = eval_grid[t];
        const double truth = true_auc(z);
        for (std::size_t b = 0; b < nb; ++b) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double w = kernel_scaled(kernel, y_data.covariates[j] - z, out.hy_candidates[b]);
                wy[b * n + j] = w;
                s += w;
            }
            sum_wy[b] = s;
        }
        for (std::size_t a = 0; a < na; ++a) {
            double sum_wx = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                wx[i] = kernel_scaled(kernel, x_data.covariates[i] - z, out.hx_candidates[a]);
                sum_wx += wx[i];
            }
            std::fill(u.begin(), u.end(), 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                if (wx[i] == 0.0) continue;
                const unsigned char* row = &indicator[i * n];
                for (std::size_t j = 0; j < n; ++j)
                    if (row[j]) u[j] += wx[i];
            }
            for (std::size_t b = 0; b < nb; ++b) {
                const std::size_t idx = a * nb + b;
                if (!feasible[idx]) continue;
                const double den = sum_wx * sum_wy[b];
                if (!(den > 0.0)) {
                    feasible[idx] = 0;
                    continue;
                }
                double num = 0.0;
                for (std::size_t j = 0; j < n; ++j) num += u[j] * wy[b * n + j];
                const double e = num / den - truth;
                ise[idx] += tw[t] * e * e;
            }
        }
    }

    out.scores.resize(na * nb);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < na * nb; ++k) {
        out.scores[k] = feasible[k] ? ise[k] : std::numeric_limits<double>::infinity();
        best = std::min(best, out.scores[k]);
    }
    if (!std::isfinite(best)) throw InfeasibleBandwidths("every (hx, hy) pair is infeasible for the kernel AUC");
    const double limit = best + 1e-10 * best + 1e-24;
    // Largest hx wins ties, then largest hy.
    for (std::size_t a = na; a-- > 0;) {
        for (std::size_t b = nb; b-- > 0;) {
            if (out.scores[a * nb + b] <= limit) {
                out.hx = out.hx_candidates[a];
                out.hy = out.hy_candidates[b];
                return out;
            }
        }
    }
    throw InfeasibleBandwidths("every (hx, hy) pair is infeasible for the kernel AUC");
}

BandwidthSet oracle_select_all(const TrueFn& f, const TrueFn& g, const TrueFn& v1, const TrueFn& v2,
                               const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                               const Kernel& kernel, const BandwidthGrid& grid, std::span<const double> eval_grid) {
    SamplePairs x = x_data;
    SamplePairs y = y_data;
    x.population = Population::NonDiseased_X;
    y.population = Population::Diseased_Y;

    BandwidthSet set;
    set.method = BandwidthMethod::OracleIse;
    set.h1_scores = oracle_ise_bandwidth(f, x, orders.f, kernel, grid, eval_grid);
    set.h2_scores = oracle_ise_bandwidth(g, y, orders.g, kernel, grid, eval_grid);
    set.bw.h1 = set.h1_scores->bandwidth;
    set.bw.h2 = set.h2_scores->bandwidth;
    const auto r1 = variance_observations(x, fit_mean(x, orders.f, set.bw.h1, kernel));
    const auto r2 = variance_observations(y, fit_mean(y, orders.g, set.bw.h2, kernel));
    set.b1_scores = oracle_ise_bandwidth(v1, r1, orders.v1, kernel, grid, eval_grid, default_variance_floor(x));
    set.b2_scores = oracle_ise_bandwidth(v2, r2, orders.v2, kernel, grid, eval_grid, default_variance_floor(y));
    set.bw.b1 = set.b1_scores->bandwidth;
    set.bw.b2 = set.b2_scores->bandwidth;
    return set;
}

}  // namespace oracle

}  // namespace covroc
