#pragma once

#include "covroc/kernel.hpp"
#include "covroc/local_polynomial.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace covroc {

enum class GridScale { Absolute, FractionOfRange };

/// Candidate bandwidths, either absolute or as fractions of the covariate range.
struct BandwidthGrid {
    std::vector<double> candidates;
    GridScale scale = GridScale::FractionOfRange;

    /// Throws InvalidArgument unless non-empty, strictly increasing, positive.
    void validate() const;

    /// Absolute bandwidths for a sample whose covariates span `range`.
    std::vector<double> resolve(double range) const;

    static BandwidthGrid log_spaced(double lo, double hi, int count, GridScale scale);

    /// 15 log-spaced fractions of the covariate range from 0.05 to 1.0.
    static BandwidthGrid default_grid() { return log_spaced(0.05, 1.0, 15, GridScale::FractionOfRange); }
};

enum class BandwidthMethod { LooCv, OracleIse, Fixed };

std::string method_name(BandwidthMethod m);

/// One selected bandwidth and the score of every candidate (+inf = infeasible).
struct BandwidthChoice {
    double bandwidth = 0.0;
    std::vector<double> candidates;
    std::vector<double> scores;
};

struct BandwidthSet {
    Bandwidths bw;
    BandwidthMethod method = BandwidthMethod::Fixed;
    std::optional<BandwidthChoice> h1_scores, h2_scores, b1_scores, b2_scores;

    static BandwidthSet fixed(const Bandwidths& bw) { return {bw, BandwidthMethod::Fixed, {}, {}, {}, {}}; }
};

/// Picks the minimum-score candidate. Scores within a relative 1e-10 (plus
/// `abs_tolerance`) of the minimum count as ties and go to the largest
/// candidate. Throws InfeasibleBandwidths when every score is +inf.
std::size_t select_candidate(std::span<const double> candidates, std::span<const double> scores,
                             double abs_tolerance);

/// Exact leave-one-out cross-validation: sum_i (value_i - fit_{-i}(z_i))^2.
/// Candidates where any left-out evaluation fails score +inf.
BandwidthChoice loo_cv_bandwidth(const SamplePairs& data, int p, const Kernel& kernel, const BandwidthGrid& grid);

/// h1/h2 by CV on the markers, then b1/b2 by CV on squared residuals of the
/// selected mean fits.
BandwidthSet select_all(const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                        const Kernel& kernel, const BandwidthGrid& grid);

inline BandwidthSet select_all(const SamplePairs& x_data, const SamplePairs& y_data, int p, const Kernel& kernel,
                               const BandwidthGrid& grid) {
    return select_all(x_data, y_data, PolyOrders::uniform(p), kernel, grid);
}

/// Trapezoid rule over a sorted grid.
double trapezoid(std::span<const double> grid, std::span<const double> values);

/// Oracle selections use the true data-generating functions and are only
/// meant for simulation studies.
namespace oracle {

using TrueFn = std::function<double(double)>;

/// Minimizes the trapezoid ISE of the local polynomial fit against `true_fn`
/// over `eval_grid`. A candidate is infeasible (+inf) when the fit fails on
/// the grid or at any data covariate. A finite `floor` fits with flooring
/// (variance curves).
BandwidthChoice oracle_ise_bandwidth(const TrueFn& true_fn, const SamplePairs& data, int p, const Kernel& kernel,
                                     const BandwidthGrid& grid, std::span<const double> eval_grid,
                                     double floor = -std::numeric_limits<double>::infinity());

struct KernelAucBandwidths {
    double hx = 0.0;
    double hy = 0.0;
    /// scores[a * hy_candidates.size() + b]
    std::vector<double> hx_candidates, hy_candidates, scores;
};

/// Exhaustive scan over hx-grid x hy-grid minimizing the ISE of the bivariate
/// kernel AUC against `true_auc`; ties go to the largest hx, then largest hy.
KernelAucBandwidths oracle_ise_auc_bandwidths(const TrueFn& true_auc, const SamplePairs& x_data,
                                              const SamplePairs& y_data, const Kernel& kernel,
                                              const BandwidthGrid& hx_grid, const BandwidthGrid& hy_grid,
                                              std::span<const double> eval_grid);

/// Oracle mean bandwidths first, then oracle variance bandwidths on squared
/// residuals of the selected mean fits.
BandwidthSet oracle_select_all(const TrueFn& f, const TrueFn& g, const TrueFn& v1, const TrueFn& v2,
                               const SamplePairs& x_data, const SamplePairs& y_data, const PolyOrders& orders,
                               const Kernel& kernel, const BandwidthGrid& grid, std::span<const double> eval_grid);

}  // namespace oracle

}  // namespace covroc
