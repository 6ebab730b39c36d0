// Acceptance run: one PASS/FAIL line per criterion.
//
//   covroc_acceptance [path-to-covroc-cli] [--known-failures 5,6] [--only 1,2]
//
// Failing criteria listed in --known-failures are still reported as FAIL but
// do not change the exit status.

#include "covroc/analysis.hpp"
#include "covroc/bandwidth.hpp"
#include "covroc/error.hpp"
#include "covroc/roc.hpp"
#include "covroc/rng.hpp"
#include "covroc/simulation.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace covroc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 2024;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += "failed: " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SamplePairs sinusoid(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::normal_distribution<double> e(0.0, 0.3);
    SamplePairs d;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = u(rng);
        d.covariates.push_back(z);
        d.markers.push_back(std::sin(2.0 * z) + e(rng));
    }
    return d;
}

// ---- 1 ----

Outcome oracle_equivalences() {
    Outcome out;
    std::mt19937_64 rng(kSeed);

    int mw_bad = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::uniform_int_distribution<int> size(1, 12), level(0, 6);
        std::vector<double> x(static_cast<std::size_t>(size(rng))), y(static_cast<std::size_t>(size(rng)));
        for (auto& v : x) v = level(rng);
        for (auto& v : y) v = level(rng);
        if (mann_whitney(x, y) != ref::mann_whitney(x, y)) ++mw_bad;
    }
    out.require(mw_bad == 0, std::to_string(mw_bad) + " Mann-Whitney mismatches");

    double wls_err = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const SamplePairs d = sinusoid(rng, 30 + rep);
        const int p = rep % 2 == 0 ? 1 : 3;
        const double h = 0.8 + 0.02 * rep;
        const double z = std::uniform_real_distribution<double>(0.3, 2.7)(rng);
        const LocalPolyFit fit = fit_mean(d, p, h, Kernel{});
        const auto want = ref::local_poly(d.covariates, d.markers, z, p, h);
        if (!want) {
            out.require(false, "normal-equations oracle could not fit");
            continue;
        }
        wls_err = std::max(wls_err, std::abs(eval_mean(fit, z) - *want));
    }
    out.require(wls_err <= 1e-10, "local fit vs normal equations " + fmt("%.2e", wls_err));

    int cv_bad = 0;
    for (int rep = 0; rep < 10; ++rep) {
        const SamplePairs d = sinusoid(rng, 40);
        const auto choice = loo_cv_bandwidth(d, 1, Kernel{}, BandwidthGrid::default_grid());
        std::vector<double> scores;
        for (double h : choice.candidates) scores.push_back(ref::loo_score(d.covariates, d.markers, 1, h));
        double best = std::numeric_limits<double>::infinity();
        for (double s : scores) best = std::min(best, s);
        std::size_t pick = 0;
        for (std::size_t k = 0; k < scores.size(); ++k) {
            if (scores[k] <= best * (1.0 + 1e-10)) pick = k;
            const bool both_inf = std::isinf(scores[k]) && std::isinf(choice.scores[k]);
            if (!both_inf && std::abs(scores[k] - choice.scores[k]) > 1e-9 * std::abs(scores[k])) ++cv_bad;
        }
        if (choice.bandwidth != choice.candidates[pick]) ++cv_bad;
    }
    out.require(cv_bad == 0, std::to_string(cv_bad) + " CV score/selection mismatches");

    double kernel_err = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const SamplePairs x = sinusoid(rng, 10), y = sinusoid(rng, 10);
        const double z = 1.5, hx = 0.9 + 0.05 * rep, hy = 1.1;
        const auto want = ref::kernel_auc(x.covariates, x.markers, y.covariates, y.markers, hx, hy, z);
        if (!want) continue;
        const double got = auc_bivariate_kernel(x, y, hx, hy, Kernel{}, z).value;
        kernel_err = std::max(kernel_err, std::abs(got - *want));
    }
    out.require(kernel_err <= 1e-12, "bivariate kernel vs double sum " + fmt("%.2e", kernel_err));
    if (out.pass) {
        out.note("200 MW exact, WLS max err " + fmt("%.1e", wls_err) + ", 10 CV exact, kernel max err " +
                 fmt("%.1e", kernel_err));
    }
    return out;
}

// ---- 2 ----

Outcome exactness() {
    Outcome out;
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_real_distribution<double> u(0.0, 4.0);

    double poly_err = 0.0;
    for (int p : {1, 3, 5}) {
        SamplePairs d;
        for (int i = 0; i < 60; ++i) {
            const double z = u(rng);
            double v = 0.0;
            for (int k = p; k >= 0; --k) v = v * z + (0.5 + 0.25 * k) * (k % 2 == 0 ? 1.0 : -1.0);
            d.covariates.push_back(z);
            d.markers.push_back(v);
        }
        const LocalPolyFit fit = fit_mean(d, p, 2.5, Kernel{});
        for (double z = 0.5; z <= 3.5; z += 0.25) {
            double v = 0.0;
            for (int k = p; k >= 0; --k) v = v * z + (0.5 + 0.25 * k) * (k % 2 == 0 ? 1.0 : -1.0);
            poly_err = std::max(poly_err, std::abs(fit(z) - v));
        }
    }
    out.require(poly_err <= 1e-9, "polynomial reproduction " + fmt("%.2e", poly_err));

    int mw_bad = 0;
    for (int rep = 0; rep < 50; ++rep) {
        SamplePairs x, y;
        std::normal_distribution<double> e;
        for (int i = 0; i < 15 + rep; ++i) {
            x.covariates.push_back(u(rng));
            x.markers.push_back(std::round(4.0 * e(rng)) / 4.0);
            y.covariates.push_back(u(rng));
            y.markers.push_back(std::round(4.0 * (e(rng) + 0.7)) / 4.0);
        }
        const auto constant = FunctionCurves::constant(0.3, 0.9, 1.7, 2.2);
        for (double z : {0.5, 2.0, 3.9}) {
            if (camwe(x, y, constant, z).value != mann_whitney(x.markers, y.markers)) ++mw_bad;
        }
    }
    out.require(mw_bad == 0, std::to_string(mw_bad) + " constant-curve CAMWE != Mann-Whitney");

    const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise, 40, 40);
    const auto data = sim::generate(sc, kSeed);
    const Bandwidths bw{1.0, 1.0, 1.5, 1.5};
    const FittedCurves base_fit = fit_all(data.first, data.second, 1, bw, Kernel{});
    const std::vector<double> grid = {1.5, 2.5, 3.0, 3.5, 4.5};
    int inv_bad = 0;
    for (double a : {-3.0, 0.0, 17.0}) {
        for (double s : {0.25, 1.0, 4.0}) {
            SamplePairs x = data.first, y = data.second;
            for (auto& m : x.markers) m = a + s * m;
            for (auto& m : y.markers) m = a + s * m;
            const FittedCurves moved = fit_all(x, y, 1, bw, Kernel{});
            for (double z : grid) {
                if (camwe(x, y, moved, z).value != camwe(data.first, data.second, base_fit, z).value) ++inv_bad;
            }
        }
    }
    out.require(inv_bad == 0, std::to_string(inv_bad) + " shift-scale invariance violations");
    if (out.pass) {
        out.note("poly err " + fmt("%.1e", poly_err) + ", 150 constant-curve cases exact, 45 invariance cases exact");
    }
    return out;
}

// ---- 3 ----

Outcome closed_forms() {
    Outcome out;
    const double equal = auc_normal(CurveValues{2.0, 2.0, 0.7, 1.3});
    const double delta1 = auc_normal(CurveValues{0.0, 1.0, 0.5, 0.5});
    out.require(std::abs(equal - 0.5) <= 1e-12, "f = g gives " + fmt("%.15f", equal));
    out.require(std::abs(delta1 - 0.8413447461) <= 1e-9, "delta = 1 gives " + fmt("%.12f", delta1));

    const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise);
    const FunctionCurves truth = sc.true_curves();
    std::vector<double> fpr;
    for (int k = 1; k <= 99; ++k) fpr.push_back(k / 100.0);
    double worst = 0.0;
    for (double z : {1.5, 2.5, 3.0, 4.0, 4.8}) {
        const double area = roc_area(roc_curve_normal(truth, z, fpr));
        worst = std::max(worst, std::abs(area - auc_normal(truth, z).value));
    }
    out.require(worst <= 2e-3, "ROC integral vs closed form " + fmt("%.2e", worst));
    if (out.pass) {
        out.note("0.5 err " + fmt("%.1e", std::abs(equal - 0.5)) + ", Phi(1) err " +
                 fmt("%.1e", std::abs(delta1 - 0.8413447461)) + ", ROC integral err " + fmt("%.2e", worst));
    }
    return out;
}

// ---- 4 ----

Outcome true_curve_camwe() {
    Outcome out;
    const double z = 3.0;
    const std::size_t runs = 2000;
    auto study = [&](std::size_t size, double& mean, double& var) {
        const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise, size, size);
        const FunctionCurves truth = sc.true_curves();
        std::vector<double> values(runs);
        for (std::size_t r = 0; r < runs; ++r) {
            Rng rng = make_stream(kSeed + size, r);
            const auto [x, y] = sim::generate(sc, rng);
            values[r] = camwe(x, y, truth, z).value;
        }
        mean = 0.0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(runs);
        var = ref::sample_variance(values);
    };
    double m40, v40, m160, v160;
    study(40, m40, v40);
    study(160, m160, v160);
    const double target = sim::true_auc(sim::SimScenario::make(sim::ScenarioKind::NormalNoise), z);
    const double se = std::sqrt(v40 / static_cast<double>(runs));
    const double ratio = v40 / v160;
    out.require(std::abs(target - 0.8277) < 1e-4, "true AUC at z=3 is " + fmt("%.6f", target));
    out.require(std::abs(m40 - target) <= 3.0 * se,
                "bias " + fmt("%.5f", m40 - target) + " exceeds 3 SE " + fmt("%.5f", 3.0 * se));
    out.require(std::abs(m40 - 0.8277) <= 3.0 * se, "mean is more than 3 SE from 0.8277");
    out.require(ratio >= 3.0 && ratio <= 5.3, "variance ratio " + fmt("%.3f", ratio) + " outside [3, 5.3]");
    out.note("mean " + fmt("%.5f", m40) + " vs " + fmt("%.5f", target) + " (SE " + fmt("%.5f", se) +
             "), var ratio 40/160 = " + fmt("%.3f", ratio));
    return out;
}

// ---- 5 ----

Outcome mse_orderings() {
    Outcome out;
    auto imse = [](sim::ScenarioKind kind) {
        sim::MseStudyConfig cfg;
        cfg.runs = 500;
        cfg.seed = kSeed;
        cfg.threads = 0;
        const auto res = sim::run_mse_study(sim::SimScenario::make(kind, 40, 40), cfg);
        return std::array<double, 3>{res.estimators.at(AucEstimator::Camwe).integrated_mse,
                                     res.estimators.at(AucEstimator::NormalClosedForm).integrated_mse,
                                     res.estimators.at(AucEstimator::BivariateKernel).integrated_mse};
    };
    const auto t3 = imse(sim::ScenarioKind::StudentT3);
    const auto ln = imse(sim::ScenarioKind::LogNormal);
    const auto nm = imse(sim::ScenarioKind::NormalNoise);
    auto triple = [](const char* name, const std::array<double, 3>& v) {
        return std::string(name) + " camwe/normal/kernel " + fmt("%.5f", v[0]) + "/" + fmt("%.5f", v[1]) + "/" +
               fmt("%.5f", v[2]);
    };
    out.require(t3[0] < t3[1], "t3: camwe not below normal");
    out.require(ln[0] < ln[1], "lognormal: camwe not below normal");
    out.require(ln[2] < ln[1], "lognormal: kernel not below normal");
    const double factor = std::max(nm[0], nm[1]) / std::min(nm[0], nm[1]);
    out.require(factor <= 2.0, "normal: camwe and normal differ by factor " + fmt("%.2f", factor));
    out.require(nm[0] < nm[2], "normal: camwe not below kernel");
    out.require(nm[1] < nm[2], "normal: normal not below kernel");
    out.note(triple("t3", t3));
    out.note(triple("lognormal", ln));
    out.note(triple("normal", nm));
    return out;
}

// ---- 6 ----

Outcome bootstrap_bands() {
    Outcome out;
    sim::BandStudyConfig cfg;
    cfg.runs = 200;
    cfg.bootstrap = 500;
    cfg.seed = kSeed;
    cfg.threads = 0;
    // without widening about a third of the runs lose more than 10% of
    // their replicates to sparse windows and the study aborts
    cfg.widen_retries = 3;
    const auto res = sim::run_band_study(sim::SimScenario::make(sim::ScenarioKind::NormalNoise, 40, 40), cfg);
    const std::size_t nz = res.z_grid.size();
    const std::size_t lo = (nz - 1) / 4, hi = 3 * (nz - 1) / 4;
    double worst_rel = 0.0, worst_end = 0.0, worst_z = 0.0;
    for (std::size_t t = lo; t <= hi; ++t) {
        const double rel = std::abs(res.boot_variance[t] / res.mc_variance[t] - 1.0);
        if (rel > worst_rel) {
            worst_rel = rel;
            worst_z = res.z_grid[t];
        }
        worst_end = std::max({worst_end, std::abs(res.boot_lower[t] - res.mc_lower[t]),
                              std::abs(res.boot_upper[t] - res.mc_upper[t])});
    }
    out.require(worst_rel <= 0.30, "variance relative error " + fmt("%.3f", worst_rel) + " at z=" +
                                       fmt("%.2f", worst_z) + " exceeds 0.30");
    out.require(worst_end <= 0.05, "band endpoint gap " + fmt("%.3f", worst_end) + " exceeds 0.05");
    out.note("max variance rel err " + fmt("%.3f", worst_rel) + ", max endpoint gap " + fmt("%.3f", worst_end) +
             ", runs " + std::to_string(res.effective_runs) + "/" + std::to_string(res.runs));
    return out;
}

// ---- 7 ----

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism(const std::string& cli) {
    Outcome out;
    if (cli.empty() || !fs::exists(cli)) {
        out.require(false, "CLI binary not available");
        return out;
    }
    const fs::path dir = fs::temp_directory_path() / ("covroc_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path input = dir / "data.csv";
    {
        const auto sc = sim::SimScenario::make(sim::ScenarioKind::NormalNoise, 40, 40);
        const auto [x, y] = sim::generate(sc, kSeed);
        std::ofstream f(input);
        f.precision(17);
        f << "group,z,marker\n";
        for (std::size_t i = 0; i < x.size(); ++i) f << "x," << x.covariates[i] << "," << x.markers[i] << "\n";
        for (std::size_t j = 0; j < y.size(); ++j) f << "y," << y.covariates[j] << "," << y.markers[j] << "\n";
    }
    const std::string in = "\"" + input.string() + "\"";
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"fit", "fit " + in + " --seed 3"},
        {"auc", "auc " + in + " --estimator all --seed 3"},
        {"roc", "roc " + in + " --estimator camwe,normal --z 3 --seed 3"},
        {"bootstrap", "bootstrap " + in + " --estimator camwe -B 200 --bandwidths 1.5,1.5,2,2 --seed 3"},
        {"simulate", "simulate --scenario t3 --runs 12 --estimator all --seed 3"},
        {"band", "simulate --study band --runs 4 -B 30 --widen-on-sparse --seed 3"},
    };
    int checked = 0;
    for (const auto& [name, args] : commands) {
        std::vector<std::string> docs;
        for (const char* threads : {"1", "3", "1"}) {
            const fs::path target = dir / (name + "_" + std::to_string(docs.size()) + ".json");
            const std::string cmd = "\"" + cli + "\" " + args + " --threads " + threads + " --out \"" +
                                    target.string() + "\" > /dev/null 2>&1";
            const int rc = std::system(cmd.c_str());
            if (rc != 0) {
                out.require(false, name + " exited with status " + std::to_string(rc));
                break;
            }
            docs.push_back(slurp(target));
        }
        if (docs.size() != 3) continue;
        out.require(!docs[0].empty(), name + " wrote nothing");
        out.require(docs[0] == docs[1], name + " differs between 1 and 3 threads");
        out.require(docs[0] == docs[2], name + " differs between repeated runs");
        ++checked;
    }
    fs::remove_all(dir);
    if (out.pass) out.note(std::to_string(checked) + " commands byte-identical across repeats and 1/3 threads");
    return out;
}

// ---- 8 ----

Outcome mse_consistency() {
    Outcome out;
    std::vector<double> mse;
    for (std::size_t size : {40, 100, 250}) {
        sim::MseStudyConfig cfg;
        cfg.runs = 200;
        cfg.seed = kSeed;
        cfg.threads = 0;
        cfg.estimators = {AucEstimator::Camwe};
        cfg.z_grid = {3.0};
        const auto res =
            sim::run_mse_study(sim::SimScenario::make(sim::ScenarioKind::NormalNoise, size, size), cfg);
        mse.push_back(res.estimators.at(AucEstimator::Camwe).mse[0]);
    }
    out.require(mse[1] < mse[0] && mse[2] < mse[1], "MSE not decreasing");
    out.note("MSE at z=3 for n=m=40/100/250: " + fmt("%.5f", mse[0]) + "/" + fmt("%.5f", mse[1]) + "/" +
             fmt("%.5f", mse[2]));
    return out;
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::set<int> known, only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--known-failures" && i + 1 < argc) known = parse_list(argv[++i]);
        else if (arg == "--only" && i + 1 < argc) only = parse_list(argv[++i]);
        else cli = arg;
    }

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"oracle equivalences", oracle_equivalences},
        {"exactness properties", exactness},
        {"closed-form checks", closed_forms},
        {"CAMWE with true curves: unbiased, variance ~ 1/n", true_curve_camwe},
        {"MSE orderings across noise models", mse_orderings},
        {"bootstrap bands vs Monte Carlo bands", bootstrap_bands},
        {"CLI determinism", [&] { return cli_determinism(cli); }},
        {"MSE decreases with sample size", mse_consistency},
    };

    int unexpected = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string tag = o.pass ? "PASS" : "FAIL";
        if (!o.pass && known.count(id)) tag += " (known)";
        else if (!o.pass) ++unexpected;
        std::printf("%s criterion %d [%s] (%.1fs): %s\n", tag.c_str(), id, criteria[k].first.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return unexpected == 0 ? 0 : 1;
}
