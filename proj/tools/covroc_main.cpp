// covroc: covariate-adjusted ROC / AUC estimation from the command line.
//
//   covroc fit       data.csv [--bandwidths h1,h2,b1,b2] [--out fit.json]
//   covroc auc       data.csv --estimator camwe,normal,kernel
//   covroc roc       data.csv --z 3.0
//   covroc bootstrap data.csv --bootstrap 1000 --level 0.95 --seed 7
//   covroc simulate  --scenario t3 --runs 500 --m 40 --n 40 --policy oracle
//
// Exit status: 0 success, 2 input validation, 3 estimation failure,
// 4 bootstrap/Monte Carlo failure rate exceeded.

#include "covroc/analysis.hpp"
#include "covroc/bootstrap.hpp"
#include "covroc/error.hpp"
#include "covroc/io.hpp"
#include "covroc/roc.hpp"
#include "covroc/simulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace covroc;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kEstimationError = 3, kFailureRate = 4 };

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument(flag + ": cannot parse '" + item + "'");
        }
    }
    if (out.size() != expected) {
        throw InvalidArgument(flag + " expects " + std::to_string(expected) + " comma-separated values");
    }
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "all") {
            out.insert(out.end(), {"normal", "camwe", "kernel"});
        } else if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

/// Raw option values; applied on top of an optional --config file.
struct CliOptions {
    std::string input;
    std::string config_path;
    std::string out;
    std::string csv;
    std::string estimator;
    int order = 1;
    std::string kernel;
    std::string grid;
    std::string bandwidths;
    std::string bw_grid;
    std::string bw_scale;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::size_t bootstrap = 0;
    double level = 0.95;
    std::string refit;
    double z = 0.0;
    int fpr_count = 99;
    std::string scenario;
    std::size_t runs = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::string policy;
    std::string study;
};

struct OptionHandles {
    CLI::Option* estimator = nullptr;
    CLI::Option* order = nullptr;
    CLI::Option* kernel = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* bandwidths = nullptr;
    CLI::Option* bw_grid = nullptr;
    CLI::Option* bw_scale = nullptr;
    CLI::Option* clamp = nullptr;
    CLI::Option* log_response = nullptr;
    CLI::Option* widen = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* bootstrap = nullptr;
    CLI::Option* level = nullptr;
    CLI::Option* refit = nullptr;
    CLI::Option* z = nullptr;
    CLI::Option* fpr_count = nullptr;
    CLI::Option* scenario = nullptr;
    CLI::Option* runs = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* policy = nullptr;
    CLI::Option* study = nullptr;
};

bool given(CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

RunConfig build_config(const CliOptions& o, const OptionHandles& h) {
    RunConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw InvalidArgument("cannot open config file '" + o.config_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidArgument("config file is not valid JSON: " + std::string(e.what()));
        }
        cfg = run_config_from_json(j);
    }
    if (given(h.estimator)) cfg.estimators = split_names(o.estimator);
    if (given(h.order)) {
        cfg.order = o.order;
        cfg.orders.reset();
    }
    if (given(h.kernel)) cfg.kernel = o.kernel;
    if (given(h.grid)) {
        const auto g = parse_list(o.grid, 3, "--grid");
        cfg.z_min = g[0];
        cfg.z_max = g[1];
        if (g[2] < 1 || g[2] != std::floor(g[2])) throw InvalidArgument("--grid count must be a positive integer");
        cfg.z_count = static_cast<int>(g[2]);
    }
    if (given(h.bandwidths)) {
        const auto b = parse_list(o.bandwidths, 4, "--bandwidths");
        cfg.bandwidths = Bandwidths{b[0], b[1], b[2], b[3]};
    }
    if (given(h.bw_grid)) {
        const auto g = parse_list(o.bw_grid, 3, "--bw-grid");
        if (g[2] < 1 || g[2] != std::floor(g[2])) throw InvalidArgument("--bw-grid count must be a positive integer");
        cfg.bw_grid_min = g[0];
        cfg.bw_grid_max = g[1];
        cfg.bw_grid_count = static_cast<int>(g[2]);
    }
    if (given(h.bw_scale)) cfg.bw_grid_scale = o.bw_scale;
    if (given(h.clamp)) cfg.clamp = true;
    if (given(h.log_response)) cfg.log_response = true;
    if (given(h.widen)) cfg.widen_on_sparse = true;
    if (given(h.seed)) cfg.seed = o.seed;
    if (given(h.threads)) cfg.threads = o.threads;
    if (given(h.bootstrap)) cfg.bootstrap = o.bootstrap;
    if (given(h.level)) cfg.level = o.level;
    if (given(h.refit)) cfg.refit_bandwidths = o.refit;
    if (given(h.z)) cfg.roc_z = o.z;
    if (given(h.fpr_count)) cfg.fpr_count = o.fpr_count;
    if (given(h.scenario)) cfg.scenario = o.scenario;
    if (given(h.runs)) cfg.runs = o.runs;
    if (given(h.m)) cfg.m = o.m;
    if (given(h.n)) cfg.n = o.n;
    if (given(h.policy)) cfg.policy = o.policy;
    if (given(h.study)) cfg.study = o.study;

    if (cfg.estimators.empty()) throw InvalidArgument("no estimator selected");
    for (const auto& e : cfg.estimators) (void)estimator_from_name(e);
    if (!is_supported_order(cfg.order)) throw InvalidArgument("--order must be one of 0, 1, 3, 5");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw InvalidArgument("--level must lie in (0, 1)");
    if (cfg.refit_bandwidths != "frozen" && cfg.refit_bandwidths != "per-replicate") {
        throw InvalidArgument("--refit-bandwidths must be frozen or per-replicate");
    }
    (void)Kernel::from_name(cfg.kernel);
    (void)cfg.bandwidth_grid();
    return cfg;
}

Dataset load_input(const CliOptions& o, const RunConfig& cfg) {
    if (o.input.empty()) throw InvalidArgument("an input CSV file is required");
    return ingest(o.input, cfg.log_response);
}

int cmd_fit(const CliOptions& o, const RunConfig& cfg) {
    const Dataset data = load_input(o, cfg);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_grid(data);
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);
    const FittedCurves curves = fit_with(data.x, data.y, bw.bw, analysis);

    std::vector<double> f, g, v1, v2;
    for (double z : zg) {
        const CurveValues c = evaluate_curves(curves, z);
        f.push_back(c.f);
        g.push_back(c.g);
        v1.push_back(c.v1);
        v2.push_back(c.v2);
    }
    json doc = result_header("fit", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["variance_floor"] = {{"v1", curves.v1_hat().floor()}, {"v2", curves.v2_hat().floor()}};
    doc["z_grid"] = zg;
    doc["curves"] = {{"f", f}, {"g", g}, {"v1", v1}, {"v2", v2}};
    write_text(o.out, dump_json(doc));

    if (!o.csv.empty()) {
        std::string csv = "z,f,g,v1,v2\n";
        for (std::size_t t = 0; t < zg.size(); ++t) {
            csv += fmt17(zg[t]) + "," + fmt17(f[t]) + "," + fmt17(g[t]) + "," + fmt17(v1[t]) + "," + fmt17(v2[t]) + "\n";
        }
        write_text(o.csv, csv);
    }
    return kOk;
}

int cmd_auc(const CliOptions& o, const RunConfig& cfg) {
    const Dataset data = load_input(o, cfg);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_grid(data);
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);

    json doc = result_header("auc", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["kernel_bandwidths"] = {{"hx", bw.bw.h1}, {"hy", bw.bw.h2}};
    doc["z_grid"] = zg;
    json estimates = json::object();
    std::vector<std::vector<double>> columns;
    for (const auto& name : cfg.estimators) {
        const auto values = auc_on_grid(estimator_from_name(name), data.x, data.y, bw.bw, analysis, zg);
        std::vector<double> v;
        std::vector<bool> clamped;
        for (const auto& e : values) {
            v.push_back(e.value);
            clamped.push_back(e.clamped);
        }
        estimates[name] = {{"values", v}, {"clamped", clamped}};
        columns.push_back(v);
    }
    doc["estimates"] = estimates;
    write_text(o.out, dump_json(doc));

    if (!o.csv.empty()) {
        std::string csv = "z";
        for (const auto& name : cfg.estimators) csv += "," + name;
        csv += "\n";
        for (std::size_t t = 0; t < zg.size(); ++t) {
            csv += fmt17(zg[t]);
            for (const auto& col : columns) csv += "," + fmt17(col[t]);
            csv += "\n";
        }
        write_text(o.csv, csv);
    }
    return kOk;
}

json threshold_json(double c) {
    if (std::isinf(c)) return c > 0 ? "+inf" : "-inf";
    return c;
}

json roc_json(const std::vector<RocPoint>& pts) {
    json thresholds = json::array(), tpr = json::array(), fpr = json::array();
    for (const auto& p : pts) {
        thresholds.push_back(threshold_json(p.threshold));
        tpr.push_back(p.sensitivity);
        fpr.push_back(p.false_positive_rate);
    }
    return {{"threshold", thresholds}, {"fpr", fpr}, {"tpr", tpr}};
}

int cmd_roc(const CliOptions& o, const RunConfig& cfg) {
    if (!cfg.roc_z) throw InvalidArgument("roc needs --z");
    if (cfg.fpr_count < 1) throw InvalidArgument("--fpr-count must be positive");
    const Dataset data = load_input(o, cfg);
    const AnalysisConfig analysis = cfg.analysis();
    const double z = *cfg.roc_z;
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);
    const FittedCurves curves = fit_with(data.x, data.y, bw.bw, analysis);

    json doc = result_header("roc", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["z"] = z;
    json rocs = json::object();
    std::string csv = "estimator,threshold,fpr,tpr\n";
    auto add_csv = [&](const std::string& name, const std::vector<RocPoint>& pts) {
        for (const auto& p : pts) {
            csv += name + "," + fmt17(p.threshold) + "," + fmt17(p.false_positive_rate) + "," + fmt17(p.sensitivity) + "\n";
        }
    };
    for (const auto& name : cfg.estimators) {
        const AucEstimator est = estimator_from_name(name);
        if (est == AucEstimator::NormalClosedForm) {
            const auto fpr = linspace(1.0 / (cfg.fpr_count + 1), cfg.fpr_count / (cfg.fpr_count + 1.0),
                                      static_cast<std::size_t>(cfg.fpr_count));
            const auto pts = roc_curve_normal(curves, z, fpr);
            rocs[name] = roc_json(pts);
            rocs[name]["auc"] = auc_normal(curves, z, cfg.clamp).value;
            add_csv(name, pts);
        } else if (est == AucEstimator::Camwe) {
            const StandardizedResiduals resid = standardized_residuals(data.x, data.y, curves);
            const WorkingSample ws = working_sample(resid, curves, z);
            const auto pts = roc_curve_camwe(ws);
            const YoudenResult yi = youden_index(ws);
            rocs[name] = roc_json(pts);
            rocs[name]["auc"] = make_estimate(z, mann_whitney(ws.x_values, ws.y_values), est, cfg.clamp).value;
            rocs[name]["youden"] = {{"index", yi.index}, {"threshold", yi.threshold}};
            add_csv(name, pts);
        } else {
            throw InvalidArgument("roc supports the normal and camwe estimators");
        }
    }
    doc["roc"] = rocs;
    write_text(o.out, dump_json(doc));
    if (!o.csv.empty()) write_text(o.csv, csv);
    return kOk;
}

int cmd_bootstrap(const CliOptions& o, const RunConfig& cfg) {
    if (cfg.estimators.size() != 1) throw InvalidArgument("bootstrap takes exactly one --estimator");
    const Dataset data = load_input(o, cfg);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_grid(data);
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);

    BootstrapConfig bc;
    bc.replicates = cfg.bootstrap;
    bc.level = cfg.level;
    bc.seed = cfg.seed;
    bc.threads = cfg.threads;
    bc.refit = cfg.refit_bandwidths == "per-replicate" ? BandwidthRefit::PerReplicate : BandwidthRefit::Frozen;
    const AucBand band = bootstrap_auc(data.x, data.y, estimator_from_name(cfg.estimators.front()), analysis, bw, zg, bc);

    json doc = result_header("bootstrap", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["z_grid"] = zg;
    doc["band"] = to_json(band);
    write_text(o.out, dump_json(doc));

    if (!o.csv.empty()) {
        std::string csv = "z,estimate,lower,upper,variance\n";
        for (std::size_t t = 0; t < zg.size(); ++t) {
            csv += fmt17(zg[t]) + "," + fmt17(band.point_estimates[t]) + "," + fmt17(band.lower[t]) + "," +
                   fmt17(band.upper[t]) + "," + fmt17(band.variance[t]) + "\n";
        }
        write_text(o.csv, csv);
    }
    return kOk;
}

std::vector<double> simulate_grid(const RunConfig& cfg, const sim::SimScenario& sc) {
    if (cfg.z_min && cfg.z_max) return linspace(*cfg.z_min, *cfg.z_max, static_cast<std::size_t>(cfg.z_count));
    return sim::default_z_grid(sc, static_cast<std::size_t>(cfg.z_count));
}

int cmd_simulate(const CliOptions& o, const RunConfig& cfg) {
    const sim::SimScenario sc = sim::SimScenario::make(sim::scenario_from_name(cfg.scenario), cfg.m, cfg.n);
    const AnalysisConfig analysis = cfg.analysis();
    json doc = result_header("simulate", cfg);

    if (cfg.study == "mse") {
        sim::MseStudyConfig mc;
        mc.runs = cfg.runs;
        mc.estimators.clear();
        for (const auto& name : cfg.estimators) mc.estimators.push_back(estimator_from_name(name));
        mc.policy = sim::policy_from_name(cfg.resolved_policy());
        mc.z_grid = simulate_grid(cfg, sc);
        mc.seed = cfg.seed;
        mc.threads = cfg.threads;
        mc.orders = analysis.orders;
        mc.kernel = analysis.kernel;
        mc.grid = analysis.grid;
        const sim::SimResult res = sim::run_mse_study(sc, mc);
        doc["result"] = to_json(res);
        write_text(o.out, dump_json(doc));
        if (!o.csv.empty()) {
            std::string csv = "z,true_auc";
            for (const auto& [kind, s] : res.estimators) csv += ",mse_" + estimator_name(kind);
            csv += "\n";
            for (std::size_t t = 0; t < res.z_grid.size(); ++t) {
                csv += fmt17(res.z_grid[t]) + "," + fmt17(res.true_auc[t]);
                for (const auto& [kind, s] : res.estimators) csv += "," + fmt17(s.mse[t]);
                csv += "\n";
            }
            write_text(o.csv, csv);
        }
    } else if (cfg.study == "band") {
        sim::BandStudyConfig bc;
        bc.runs = cfg.runs;
        bc.bootstrap = cfg.bootstrap;
        bc.z_grid = simulate_grid(cfg, sc);
        bc.seed = cfg.seed;
        bc.threads = cfg.threads;
        bc.level = cfg.level;
        bc.policy = sim::policy_from_name(cfg.resolved_policy());
        bc.refit = cfg.refit_bandwidths == "per-replicate" ? BandwidthRefit::PerReplicate : BandwidthRefit::Frozen;
        bc.orders = analysis.orders;
        bc.kernel = analysis.kernel;
        bc.grid = analysis.grid;
        bc.widen_retries = analysis.widen_retries;
        const sim::BandStudyResult res = sim::run_band_study(sc, bc);
        doc["result"] = to_json(res);
        write_text(o.out, dump_json(doc));
        if (!o.csv.empty()) {
            std::string csv = "z,true_auc,mc_mean,mc_lower,mc_upper,mc_variance,boot_lower,boot_upper,boot_variance\n";
            for (std::size_t t = 0; t < res.z_grid.size(); ++t) {
                csv += fmt17(res.z_grid[t]) + "," + fmt17(res.true_auc[t]) + "," + fmt17(res.mc_mean[t]) + "," +
                       fmt17(res.mc_lower[t]) + "," + fmt17(res.mc_upper[t]) + "," + fmt17(res.mc_variance[t]) + "," +
                       fmt17(res.boot_lower[t]) + "," + fmt17(res.boot_upper[t]) + "," +
                       fmt17(res.boot_variance[t]) + "\n";
            }
            write_text(o.csv, csv);
        }
    } else {
        throw InvalidArgument("--study must be mse or band");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covariate-adjusted ROC curve and AUC estimation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(COVROC_VERSION));

    CliOptions o;
    struct Sub {
        CLI::App* app;
        OptionHandles handles;
    };
    std::vector<Sub> subs;

    auto add_common = [&](CLI::App* sub, OptionHandles& h, bool takes_input) {
        if (takes_input) sub->add_option("input", o.input, "CSV file with header group,z,marker")->check(CLI::ExistingFile);
        sub->add_option("--config", o.config_path, "JSON run configuration; explicit flags override it");
        sub->add_option("--out,-o", o.out, "JSON output path (default: stdout)");
        sub->add_option("--csv", o.csv, "optional CSV output for plotting");
        h.order = sub->add_option("--order", o.order, "local polynomial order (0, 1, 3 or 5)");
        h.kernel = sub->add_option("--kernel", o.kernel, "epanechnikov | biweight | triweight | gaussian");
        h.grid = sub->add_option("--grid", o.grid, "evaluation grid zmin,zmax,count");
        h.bandwidths = sub->add_option("--bandwidths", o.bandwidths, "fixed bandwidths h1,h2,b1,b2 (skips CV)");
        h.bw_grid = sub->add_option("--bw-grid", o.bw_grid, "CV candidate grid min,max,count (log-spaced)");
        h.bw_scale = sub->add_option("--bw-scale", o.bw_scale, "fraction_of_range | absolute");
        h.clamp = sub->add_flag("--clamp", "report max(AUC, 0.5)");
        h.log_response = sub->add_flag("--log-response", "natural log of markers before fitting");
        h.widen = sub->add_flag("--widen-on-sparse", "double the bandwidth locally (up to 3 times) on sparse windows");
        h.seed = sub->add_option("--seed", o.seed, "random seed");
        h.threads = sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        h.estimator = sub->add_option("--estimator", o.estimator, "camwe | normal | kernel | all (comma-separated)");
    };

    subs.push_back({app.add_subcommand("fit", "fit mean and variance curves of both populations"), {}});
    add_common(subs.back().app, subs.back().handles, true);

    subs.push_back({app.add_subcommand("auc", "covariate-adjusted AUC over a grid"), {}});
    add_common(subs.back().app, subs.back().handles, true);

    subs.push_back({app.add_subcommand("roc", "ROC curve and Youden index at one covariate value"), {}});
    add_common(subs.back().app, subs.back().handles, true);
    subs.back().handles.z = subs.back().app->add_option("--z", o.z, "covariate value");
    subs.back().handles.fpr_count =
        subs.back().app->add_option("--fpr-count", o.fpr_count, "false positive rate grid size (normal ROC)");

    subs.push_back({app.add_subcommand("bootstrap", "percentile bootstrap bands for the AUC"), {}});
    add_common(subs.back().app, subs.back().handles, true);
    subs.back().handles.bootstrap = subs.back().app->add_option("--bootstrap,-B", o.bootstrap, "replicates B");
    subs.back().handles.level = subs.back().app->add_option("--level", o.level, "band level");
    subs.back().handles.refit =
        subs.back().app->add_option("--refit-bandwidths", o.refit, "frozen | per-replicate");

    subs.push_back({app.add_subcommand("simulate", "Monte Carlo study on a known model"), {}});
    add_common(subs.back().app, subs.back().handles, false);
    {
        auto* s = subs.back().app;
        auto& h = subs.back().handles;
        h.scenario = s->add_option("--scenario", o.scenario, "normal | t3 | lognormal");
        h.runs = s->add_option("--runs,-R", o.runs, "Monte Carlo runs");
        h.m = s->add_option("--m", o.m, "size of the X sample");
        h.n = s->add_option("--n", o.n, "size of the Y sample");
        h.policy = s->add_option("--policy", o.policy, "oracle | cv | truth (default: oracle for mse, cv for band)");
        h.study = s->add_option("--study", o.study, "mse | band");
        h.bootstrap = s->add_option("--bootstrap,-B", o.bootstrap, "bootstrap replicates (band study)");
        h.level = s->add_option("--level", o.level, "band level (band study)");
        h.refit = s->add_option("--refit-bandwidths", o.refit, "frozen | per-replicate (band study)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    for (const auto& sub : subs) {
        if (!sub.app->parsed()) continue;
        const std::string name = sub.app->get_name();
        try {
            const RunConfig cfg = build_config(o, sub.handles);
            if (name == "fit") return cmd_fit(o, cfg);
            if (name == "auc") return cmd_auc(o, cfg);
            if (name == "roc") return cmd_roc(o, cfg);
            if (name == "bootstrap") return cmd_bootstrap(o, cfg);
            if (name == "simulate") return cmd_simulate(o, cfg);
        } catch (const FailureRateExceeded& e) {
            std::cerr << "covroc " << name << ": " << e.what() << "\n";
            return kFailureRate;
        } catch (const ParseError& e) {
            std::cerr << "covroc " << name << ": " << o.input << ": " << e.what() << "\n";
            return kInputError;
        } catch (const InvalidArgument& e) {
            std::cerr << "covroc " << name << ": " << e.what() << "\n";
            return kInputError;
        } catch (const EmptySample& e) {
            std::cerr << "covroc " << name << ": " << e.what() << "\n";
            return kInputError;
        } catch (const Error& e) {
            std::cerr << "covroc " << name << ": estimation failed: " << e.what() << "\n";
            return kEstimationError;
        }
    }
    return kInputError;
}
