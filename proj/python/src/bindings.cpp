// Python entry points. Structured results cross the boundary as JSON text,
// the same documents the CLI writes, and are decoded on the Python side.

#include "covroc/analysis.hpp"
#include "covroc/bootstrap.hpp"
#include "covroc/error.hpp"
#include "covroc/io.hpp"
#include "covroc/roc.hpp"
#include "covroc/simulation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace covroc;

namespace {

SamplePairs pairs(std::vector<double> z, std::vector<double> marker) {
    if (z.size() != marker.size()) throw InvalidArgument("covariate and marker arrays differ in length");
    return SamplePairs{std::move(z), std::move(marker)};
}

Dataset dataset(std::vector<double> xz, std::vector<double> xm, std::vector<double> yz, std::vector<double> ym,
                bool log_response) {
    Dataset d{pairs(std::move(xz), std::move(xm)), pairs(std::move(yz), std::move(ym))};
    if (d.x.size() == 0) throw EmptySample("sample 'x' is empty");
    if (d.y.size() == 0) throw EmptySample("sample 'y' is empty");
    if (log_response) {
        for (auto* s : {&d.x, &d.y}) {
            for (double& m : s->markers) {
                if (!(m > 0.0)) throw InvalidArgument("log response needs positive markers");
                m = std::log(m);
            }
        }
    }
    return d;
}

std::string auc_doc(std::vector<double> xz, std::vector<double> xm, std::vector<double> yz, std::vector<double> ym,
                    const std::string& config) {
    const RunConfig cfg = run_config_from_json(nlohmann::json::parse(config));
    const Dataset data = dataset(std::move(xz), std::move(xm), std::move(yz), std::move(ym), cfg.log_response);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_grid(data);
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);

    nlohmann::json doc = result_header("auc", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["kernel_bandwidths"] = {{"hx", bw.bw.h1}, {"hy", bw.bw.h2}};
    doc["z_grid"] = zg;
    nlohmann::json estimates = nlohmann::json::object();
    for (const auto& name : cfg.estimators) {
        std::vector<double> v;
        std::vector<bool> clamped;
        for (const auto& e : auc_on_grid(estimator_from_name(name), data.x, data.y, bw.bw, analysis, zg)) {
            v.push_back(e.value);
            clamped.push_back(e.clamped);
        }
        estimates[name] = {{"values", v}, {"clamped", clamped}};
    }
    doc["estimates"] = estimates;
    return dump_json(doc);
}

std::string bootstrap_doc(std::vector<double> xz, std::vector<double> xm, std::vector<double> yz,
                          std::vector<double> ym, const std::string& config) {
    const RunConfig cfg = run_config_from_json(nlohmann::json::parse(config));
    if (cfg.estimators.size() != 1) throw InvalidArgument("bootstrap takes exactly one estimator");
    const Dataset data = dataset(std::move(xz), std::move(xm), std::move(yz), std::move(ym), cfg.log_response);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_grid(data);
    const BandwidthSet bw = choose_bandwidths(data.x, data.y, analysis);

    BootstrapConfig bc;
    bc.replicates = cfg.bootstrap;
    bc.level = cfg.level;
    bc.seed = cfg.seed;
    bc.threads = cfg.threads;
    bc.refit = cfg.refit_bandwidths == "per-replicate" ? BandwidthRefit::PerReplicate : BandwidthRefit::Frozen;
    AucBand band;
    {
        py::gil_scoped_release release;
        band = bootstrap_auc(data.x, data.y, estimator_from_name(cfg.estimators.front()), analysis, bw, zg, bc);
    }
    nlohmann::json doc = result_header("bootstrap", cfg);
    doc["bandwidths"] = to_json(bw);
    doc["z_grid"] = zg;
    doc["band"] = to_json(band);
    return dump_json(doc);
}

std::string simulate_doc(const std::string& config) {
    const RunConfig cfg = run_config_from_json(nlohmann::json::parse(config));
    const sim::SimScenario sc = sim::SimScenario::make(sim::scenario_from_name(cfg.scenario), cfg.m, cfg.n);
    const AnalysisConfig analysis = cfg.analysis();
    const auto zg = cfg.z_min && cfg.z_max ? linspace(*cfg.z_min, *cfg.z_max, static_cast<std::size_t>(cfg.z_count))
                                           : sim::default_z_grid(sc, static_cast<std::size_t>(cfg.z_count));
    nlohmann::json doc = result_header("simulate", cfg);
    py::gil_scoped_release release;
    if (cfg.study == "mse") {
        sim::MseStudyConfig mc;
        mc.runs = cfg.runs;
        mc.estimators.clear();
        for (const auto& name : cfg.estimators) mc.estimators.push_back(estimator_from_name(name));
        mc.policy = sim::policy_from_name(cfg.resolved_policy());
        mc.z_grid = zg;
        mc.seed = cfg.seed;
        mc.threads = cfg.threads;
        mc.orders = analysis.orders;
        mc.kernel = analysis.kernel;
        mc.grid = analysis.grid;
        doc["result"] = to_json(sim::run_mse_study(sc, mc));
    } else if (cfg.study == "band") {
        sim::BandStudyConfig bc;
        bc.runs = cfg.runs;
        bc.bootstrap = cfg.bootstrap;
        bc.z_grid = zg;
        bc.seed = cfg.seed;
        bc.threads = cfg.threads;
        bc.level = cfg.level;
        bc.policy = sim::policy_from_name(cfg.resolved_policy());
        bc.refit = cfg.refit_bandwidths == "per-replicate" ? BandwidthRefit::PerReplicate : BandwidthRefit::Frozen;
        bc.orders = analysis.orders;
        bc.kernel = analysis.kernel;
        bc.grid = analysis.grid;
        bc.widen_retries = analysis.widen_retries;
        doc["result"] = to_json(sim::run_band_study(sc, bc));
    } else {
        throw InvalidArgument("unknown study '" + cfg.study + "'");
    }
    return dump_json(doc);
}

}  // namespace

PYBIND11_MODULE(_covroc, m) {
    m.doc() = "Covariate-adjusted ROC estimation";
    m.attr("__version__") = COVROC_VERSION;
    m.attr("SCHEMA_VERSION") = kSchemaVersion;

    // derived error types map onto the same Python class
    py::register_exception<Error>(m, "CovrocError", PyExc_ValueError);

    m.def("mann_whitney", [](const std::vector<double>& x, const std::vector<double>& y) { return mann_whitney(x, y); },
          py::arg("x"), py::arg("y"), "Share of pairs with y >= x.");
    m.def("auc_normal", [](double f, double g, double v1, double v2) { return auc_normal(CurveValues{f, g, v1, v2}); },
          py::arg("f"), py::arg("g"), py::arg("v1"), py::arg("v2"), "Binormal AUC from means and variances.");
    m.def("true_auc",
          [](const std::string& scenario, double z) {
              return sim::true_auc(sim::SimScenario::make(sim::scenario_from_name(scenario)), z);
          },
          py::arg("scenario"), py::arg("z"));
    m.def("generate",
          [](const std::string& scenario, std::size_t m_size, std::size_t n_size, std::uint64_t seed) {
              const auto sc = sim::SimScenario::make(sim::scenario_from_name(scenario), m_size, n_size);
              const auto [x, y] = sim::generate(sc, seed);
              return py::make_tuple(py::make_tuple(x.covariates, x.markers), py::make_tuple(y.covariates, y.markers));
          },
          py::arg("scenario"), py::arg("m") = 40, py::arg("n") = 40, py::arg("seed") = 0,
          "Draws ((x_z, x_marker), (y_z, y_marker)) from a simulation scenario.");
    m.def("_auc", &auc_doc);
    m.def("_bootstrap", &bootstrap_doc);
    m.def("_simulate", &simulate_doc);
}
