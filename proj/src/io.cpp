#include "covroc/io.hpp"

#include "covroc/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace covroc {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim(field));
    if (!line.empty() && line.back() == delim) out.emplace_back();
    return out;
}

double parse_number(const std::string& text, const char* column, std::size_t line) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ParseError(std::string("column '") + column + "': cannot parse '" + text + "' as a number", line);
    }
    if (!std::isfinite(value)) {
        throw ParseError(std::string("column '") + column + "': non-finite value '" + text + "'", line);
    }
    return value;
}

}  // namespace

Dataset parse_dataset(std::istream& in, bool log_response) {
    Dataset data;
    data.x.population = Population::NonDiseased_X;
    data.y.population = Population::Diseased_Y;

    std::string line;
    std::size_t lineno = 0;
    char delim = ',';
    int col_group = -1, col_z = -1, col_marker = -1;
    bool have_header = false;
    std::size_t ncols = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!have_header) {
            if (t.find(',') != std::string::npos) delim = ',';
            else if (t.find('\t') != std::string::npos) delim = '\t';
            else if (t.find(';') != std::string::npos) delim = ';';
            const auto cols = split(t, delim);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                std::string name = cols[k];
                std::transform(name.begin(), name.end(), name.begin(),
                               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
                if (name == "group") col_group = static_cast<int>(k);
                else if (name == "z") col_z = static_cast<int>(k);
                else if (name == "marker") col_marker = static_cast<int>(k);
            }
            if (col_group < 0 || col_z < 0 || col_marker < 0) {
                throw ParseError("header must name the columns group, z and marker", lineno);
            }
            ncols = cols.size();
            have_header = true;
            continue;
        }
        const auto fields = split(t, delim);
        if (fields.size() != ncols) {
            throw ParseError("expected " + std::to_string(ncols) + " fields, found " + std::to_string(fields.size()),
                             lineno);
        }
        std::string group = fields[static_cast<std::size_t>(col_group)];
        std::transform(group.begin(), group.end(), group.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        SamplePairs* target = nullptr;
        if (group == "x" || group == "0") target = &data.x;
        else if (group == "y" || group == "1") target = &data.y;
        else throw ParseError("group must be x, y, 0 or 1; got '" + group + "'", lineno);

        const double z = parse_number(fields[static_cast<std::size_t>(col_z)], "z", lineno);
        double marker = parse_number(fields[static_cast<std::size_t>(col_marker)], "marker", lineno);
        if (log_response) {
            if (!(marker > 0.0)) throw ParseError("--log-response needs positive markers", lineno);
            marker = std::log(marker);
        }
        target->covariates.push_back(z);
        target->markers.push_back(marker);
    }
    if (!have_header) throw ParseError("missing header line", lineno == 0 ? 1 : lineno);
    if (data.x.size() == 0) throw EmptySample("group 'x' has no observations");
    if (data.y.size() == 0) throw EmptySample("group 'y' has no observations");
    return data;
}

Dataset ingest(const std::string& path, bool log_response) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open input file '" + path + "'");
    return parse_dataset(in, log_response);
}

AnalysisConfig RunConfig::analysis() const {
    AnalysisConfig a;
    a.orders = poly_orders();
    a.kernel = Kernel::from_name(kernel);
    a.grid = bandwidth_grid();
    a.fixed_bandwidths = bandwidths;
    a.clamp = clamp;
    a.widen_retries = widen_on_sparse ? 3 : 0;
    return a;
}

BandwidthGrid RunConfig::bandwidth_grid() const {
    GridScale scale;
    if (bw_grid_scale == "fraction_of_range") scale = GridScale::FractionOfRange;
    else if (bw_grid_scale == "absolute") scale = GridScale::Absolute;
    else throw InvalidArgument("bandwidth grid scale must be fraction_of_range or absolute");
    return BandwidthGrid::log_spaced(bw_grid_min, bw_grid_max, bw_grid_count, scale);
}

std::vector<double> RunConfig::z_grid(const Dataset& data) const {
    if (z_count < 1) throw InvalidArgument("grid count must be positive");
    double lo, hi;
    if (z_min && z_max) {
        lo = *z_min;
        hi = *z_max;
    } else {
        const double shared_lo = std::max(data.x.covariate_min(), data.y.covariate_min());
        const double shared_hi = std::min(data.x.covariate_max(), data.y.covariate_max());
        if (!(shared_hi > shared_lo)) throw InvalidArgument("the two samples have no overlapping covariate range");
        const double pad = 0.05 * (shared_hi - shared_lo);
        lo = z_min.value_or(shared_lo + pad);
        hi = z_max.value_or(shared_hi - pad);
    }
    if (hi < lo) throw InvalidArgument("grid needs zmin <= zmax");
    return linspace(lo, hi, static_cast<std::size_t>(z_count));
}

nlohmann::json to_json(const Bandwidths& bw) {
    return {{"h1", bw.h1}, {"h2", bw.h2}, {"b1", bw.b1}, {"b2", bw.b2}};
}

namespace {

Bandwidths bandwidths_from_json(const nlohmann::json& j) {
    return {j.at("h1").get<double>(), j.at("h2").get<double>(), j.at("b1").get<double>(), j.at("b2").get<double>()};
}

nlohmann::json scores_json(const std::optional<BandwidthChoice>& c) {
    if (!c) return nullptr;
    nlohmann::json scores = nlohmann::json::array();
    for (double s : c->scores) {
        if (std::isfinite(s)) scores.push_back(s);
        else scores.push_back(nullptr);  // infeasible candidate
    }
    return {{"selected", c->bandwidth}, {"candidates", c->candidates}, {"scores", scores}};
}

}  // namespace

nlohmann::json to_json(const BandwidthSet& set) {
    nlohmann::json j = to_json(set.bw);
    j["method"] = method_name(set.method);
    if (set.h1_scores) {
        j["cv_scores"] = {{"h1", scores_json(set.h1_scores)},
                          {"h2", scores_json(set.h2_scores)},
                          {"b1", scores_json(set.b1_scores)},
                          {"b2", scores_json(set.b2_scores)}};
    }
    return j;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["estimators"] = c.estimators;
    j["order"] = c.order;
    if (c.orders) j["orders"] = {{"f", c.orders->f}, {"g", c.orders->g}, {"v1", c.orders->v1}, {"v2", c.orders->v2}};
    j["kernel"] = c.kernel;
    if (c.bandwidths) j["bandwidths"] = to_json(*c.bandwidths);
    j["bw_grid"] = {{"min", c.bw_grid_min}, {"max", c.bw_grid_max}, {"count", c.bw_grid_count},
                    {"scale", c.bw_grid_scale}};
    nlohmann::json grid = {{"count", c.z_count}};
    if (c.z_min) grid["zmin"] = *c.z_min;
    if (c.z_max) grid["zmax"] = *c.z_max;
    j["grid"] = grid;
    j["clamp"] = c.clamp;
    j["log_response"] = c.log_response;
    j["widen_on_sparse"] = c.widen_on_sparse;
    j["bootstrap"] = {{"replicates", c.bootstrap}, {"level", c.level}, {"refit_bandwidths", c.refit_bandwidths}};
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    if (c.roc_z) j["roc_z"] = *c.roc_z;
    j["fpr_count"] = c.fpr_count;
    j["simulate"] = {{"study", c.study}, {"scenario", c.scenario}, {"runs", c.runs},
                     {"m", c.m},         {"n", c.n},               {"policy", c.resolved_policy()}};
    return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    try {
        if (j.contains("estimators")) c.estimators = j.at("estimators").get<std::vector<std::string>>();
        if (j.contains("order")) c.order = j.at("order").get<int>();
        if (j.contains("orders")) {
            const auto& o = j.at("orders");
            c.orders = PolyOrders{o.at("f").get<int>(), o.at("g").get<int>(), o.at("v1").get<int>(),
                                  o.at("v2").get<int>()};
        }
        if (j.contains("kernel")) c.kernel = j.at("kernel").get<std::string>();
        if (j.contains("bandwidths")) c.bandwidths = bandwidths_from_json(j.at("bandwidths"));
        if (j.contains("bw_grid")) {
            const auto& g = j.at("bw_grid");
            c.bw_grid_min = g.value("min", c.bw_grid_min);
            c.bw_grid_max = g.value("max", c.bw_grid_max);
            c.bw_grid_count = g.value("count", c.bw_grid_count);
            c.bw_grid_scale = g.value("scale", c.bw_grid_scale);
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            c.z_count = g.value("count", c.z_count);
            if (g.contains("zmin")) c.z_min = g.at("zmin").get<double>();
            if (g.contains("zmax")) c.z_max = g.at("zmax").get<double>();
        }
        c.clamp = j.value("clamp", c.clamp);
        c.log_response = j.value("log_response", c.log_response);
        c.widen_on_sparse = j.value("widen_on_sparse", c.widen_on_sparse);
        if (j.contains("bootstrap")) {
            const auto& b = j.at("bootstrap");
            c.bootstrap = b.value("replicates", c.bootstrap);
            c.level = b.value("level", c.level);
            c.refit_bandwidths = b.value("refit_bandwidths", c.refit_bandwidths);
        }
        c.seed = j.value("seed", c.seed);
        c.threads = j.value("threads", c.threads);
        if (j.contains("roc_z")) c.roc_z = j.at("roc_z").get<double>();
        c.fpr_count = j.value("fpr_count", c.fpr_count);
        if (j.contains("simulate")) {
            const auto& s = j.at("simulate");
            c.study = s.value("study", c.study);
            c.scenario = s.value("scenario", c.scenario);
            c.runs = s.value("runs", c.runs);
            c.m = s.value("m", c.m);
            c.n = s.value("n", c.n);
            c.policy = s.value("policy", c.policy);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("invalid configuration: ") + e.what());
    }
    return c;
}

nlohmann::json to_json(const AucBand& band) {
    return {{"estimator", estimator_name(band.estimator)},
            {"z_grid", band.z_grid},
            {"estimates", band.point_estimates},
            {"lower", band.lower},
            {"upper", band.upper},
            {"variance", band.variance},
            {"level", band.level},
            {"replicates", band.replicates},
            {"effective_replicates", band.effective_replicates},
            {"failures", band.failures}};
}

nlohmann::json to_json(const sim::SimResult& r) {
    nlohmann::json est = nlohmann::json::object();
    for (const auto& [kind, s] : r.estimators) {
        est[estimator_name(kind)] = {{"mse", s.mse},
                                     {"mean_estimate", s.mean_estimate},
                                     {"variance", s.variance},
                                     {"integrated_mse", s.integrated_mse},
                                     {"failures", s.failures}};
    }
    return {{"study", "mse"},    {"scenario", r.scenario}, {"policy", r.policy},     {"runs", r.runs},
            {"seed", r.seed},    {"z_grid", r.z_grid},     {"true_auc", r.true_auc}, {"estimators", est}};
}

nlohmann::json to_json(const sim::BandStudyResult& r) {
    return {{"study", "band"},
            {"scenario", r.scenario},
            {"runs", r.runs},
            {"effective_runs", r.effective_runs},
            {"failures", r.failures},
            {"bootstrap", r.bootstrap},
            {"level", r.level},
            {"seed", r.seed},
            {"z_grid", r.z_grid},
            {"true_auc", r.true_auc},
            {"monte_carlo", {{"mean", r.mc_mean}, {"lower", r.mc_lower}, {"upper", r.mc_upper},
                             {"variance", r.mc_variance}}},
            {"bootstrap_average", {{"lower", r.boot_lower}, {"upper", r.boot_upper}, {"variance", r.boot_variance}}}};
}

nlohmann::json result_header(const std::string& command, const RunConfig& cfg) {
    nlohmann::json config = to_json(cfg);
    config.erase("threads");  // results never depend on it
    return {{"schema_version", kSchemaVersion},
            {"tool", "covroc"},
            {"version", COVROC_VERSION},
            {"command", command},
            {"seed", cfg.seed},
            {"config", config}};
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace covroc
