#pragma once

#include "covroc/analysis.hpp"
#include "covroc/bootstrap.hpp"
#include "covroc/simulation.hpp"

#include <json.hpp>

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace covroc {

inline constexpr const char* kSchemaVersion = "1.0";

struct Dataset {
    SamplePairs x;
    SamplePairs y;
};

/// Reads delimited text with a header naming the columns `group`, `z`,
/// `marker` (any order). Group tokens are x/y or 0/1. Blank lines and lines
/// starting with '#' are skipped. Throws ParseError with the offending line,
/// or EmptySample naming a missing group.
Dataset parse_dataset(std::istream& in, bool log_response = false);
Dataset ingest(const std::string& path, bool log_response = false);

/// Everything that determines a CLI result. Serializable to JSON and back.
struct RunConfig {
    std::vector<std::string> estimators = {"camwe"};
    int order = 1;
    std::optional<PolyOrders> orders;  ///< per-function override of `order`
    std::string kernel = "epanechnikov";
    std::optional<Bandwidths> bandwidths;
    double bw_grid_min = 0.05;
    double bw_grid_max = 1.0;
    int bw_grid_count = 15;
    std::string bw_grid_scale = "fraction_of_range";
    std::optional<double> z_min;
    std::optional<double> z_max;
    int z_count = 41;
    bool clamp = false;
    bool log_response = false;
    bool widen_on_sparse = false;
    std::size_t bootstrap = 1000;
    double level = 0.95;
    std::string refit_bandwidths = "frozen";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::optional<double> roc_z;
    int fpr_count = 99;
    // simulate
    std::string study = "mse";
    std::string scenario = "normal";
    std::size_t runs = 500;
    std::size_t m = 40;
    std::size_t n = 40;
    std::string policy;  ///< empty: oracle for the MSE study, cv for the band study

    std::string resolved_policy() const { return policy.empty() ? (study == "band" ? "cv" : "oracle") : policy; }

    PolyOrders poly_orders() const { return orders.value_or(PolyOrders::uniform(order)); }
    AnalysisConfig analysis() const;
    BandwidthGrid bandwidth_grid() const;
    /// The configured grid, or 41 points over the interior 90% of the
    /// covariate range shared by both samples.
    std::vector<double> z_grid(const Dataset& data) const;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Result-document pieces shared by the CLI and the bindings.
nlohmann::json to_json(const Bandwidths& bw);
nlohmann::json to_json(const BandwidthSet& set);
nlohmann::json to_json(const AucBand& band);
nlohmann::json to_json(const sim::SimResult& result);
nlohmann::json to_json(const sim::BandStudyResult& result);

/// Header shared by every result document.
nlohmann::json result_header(const std::string& command, const RunConfig& cfg);

/// Serializes with the shortest round-trip representation of every double.
std::string dump_json(const nlohmann::json& j);

}  // namespace covroc
