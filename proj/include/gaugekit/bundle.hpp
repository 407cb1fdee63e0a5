#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaugekit/compactify.hpp"
#include "gaugekit/completion.hpp"
#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"
#include "gaugekit/relations.hpp"

namespace gaugekit {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Bundle;

struct MapEntry {
    std::shared_ptr<const Bundle> target;
    MapTable table;
};

// Everything one space file describes. Metrics keep their generator spec so
// the bundle saves back to the same document.
struct Bundle {
    SpacePtr space;
    std::vector<json> metric_specs;
    std::vector<MetricTable> metrics;
    std::vector<std::string> gauge_ids;  // generators of `gauge`
    std::optional<Gauge> gauge;
    std::shared_ptr<FunctionDict> functions;
    std::map<std::string, ExhaustionChain, std::less<>> exhaustion_chains;
    std::map<std::string, TailChain, std::less<>> tail_chains;
    std::map<std::string, MapEntry, std::less<>> maps;
    std::map<std::string, EvaluationDatum, std::less<>> data;
    std::vector<CauchyPoint> cauchy_points;
    ToleranceProfile tolerances;

    const MetricTable& metric(std::string_view id) const;
    const Gauge& require_gauge() const;
    const MapEntry& map(std::string_view id) const;
};

struct LoadOptions {
    // Explicit tables are checked with validate_metric and the gauge is
    // generated. The `validate` command turns both off to report on broken
    // files instead of rejecting them.
    bool validate_tables = true;
    bool build_gauge = true;
};

// Throws InputError naming the offending location.
Bundle load_space(const json& doc, const LoadOptions& options = {});
Bundle load_space_file(const std::string& path, const LoadOptions& options = {});

json to_json(const Bundle& bundle);

// Sorted keys, two-space indent, reals with 17 significant digits.
std::string canonical_dump(const json& value);

std::string save_space(const Bundle& bundle);
void save_space_file(const Bundle& bundle, const std::string& path);

// Builds a metric from its spec over `space`, resolving references against
// the metrics already built.
MetricTable build_metric(const json& spec, const SpacePtr& space, const std::vector<MetricTable>& built);

}  // namespace gaugekit
