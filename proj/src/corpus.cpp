#include "gaugekit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaugekit/error.hpp"

namespace gaugekit::corpus {

namespace {

json point(std::string id, std::vector<double> coords) { return {{"id", std::move(id)}, {"coords", std::move(coords)}}; }

json document(json points, json metrics, json gauge, std::vector<double> grid, std::optional<double> resolution = {})
{
    json doc{{"schema_version", kSchemaVersion},
             {"points", std::move(points)},
             {"metrics", std::move(metrics)},
             {"gauge", std::move(gauge)},
             {"tolerances", {{"slack", 0.0}, {"epsilon_grid", std::move(grid)}}}};
    if (resolution) doc["resolution"] = *resolution;
    return doc;
}

json metric(const std::string& kind) { return {{"id", kind}, {"kind", kind}}; }

void require_positive(std::size_t n, const char* what)
{
    if (n == 0) throw InputError(std::string(what) + " needs at least one point");
}

}  // namespace

json interval(std::size_t n, double lo, double hi)
{
    require_positive(n, "interval");
    if (!(hi > lo) && n > 1) throw InputError("interval needs lo < hi");
    json points = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        points.push_back(point("x" + std::to_string(i), {x}));
    }
    std::optional<double> resolution;
    if (n > 1) resolution = (hi - lo) / static_cast<double>(n - 1);
    return document(std::move(points), json::array({metric("euclidean")}), json::array({"euclidean"}),
                    {0.5, 0.25, 0.1}, resolution);
}

json grid_plane(std::size_t n, double spacing)
{
    require_positive(n, "grid");
    if (!(spacing > 0.0)) throw InputError("grid spacing must be positive");
    json points = json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            points.push_back(point("p" + std::to_string(i) + "_" + std::to_string(j),
                                   {static_cast<double>(i) * spacing, static_cast<double>(j) * spacing}));
    return document(std::move(points), json::array({metric("euclidean"), metric("taxicab"), metric("chebyshev")}),
                    json::array({"euclidean"}), {2 * spacing, spacing, spacing / 2, spacing / 4}, spacing);
}

json circle(std::size_t n)
{
    require_positive(n, "circle");
    json points = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        points.push_back(point("c" + std::to_string(k), {std::cos(a), std::sin(a)}));
    }
    const double chord = 2 * std::sin(std::numbers::pi / static_cast<double>(n));
    return document(std::move(points), json::array({metric("euclidean")}), json::array({"euclidean"}),
                    {0.5, 0.25, 0.1}, chord);
}

json cylinder(std::size_t n, std::size_t m)
{
    require_positive(n, "cylinder");
    require_positive(m, "cylinder");
    json points = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        for (std::size_t l = 0; l < m; ++l) {
            const double z = m == 1 ? 0.0 : static_cast<double>(l) / static_cast<double>(m - 1);
            points.push_back(point("c" + std::to_string(k) + "_" + std::to_string(l), {std::cos(a), std::sin(a), z}));
        }
    }
    return document(std::move(points), json::array({metric("euclidean")}), json::array({"euclidean"}),
                    {0.5, 0.25, 0.1});
}

json discrete(std::size_t n)
{
    require_positive(n, "discrete space");
    json points = json::array();
    for (std::size_t i = 0; i < n; ++i) points.push_back({{"id", "d" + std::to_string(i)}});
    return document(std::move(points), json::array({metric("discrete"), metric("indiscrete")}),
                    json::array({"discrete"}), {0.5});
}

void add_symmetric_exhaustion(json& doc, double step, const std::string& id)
{
    if (!(step > 0.0)) throw InputError("exhaustion step must be positive");
    const auto& points = doc.at("points");
    json subsets = json::array();
    std::size_t previous = 0;
    for (std::size_t j = 1;; ++j) {
        json k = json::array();
        for (const auto& p : points)
            if (std::abs(p.at("coords").at(0).get<double>()) <= step * static_cast<double>(j)) k.push_back(p.at("id"));
        if (k.size() == points.size()) break;
        if (!k.empty() && k.size() > previous) {
            previous = k.size();
            subsets.push_back(std::move(k));
        }
        if (static_cast<double>(j) * step > 1e15) break;
    }
    if (subsets.empty()) throw InputError("no proper exhaustion set at this step");
    if (!doc.contains("chains")) doc["chains"] = json::array();
    doc["chains"].push_back({{"id", id}, {"kind", "exhaustion"}, {"subsets", std::move(subsets)}});
}

void add_interval_map(json& doc, const std::string& kind, const std::string& id)
{
    std::vector<double> xs;
    for (const auto& p : doc.at("points")) xs.push_back(p.at("coords").at(0).get<double>());
    std::vector<double> ys;
    for (double x : xs) {
        if (kind == "square")
            ys.push_back(x * x);
        else if (kind == "half")
            ys.push_back(x / 2);
        else
            throw InputError("unknown interval map '" + kind + "' (expected square or half)");
    }
    std::vector<double> distinct = ys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    json points = json::array();
    for (std::size_t k = 0; k < distinct.size(); ++k) points.push_back(point("y" + std::to_string(k), {distinct[k]}));
    json assignment = json::array();
    for (double y : ys) {
        const auto k = std::lower_bound(distinct.begin(), distinct.end(), y) - distinct.begin();
        assignment.push_back("y" + std::to_string(k));
    }
    json target = document(std::move(points), json::array({metric("euclidean")}), json::array({"euclidean"}),
                           doc.at("tolerances").at("epsilon_grid").get<std::vector<double>>());
    if (!doc.contains("maps")) doc["maps"] = json::array();
    doc["maps"].push_back({{"id", id}, {"target", std::move(target)}, {"assignment", std::move(assignment)}});
}

}  // namespace gaugekit::corpus
