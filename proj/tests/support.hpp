#pragma once

#include <string>
#include <vector>

#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"
#include "oracles.hpp"

namespace testing_support {

using namespace gaugekit;

inline SpacePtr labeled(std::size_t n, const std::string& prefix = "p")
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({prefix + std::to_string(i), std::nullopt});
    return make_space(std::move(pts));
}

inline SpacePtr with_coords(const std::vector<std::vector<double>>& coords, const std::string& prefix = "p")
{
    std::vector<Point> pts;
    for (std::size_t i = 0; i < coords.size(); ++i) pts.push_back({prefix + std::to_string(i), coords[i]});
    return make_space(std::move(pts));
}

// Points "x<v>" at the integers lo..hi.
inline SpacePtr integer_line(int lo, int hi)
{
    std::vector<Point> pts;
    for (int v = lo; v <= hi; ++v) pts.push_back({"x" + std::to_string(v), std::vector<double>{double(v)}});
    return make_space(std::move(pts), 1.0);
}

inline MetricTable table(const std::string& id, const SpacePtr& space, const oracle::Matrix& rows)
{
    return MetricTable::from_rows(id, space, rows);
}

inline oracle::Matrix rows_of(const MetricTable& t) { return t.rows(); }

inline std::vector<std::vector<double>> coords_of(const PointSet& s)
{
    std::vector<std::vector<double>> out;
    for (const auto& p : s.points()) out.push_back(*p.coords);
    return out;
}

}  // namespace testing_support
