#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"

namespace gaugekit {

// Centers whose strict eps-balls cover the space.
struct CoverCertificate {
    std::string metric_id;
    double epsilon = 0.0;
    Subset centers;
};

// Farthest-first traversal seeded at point 0, lowest index on ties, stopping
// once every point is strictly within eps of a center.
CoverCertificate greedy_net(const MetricTable& d, double eps);

struct CoverCheck {
    bool covered = true;
    std::optional<PointIndex> uncovered;
};

CoverCheck verify_cover(const MetricTable& d, const CoverCertificate& cert);

struct CoverProfile {
    std::vector<std::string> members;
    std::vector<double> epsilons;
    std::vector<std::vector<std::size_t>> counts;  // [member][epsilon]

    std::size_t at(std::size_t member, std::size_t eps) const { return counts.at(member).at(eps); }
};

CoverProfile cover_profile(const Gauge& g, const ToleranceProfile& tol);

}  // namespace gaugekit
