#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"

namespace gaugekit {

using ProfileMap = std::map<std::string, std::vector<double>, std::less<>>;

// A virtual point given by its distance profile xi_d : X -> [0, inf) for each
// gauge member d, keyed by member id.
struct CauchyPoint {
    std::string label;
    SpacePtr space;
    ProfileMap profiles;

    const std::vector<double>& profile(std::string_view member) const;
};

enum class CauchyAxiom { nonnegativity, triangle_a, triangle_b, locatedness, monotonicity };

std::string_view to_string(CauchyAxiom axiom);

// triangle_a: d(x,y) + xi(y) < xi(x). triangle_b: xi(x) + xi(y) < d(x,y).
// locatedness: min xi > slack (x is the minimizer). monotonicity: member <=
// other_member pointwise but xi_member(x) > xi_other(x).
struct CauchyViolation {
    CauchyAxiom axiom;
    std::string member;
    std::string other_member;
    PointIndex x = 0;
    PointIndex y = 0;
    double excess = 0.0;
};

struct CauchyReport {
    std::vector<CauchyViolation> violations;
    std::size_t roundoff_count = 0;

    bool valid() const noexcept { return violations.empty(); }
};

// The point z seen as a Cauchy point: profiles are the rows of z.
CauchyPoint represent_point(const Gauge& g, PointIndex z);

// Triangle laws and filtered monotonicity are checked exactly (up to
// kRoundoff); only locatedness is relaxed to min xi_d <= slack. Throws
// InputError when a member has no profile.
CauchyReport validate_cauchy_point(const Gauge& g, const CauchyPoint& xi, double slack,
                                   std::size_t max_witnesses = 64);

// Lowest z with xi_d(z) <= slack for every profile.
std::optional<PointIndex> find_representative(const CauchyPoint& xi, double slack);

// min_x (xi_d(x) + zeta_d(x)).
double hat_distance(std::string_view member, const CauchyPoint& xi, const CauchyPoint& zeta);

// Profile of an ambient point y seen from a subspace not containing it:
// xi_d(z) = d(y, z). `sub` must carry the restricted gauge (same member ids,
// points a subset of the ambient ids).
CauchyPoint deleted_point_profile(const Gauge& ambient, PointIndex y, const Gauge& sub);

struct CompletedSpace {
    SpacePtr space;
    Gauge gauge;
    std::map<std::string, std::string, std::less<>> embedding;  // original id -> completed id
    std::vector<std::string> adjoined;                           // candidate labels that became points
    std::map<std::string, std::string, std::less<>> absorbed;    // skipped label -> existing point id
};

// Adjoins every candidate that is neither slack-represented nor a twin of an
// earlier adjoined candidate (every member within hat-distance slack, or
// profiles agreeing within slack everywhere), builds
// the hat tables, and takes the separated quotient. Candidates are validated
// with locatedness relaxed to `locate_slack` (default: slack), so that holes
// imported from an ambient sample, located only up to their nearest-neighbour
// gap, can still be adjoined at slack 0.
CompletedSpace complete_space(const Gauge& g, const std::vector<CauchyPoint>& candidates, double slack,
                              std::optional<double> locate_slack = std::nullopt);

struct PartialProfile {
    Subset domain;
    std::vector<double> values;
};

using PartialProfileMap = std::map<std::string, PartialProfile, std::less<>>;

// Extends profiles known only on subsets A_d to the whole space through
// zeta_d(x) = min_{a in A_d} (d(x,a) + xi_d(a)), after checking the four
// hypotheses on the domains. Throws HypothesisError naming the failed one.
CauchyPoint cauchy_from_partial(const Gauge& g, const PartialProfileMap& partial, double slack,
                                std::string label = "partial");

}  // namespace gaugekit
