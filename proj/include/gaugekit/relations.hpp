#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugekit/gauges.hpp"
#include "gaugekit/metrics.hpp"

namespace gaugekit {

// A total map between two finite point sets, by index.
class MapTable {
public:
    MapTable(SpacePtr domain, SpacePtr codomain, std::vector<PointIndex> assignment);

    const SpacePtr& domain() const noexcept { return domain_; }
    const SpacePtr& codomain() const noexcept { return codomain_; }
    PointIndex operator()(PointIndex x) const { return assignment_.at(x); }
    const std::vector<PointIndex>& assignment() const noexcept { return assignment_; }
    Subset image(const Subset& a) const;

private:
    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<PointIndex> assignment_;
};

// inf over pairs, which on finite sets is a minimum. Empty subsets are an
// input error here; `near` applies the empty-set convention instead.
double set_distance(const MetricTable& d, const Subset& a, const Subset& b);

// A ≈ B at slack: set distance <= slack in every member. False if either is
// empty.
bool near(const Gauge& g, const Subset& a, const Subset& b, double slack = 0.0);

// ---------------------------------------------------------------------------
// Topological equivalence
// ---------------------------------------------------------------------------

struct BallWitness {
    int gauge = 0;  // 0: first argument, 1: second
    std::string member;
    PointIndex center = 0;
    double radius = 0.0;
};

struct EquivalenceReport {
    bool equivalent = true;
    std::optional<BallWitness> witness;
    std::size_t balls_checked = 0;
};

// For every point, every member of either gauge and every grid radius, looks
// for a ball of the other gauge around the same point inside it. The largest
// admissible radius for a candidate member d' is the smallest realized
// d'-distance to a point outside the target ball.
EquivalenceReport topologically_equivalent(const Gauge& first, const Gauge& second, const ToleranceProfile& tol);

// ---------------------------------------------------------------------------
// Continuity
// ---------------------------------------------------------------------------

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct ContinuityCertificate {
    std::string target_member;
    double epsilon = 0.0;
    std::string source_member;
    double delta = 0.0;  // largest admissible; kUnbounded when nothing can violate
    double floor = 0.0;  // smallest positive realized source distance
};

struct ContinuityFailure {
    std::string target_member;
    double epsilon = 0.0;
    std::string source_member;  // the member whose best delta came closest
    double best_delta = 0.0;
    double floor = 0.0;
    PointIndex x = 0;
    PointIndex x_prime = 0;
};

// A failure is relative to the sample: no delta above the source member's
// floor works, and (x, x_prime) violates every such delta.
struct ContinuityReport {
    bool continuous = true;
    std::vector<ContinuityCertificate> certificates;
    std::optional<ContinuityFailure> failure;
};

ContinuityReport check_continuity(const MapTable& f, const Gauge& source, const Gauge& target, PointIndex x,
                                  const ToleranceProfile& tol);

ContinuityReport check_uniform_continuity(const MapTable& f, const Gauge& source, const Gauge& target,
                                          const ToleranceProfile& tol);

// Does d_X(x,x') < delta imply d_Y(f x, f x') < eps for every x'?
bool implication_holds_at(const MapTable& f, const MetricTable& source, const MetricTable& target, PointIndex x,
                          double delta, double eps);
bool implication_holds(const MapTable& f, const MetricTable& source, const MetricTable& target, double delta,
                       double eps);

// ---------------------------------------------------------------------------
// Proximal continuity
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMaxExhaustiveProximity = 15;

struct ProximityReport {
    bool preserved = true;
    std::optional<std::pair<Subset, Subset>> witness;
    std::size_t pairs_checked = 0;
};

// A ≈ B implies f(A) ≈ f(B), over all subset pairs of a domain with at most
// kMaxExhaustiveProximity points, or over `family` when supplied.
ProximityReport check_proximal_continuity(const MapTable& f, const Gauge& source, const Gauge& target, double slack,
                                          const std::optional<std::vector<std::pair<Subset, Subset>>>& family =
                                              std::nullopt);

// ---------------------------------------------------------------------------
// Sequences and distance functions
// ---------------------------------------------------------------------------

struct SequenceReport {
    std::optional<std::size_t> cauchy_from;
    Subset limits;
};

// cauchy_from is the least N leaving at least two entries (or the single
// entry of a length-1 sequence) with every later pair within slack in every
// member. limits are the points within slack of every entry from N on.
SequenceReport sequence_status(const std::vector<PointIndex>& entries, const Gauge& g, double slack);

// y -> d(A, y), optionally capped.
std::vector<double> make_distance_function(const MetricTable& d, const Subset& a,
                                           std::optional<double> clamp = std::nullopt);

}  // namespace gaugekit
